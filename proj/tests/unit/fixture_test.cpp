#include <gtest/gtest.h>

#include <filesystem>

#include "qve/error.hpp"
#include "qve/fixture.hpp"
#include "test_support.hpp"

using namespace qve;

namespace {

ErrorKind parse_error_kind(const std::string &text) {
  try {
    parse_fixture(text);
  } catch (const Error &e) {
    return e.kind();
  }
  return ErrorKind::Numeric; // sentinel: no error
}

} // namespace

TEST(Fixture, ParsesAndFillsSymmetry) {
  const auto p = parse_fixture(R"(# two orbitals
norb 2
nalpha 1
nbeta 1
constant 0.5
h 0 1 -0.25
g 0 1 1 0 0.125   # exchange-like
)");
  EXPECT_EQ(p.n_spatial, 2);
  EXPECT_EQ(p.n_alpha, 1);
  EXPECT_EQ(p.n_beta, 1);
  EXPECT_EQ(p.e_offset, 0.5);
  EXPECT_EQ(p.h1(1, 0), -0.25);
  // <01|10> images: <10|01>, <10|01>, <01|10> and the real-orbital swaps.
  EXPECT_EQ(p.h2(0, 1, 1, 0), 0.125);
  EXPECT_EQ(p.h2(1, 0, 0, 1), 0.125);
  EXPECT_EQ(p.h2(1, 1, 0, 0), 0.125);
  EXPECT_EQ(p.h2(0, 0, 1, 1), 0.125);
  EXPECT_EQ(p.h2(0, 1, 0, 1), 0.0);
}

TEST(Fixture, RoundTripIsExact) {
  const auto p = load_fixture(test::data_path("beh2_full.ham"));
  const auto q = parse_fixture(format_fixture(p, "round trip"));
  EXPECT_EQ(q.n_spatial, p.n_spatial);
  EXPECT_EQ(q.e_offset, p.e_offset);
  EXPECT_EQ(q.h1, p.h1);
  EXPECT_EQ(q.h2.data(), p.h2.data());
}

TEST(Fixture, SaveAndLoad) {
  const auto p = load_fixture(test::data_path("beh2_cas.ham"));
  const auto path = std::filesystem::temp_directory_path() / "qve_fixture_test.ham";
  save_fixture(p, path, "copy");
  const auto q = load_fixture(path);
  std::filesystem::remove(path);
  EXPECT_EQ(q.h2.data(), p.h2.data());
  EXPECT_EQ(q.n_alpha, 1);
}

TEST(Fixture, BeH2ShapesAndSymmetry) {
  const auto full = load_fixture(test::data_path("beh2_full.ham"));
  EXPECT_EQ(full.n_spatial, 7);
  EXPECT_EQ(full.n_alpha, 3);
  EXPECT_NEAR(full.e_offset, 3.39216, 1e-5);
  EXPECT_EQ(full.h1, full.h1.transpose());
  const std::size_t n = full.h2.extent();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          EXPECT_EQ(full.h2(p, q, r, s), full.h2(r, s, p, q));
          EXPECT_EQ(full.h2(p, q, r, s), full.h2(q, p, s, r));
          EXPECT_EQ(full.h2(p, q, r, s), full.h2(r, q, p, s));
        }
}

TEST(Fixture, Errors) {
  EXPECT_EQ(parse_error_kind("nalpha 1\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 2\nfoo 1\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 2\nh 0 2 1.0\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 2\nh 0 1 1.0\nh 1 0 1.0\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 2\ng 0 1 1 0 1.0\ng 1 0 0 1 1.0\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 2\nh 0 1 x\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 1\nnalpha 2\n"), ErrorKind::Parse);
  EXPECT_EQ(parse_error_kind("norb 1\nconstant 1 2\n"), ErrorKind::Parse);
  EXPECT_THROW(load_fixture("/nonexistent/file.ham"), Error);
}

TEST(Fixture, ErrorNamesTheLine) {
  try {
    parse_fixture("norb 2\n\n# c\nh 0 5 1.0\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

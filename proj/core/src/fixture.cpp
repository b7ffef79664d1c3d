#include "qve/fixture.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qve/error.hpp"

namespace qve {

namespace {

using Quad = std::array<int, 4>;

std::array<Quad, 8> images(const Quad &k) {
  const auto [p, q, r, s] = k;
  return {Quad{p, q, r, s}, Quad{q, p, s, r}, Quad{r, s, p, q}, Quad{s, r, q, p},
          Quad{r, q, p, s}, Quad{s, p, q, r}, Quad{p, s, r, q}, Quad{q, r, s, p}};
}

Quad canonical(const Quad &k) {
  auto best = k;
  for (const auto &im : images(k))
    best = std::min(best, im);
  return best;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

ActiveSpaceProblem parse_fixture(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int norb = -1, nalpha = -1, nbeta = -1;
  double constant = 0.0;
  struct OneBody {
    int p, q;
    double v;
    int line;
  };
  struct TwoBody {
    Quad k;
    double v;
    int line;
  };
  std::vector<OneBody> ones;
  std::vector<TwoBody> twos;

  auto error = [&](const std::string &what) {
    fail(ErrorKind::Parse, "fixture line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key))
      continue;
    std::string extra;
    if (key == "norb" || key == "nalpha" || key == "nbeta") {
      int v;
      if (!(ls >> v) || v < 0 || (ls >> extra))
        error("expected '" + key + " <non-negative integer>'");
      (key == "norb" ? norb : key == "nalpha" ? nalpha : nbeta) = v;
    } else if (key == "constant") {
      if (!(ls >> constant) || (ls >> extra))
        error("expected 'constant <float>'");
    } else if (key == "h") {
      OneBody e{0, 0, 0.0, lineno};
      if (!(ls >> e.p >> e.q >> e.v) || (ls >> extra))
        error("expected 'h p q <float>'");
      ones.push_back(e);
    } else if (key == "g") {
      TwoBody e{{0, 0, 0, 0}, 0.0, lineno};
      if (!(ls >> e.k[0] >> e.k[1] >> e.k[2] >> e.k[3] >> e.v) || (ls >> extra))
        error("expected 'g p q r s <float>'");
      twos.push_back(e);
    } else {
      error("unknown record '" + key + "'");
    }
  }
  if (norb < 0)
    fail(ErrorKind::Parse, "fixture is missing 'norb'");
  if (nalpha < 0)
    nalpha = 0;
  if (nbeta < 0)
    nbeta = 0;
  require(nalpha <= norb && nbeta <= norb, ErrorKind::Parse,
          "fixture electron counts exceed the orbital count");

  ActiveSpaceProblem p;
  p.n_spatial = norb;
  p.n_alpha = nalpha;
  p.n_beta = nbeta;
  p.e_offset = constant;
  p.h1 = Eigen::MatrixXd::Zero(norb, norb);
  p.h2 = Tensor4(static_cast<std::size_t>(norb));

  std::set<std::pair<int, int>> seen1;
  for (const auto &e : ones) {
    lineno = e.line;
    if (e.p < 0 || e.q < 0 || e.p >= norb || e.q >= norb)
      error("index out of range");
    if (!seen1.insert({std::min(e.p, e.q), std::max(e.p, e.q)}).second)
      error("duplicate h entry");
    p.h1(e.p, e.q) = p.h1(e.q, e.p) = e.v;
  }
  std::set<Quad> seen2;
  for (const auto &e : twos) {
    lineno = e.line;
    for (int i : e.k)
      if (i < 0 || i >= norb)
        error("index out of range");
    if (!seen2.insert(canonical(e.k)).second)
      error("duplicate g entry");
    for (const auto &[a, b, c, d] : images(e.k))
      p.h2(static_cast<std::size_t>(a), static_cast<std::size_t>(b),
           static_cast<std::size_t>(c), static_cast<std::size_t>(d)) = e.v;
  }
  return p;
}

ActiveSpaceProblem load_fixture(const std::filesystem::path &path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Parse,
          "cannot open fixture " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

std::string format_fixture(const ActiveSpaceProblem &problem,
                           std::string_view comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream cs{std::string(comment)};
    std::string line;
    while (std::getline(cs, line))
      os << "# " << line << "\n";
  }
  const int n = problem.n_spatial;
  os << "norb " << n << "\nnalpha " << problem.n_alpha << "\nnbeta "
     << problem.n_beta << "\nconstant " << format_double(problem.e_offset) << "\n";
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      if (problem.h1(p, q) != 0.0)
        os << "h " << p << " " << q << " " << format_double(problem.h1(p, q)) << "\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const Quad k{p, q, r, s};
          if (canonical(k) != k)
            continue;
          const double v =
              problem.h2(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                         static_cast<std::size_t>(r), static_cast<std::size_t>(s));
          if (v != 0.0)
            os << "g " << p << " " << q << " " << r << " " << s << " "
               << format_double(v) << "\n";
        }
  return os.str();
}

void save_fixture(const ActiveSpaceProblem &problem,
                  const std::filesystem::path &path, std::string_view comment) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::Parse,
          "cannot write fixture " + path.string());
  out << format_fixture(problem, comment);
}

} // namespace qve

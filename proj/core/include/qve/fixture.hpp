#pragma once

// Line-oriented Hamiltonian fixture format:
//
//   # comment
//   norb N
//   nalpha N
//   nbeta N
//   constant F
//   h p q F          one-electron, 0-based spatial indices
//   g p q r s F      physicist <pq|rs>, 0-based spatial indices
//
// Only one representative of each symmetry-equivalent h/g entry is stored;
// loading fills in the rest.

#include <filesystem>
#include <string>
#include <string_view>

#include "qve/scf.hpp"

namespace qve {

ActiveSpaceProblem parse_fixture(std::string_view text);
ActiveSpaceProblem load_fixture(const std::filesystem::path &path);

/// Writes unique entries with 17 significant digits.
std::string format_fixture(const ActiveSpaceProblem &problem,
                           std::string_view comment = {});
void save_fixture(const ActiveSpaceProblem &problem,
                  const std::filesystem::path &path,
                  std::string_view comment = {});

} // namespace qve

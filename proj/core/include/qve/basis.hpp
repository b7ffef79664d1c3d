#pragma once

// Gaussian basis functions and analytic s-type molecular integrals.

#include <Eigen/Dense>

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qve/tensor.hpp"

namespace qve {

using Vec3 = Eigen::Vector3d;
using Angular = std::array<int, 3>;

/// 1 Angstrom in bohr.
inline constexpr double kBohrPerAngstrom = 1.8897259886;

/// Normalization constant of x^i y^j z^k exp(-alpha r^2).
double normalize_primitive(double exponent, const Angular &angular);

class GaussianPrimitive {
public:
  GaussianPrimitive(double exponent, const Angular &angular, const Vec3 &center);

  double exponent() const noexcept { return exponent_; }
  const Angular &angular() const noexcept { return angular_; }
  const Vec3 &center() const noexcept { return center_; }
  double norm() const noexcept { return norm_; }
  bool is_s() const noexcept {
    return angular_[0] == 0 && angular_[1] == 0 && angular_[2] == 0;
  }

private:
  double exponent_;
  Angular angular_;
  Vec3 center_;
  double norm_;
};

struct ContractionTerm {
  double coefficient;
  GaussianPrimitive primitive;
};

/// A contracted Gaussian. Coefficients are rescaled at construction so that
/// s-type orbitals have unit self-overlap.
class ContractedOrbital {
public:
  ContractedOrbital(std::vector<ContractionTerm> terms, std::string label);

  const std::vector<ContractionTerm> &terms() const noexcept { return terms_; }
  const std::string &label() const noexcept { return label_; }
  const Vec3 &center() const { return terms_.front().primitive.center(); }
  const Angular &angular() const { return terms_.front().primitive.angular(); }

private:
  std::vector<ContractionTerm> terms_;
  std::string label_;
};

struct Atom {
  int z;
  Vec3 position; // bohr
};

struct Molecule {
  std::vector<Atom> atoms;
  int charge = 0;
  int multiplicity = 1;

  int electron_count() const;
};

/// Parses `units angstrom|bohr` followed by `SYMBOL x y z` lines.
/// Blank lines and `#` comments are skipped.
Molecule parse_geometry(std::string_view text);
Molecule load_geometry(const std::filesystem::path &path);

int atomic_number(std::string_view symbol);
std::string element_symbol(int z);

struct GaussianProduct {
  double exponent;
  Vec3 center;
  double prefactor;
};

GaussianProduct gaussian_product(const GaussianPrimitive &a,
                                 const GaussianPrimitive &b);

/// Zeroth-order Boys function F0(t) = integral_0^1 exp(-t u^2) du.
double boys_f0(double t);

double overlap_s(const GaussianPrimitive &a, const GaussianPrimitive &b);
double kinetic_s(const GaussianPrimitive &a, const GaussianPrimitive &b);
/// Attraction to a point charge z at `nucleus`; always negative.
double nuclear_attraction_s(const GaussianPrimitive &a,
                            const GaussianPrimitive &b, const Vec3 &nucleus,
                            int z);
/// Chemist-notation primitive repulsion (ab|cd): a, b on electron 1.
double eri_s(const GaussianPrimitive &a, const GaussianPrimitive &b,
             const GaussianPrimitive &c, const GaussianPrimitive &d);

double nuclear_repulsion(const Molecule &mol);

/// Contracted-orbital integrals, summed over primitives.
double overlap(const ContractedOrbital &a, const ContractedOrbital &b);
double kinetic(const ContractedOrbital &a, const ContractedOrbital &b);
double nuclear_attraction(const ContractedOrbital &a,
                          const ContractedOrbital &b, const Molecule &mol);
double eri(const ContractedOrbital &a, const ContractedOrbital &b,
           const ContractedOrbital &c, const ContractedOrbital &d);

struct ShellSpec {
  int l;
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

/// Element symbol -> shells.
using BasisTable = std::map<std::string, std::vector<ShellSpec>, std::less<>>;

const BasisTable &sto3g();
/// Reads `element shell exponent coefficient` lines (shell: s, p or sp with a
/// second coefficient for the p part).
BasisTable parse_basis_table(std::string_view text);

/// Basis orbitals for every atom. p shells expand to px, py, pz.
std::vector<ContractedOrbital> build_basis(const Molecule &mol,
                                           const BasisTable &table);

struct IntegralSet {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  Tensor4 eri; // chemist notation (ab|cd)
  double e_nuc = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(overlap.rows()); }
  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
};

IntegralSet build_integrals(const Molecule &mol,
                            const BasisTable &table = sto3g());

} // namespace qve

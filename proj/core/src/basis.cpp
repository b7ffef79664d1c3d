#include "qve/basis.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qve/error.hpp"

namespace qve {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k)
    r *= k;
  return r;
}

constexpr std::array<std::string_view, 11> kElements = {
    "", "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"};

void require_s(const GaussianPrimitive &g) {
  if (!g.is_s())
    fail(ErrorKind::UnsupportedAngularMomentum,
         "analytic integrals are implemented for s-type primitives only");
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

double normalize_primitive(double exponent, const Angular &angular) {
  require(exponent > 0.0, ErrorKind::InvalidArgument,
          "primitive exponent must be positive");
  for (int c : angular)
    require(c >= 0, ErrorKind::InvalidArgument,
            "angular exponents must be non-negative");
  const auto [i, j, k] = angular;
  const double radial = std::pow(2.0 * exponent / kPi, 0.75);
  const double angular_part = std::pow(8.0 * exponent, i + j + k) *
                              factorial(i) * factorial(j) * factorial(k) /
                              (factorial(2 * i) * factorial(2 * j) *
                               factorial(2 * k));
  return radial * std::sqrt(angular_part);
}

GaussianPrimitive::GaussianPrimitive(double exponent, const Angular &angular,
                                     const Vec3 &center)
    : exponent_(exponent), angular_(angular), center_(center),
      norm_(normalize_primitive(exponent, angular)) {}

ContractedOrbital::ContractedOrbital(std::vector<ContractionTerm> terms,
                                     std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
  require(!terms_.empty(), ErrorKind::InvalidArgument,
          "contracted orbital needs at least one primitive");
  for (const auto &t : terms_) {
    require(t.primitive.angular() == terms_.front().primitive.angular() &&
                t.primitive.center() == terms_.front().primitive.center(),
            ErrorKind::InvalidArgument,
            "primitives of a contraction must share center and angular part");
  }
  if (terms_.front().primitive.is_s()) {
    double s = 0.0;
    for (const auto &a : terms_)
      for (const auto &b : terms_)
        s += a.coefficient * b.coefficient * overlap_s(a.primitive, b.primitive);
    const double scale = 1.0 / std::sqrt(s);
    for (auto &t : terms_)
      t.coefficient *= scale;
  }
}

int Molecule::electron_count() const {
  int total = -charge;
  for (const auto &a : atoms)
    total += a.z;
  require(total >= 0, ErrorKind::InvalidArgument,
          "negative electron count");
  return total;
}

int atomic_number(std::string_view symbol) {
  for (std::size_t z = 1; z < kElements.size(); ++z)
    if (lower(kElements[z]) == lower(symbol))
      return static_cast<int>(z);
  fail(ErrorKind::InvalidArgument, "unknown element '" + std::string(symbol) + "'");
}

std::string element_symbol(int z) {
  require(z >= 1 && z < static_cast<int>(kElements.size()),
          ErrorKind::InvalidArgument, "atomic number out of range");
  return std::string(kElements[static_cast<std::size_t>(z)]);
}

Molecule parse_geometry(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  double scale = 0.0;
  Molecule mol;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head))
      continue;
    const auto where = " (line " + std::to_string(lineno) + ")";
    if (lower(head) == "units") {
      std::string unit;
      ls >> unit;
      if (lower(unit) == "angstrom")
        scale = kBohrPerAngstrom;
      else if (lower(unit) == "bohr")
        scale = 1.0;
      else
        fail(ErrorKind::Parse, "unknown unit '" + unit + "'" + where);
      continue;
    }
    if (lower(head) == "charge") {
      if (!(ls >> mol.charge))
        fail(ErrorKind::Parse, "bad charge" + where);
      continue;
    }
    if (scale == 0.0)
      fail(ErrorKind::Parse, "geometry must start with a 'units' line" + where);
    Vec3 r;
    if (!(ls >> r[0] >> r[1] >> r[2]))
      fail(ErrorKind::Parse, "expected 'SYMBOL x y z'" + where);
    mol.atoms.push_back({atomic_number(head), r * scale});
  }
  require(!mol.atoms.empty(), ErrorKind::Parse, "geometry has no atoms");
  return mol;
}

Molecule load_geometry(const std::filesystem::path &path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Parse,
          "cannot open geometry file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_geometry(ss.str());
}

GaussianProduct gaussian_product(const GaussianPrimitive &a,
                                 const GaussianPrimitive &b) {
  const double p = a.exponent() + b.exponent();
  const double mu = a.exponent() * b.exponent() / p;
  const Vec3 center = (a.exponent() * a.center() + b.exponent() * b.center()) / p;
  return {p, center, std::exp(-mu * (a.center() - b.center()).squaredNorm())};
}

double boys_f0(double t) {
  require(t >= 0.0, ErrorKind::InvalidArgument,
          "Boys function argument must be non-negative");
  if (t < 1e-6)
    return 1.0 - t / 3.0 + t * t / 10.0 - t * t * t / 42.0;
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(kPi / t) * std::erf(st);
}

double overlap_s(const GaussianPrimitive &a, const GaussianPrimitive &b) {
  require_s(a);
  require_s(b);
  const auto g = gaussian_product(a, b);
  return a.norm() * b.norm() * std::pow(kPi / g.exponent, 1.5) * g.prefactor;
}

double kinetic_s(const GaussianPrimitive &a, const GaussianPrimitive &b) {
  require_s(a);
  require_s(b);
  const double p = a.exponent() + b.exponent();
  const double mu = a.exponent() * b.exponent() / p;
  const double r2 = (a.center() - b.center()).squaredNorm();
  return a.norm() * b.norm() * mu * (3.0 - 2.0 * mu * r2) *
         std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
}

double nuclear_attraction_s(const GaussianPrimitive &a,
                            const GaussianPrimitive &b, const Vec3 &nucleus,
                            int z) {
  require_s(a);
  require_s(b);
  const auto g = gaussian_product(a, b);
  const double t = g.exponent * (g.center - nucleus).squaredNorm();
  return -z * a.norm() * b.norm() * (2.0 * kPi / g.exponent) * g.prefactor *
         boys_f0(t);
}

double eri_s(const GaussianPrimitive &a, const GaussianPrimitive &b,
             const GaussianPrimitive &c, const GaussianPrimitive &d) {
  require_s(a);
  require_s(b);
  require_s(c);
  require_s(d);
  const auto u = gaussian_product(a, b);
  const auto v = gaussian_product(c, d);
  const double p = u.exponent;
  const double q = v.exponent;
  const double t = p * q / (p + q) * (u.center - v.center).squaredNorm();
  const double norms = a.norm() * b.norm() * c.norm() * d.norm();
  return norms * 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) *
         u.prefactor * v.prefactor * boys_f0(t);
}

double nuclear_repulsion(const Molecule &mol) {
  require(!mol.atoms.empty(), ErrorKind::InvalidArgument, "molecule has no atoms");
  double e = 0.0;
  for (std::size_t m = 0; m < mol.atoms.size(); ++m) {
    for (std::size_t n = m + 1; n < mol.atoms.size(); ++n) {
      const double r = (mol.atoms[m].position - mol.atoms[n].position).norm();
      if (r < 1e-8)
        fail(ErrorKind::DegenerateGeometry, "coincident nuclei");
      e += mol.atoms[m].z * mol.atoms[n].z / r;
    }
  }
  return e;
}

double overlap(const ContractedOrbital &a, const ContractedOrbital &b) {
  double s = 0.0;
  for (const auto &x : a.terms())
    for (const auto &y : b.terms())
      s += x.coefficient * y.coefficient * overlap_s(x.primitive, y.primitive);
  return s;
}

double kinetic(const ContractedOrbital &a, const ContractedOrbital &b) {
  double s = 0.0;
  for (const auto &x : a.terms())
    for (const auto &y : b.terms())
      s += x.coefficient * y.coefficient * kinetic_s(x.primitive, y.primitive);
  return s;
}

double nuclear_attraction(const ContractedOrbital &a,
                          const ContractedOrbital &b, const Molecule &mol) {
  double s = 0.0;
  for (const auto &atom : mol.atoms)
    for (const auto &x : a.terms())
      for (const auto &y : b.terms())
        s += x.coefficient * y.coefficient *
             nuclear_attraction_s(x.primitive, y.primitive, atom.position,
                                  atom.z);
  return s;
}

double eri(const ContractedOrbital &a, const ContractedOrbital &b,
           const ContractedOrbital &c, const ContractedOrbital &d) {
  double s = 0.0;
  for (const auto &w : a.terms())
    for (const auto &x : b.terms())
      for (const auto &y : c.terms())
        for (const auto &z : d.terms())
          s += w.coefficient * x.coefficient * y.coefficient * z.coefficient *
               eri_s(w.primitive, x.primitive, y.primitive, z.primitive);
  return s;
}

const BasisTable &sto3g() {
  // STO-3G (Hehre, Stewart, Pople 1969) as distributed by the Basis Set
  // Exchange; coefficients refer to normalized primitives.
  static const BasisTable table = {
      {"H",
       {{0, {3.42525091, 0.62391373, 0.16885540},
         {0.15432897, 0.53532814, 0.44463454}}}},
      {"He",
       {{0, {6.36242139, 1.15892300, 0.31364979},
         {0.15432897, 0.53532814, 0.44463454}}}},
      {"Li",
       {{0, {16.1195750, 2.9362007, 0.7946505},
         {0.15432897, 0.53532814, 0.44463454}},
        {0, {0.6362897, 0.1478601, 0.0480887},
         {-0.09996723, 0.39951283, 0.70011547}},
        {1, {0.6362897, 0.1478601, 0.0480887},
         {0.15591627, 0.60768372, 0.39195739}}}},
      {"Be",
       {{0, {30.1678710, 5.4951153, 1.4871927},
         {0.15432897, 0.53532814, 0.44463454}},
        {0, {1.3148331, 0.3055389, 0.0993707},
         {-0.09996723, 0.39951283, 0.70011547}},
        {1, {1.3148331, 0.3055389, 0.0993707},
         {0.15591627, 0.60768372, 0.39195739}}}},
  };
  return table;
}

BasisTable parse_basis_table(std::string_view text) {
  BasisTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  // Consecutive lines with the same (element, shell) extend one shell.
  std::string last_element, last_shell;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string element, shell;
    double exponent = 0.0, coefficient = 0.0;
    if (!(ls >> element))
      continue;
    if (!(ls >> shell >> exponent >> coefficient))
      fail(ErrorKind::Parse,
           "basis line " + std::to_string(lineno) + ": expected 'element shell exponent coefficient'");
    element = element_symbol(atomic_number(element));
    shell = lower(shell);
    auto &shells = table[element];
    const bool extend = element == last_element && shell == last_shell;
    if (shell == "s" || shell == "p") {
      if (!extend)
        shells.push_back({shell == "s" ? 0 : 1, {}, {}});
      shells.back().exponents.push_back(exponent);
      shells.back().coefficients.push_back(coefficient);
    } else if (shell == "sp") {
      double p_coefficient = 0.0;
      if (!(ls >> p_coefficient))
        fail(ErrorKind::Parse, "basis line " + std::to_string(lineno) +
                                   ": sp shell needs two coefficients");
      if (!extend) {
        shells.push_back({0, {}, {}});
        shells.push_back({1, {}, {}});
      }
      auto &s = shells[shells.size() - 2];
      auto &p = shells.back();
      s.exponents.push_back(exponent);
      s.coefficients.push_back(coefficient);
      p.exponents.push_back(exponent);
      p.coefficients.push_back(p_coefficient);
    } else {
      fail(ErrorKind::Parse, "basis line " + std::to_string(lineno) +
                                 ": unsupported shell '" + shell + "'");
    }
    last_element = element;
    last_shell = shell;
  }
  return table;
}

std::vector<ContractedOrbital> build_basis(const Molecule &mol,
                                           const BasisTable &table) {
  std::vector<ContractedOrbital> basis;
  for (const auto &atom : mol.atoms) {
    const auto symbol = element_symbol(atom.z);
    const auto it = table.find(symbol);
    require(it != table.end(), ErrorKind::InvalidArgument,
            "no basis functions for element " + symbol);
    int s_count = 0;
    for (const auto &shell : it->second) {
      std::vector<Angular> components;
      if (shell.l == 0)
        components = {{0, 0, 0}};
      else if (shell.l == 1)
        components = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      else
        fail(ErrorKind::UnsupportedAngularMomentum, "shells above p are not supported");
      for (const auto &ang : components) {
        std::vector<ContractionTerm> terms;
        for (std::size_t k = 0; k < shell.exponents.size(); ++k)
          terms.push_back(
              {shell.coefficients[k],
               GaussianPrimitive(shell.exponents[k], ang, atom.position)});
        std::string label = symbol + " ";
        label += shell.l == 0 ? std::to_string(++s_count) + "s"
                              : std::string("p") + "xyz"[ang[1] + 2 * ang[2]];
        basis.emplace_back(std::move(terms), std::move(label));
      }
    }
  }
  return basis;
}

IntegralSet build_integrals(const Molecule &mol, const BasisTable &table) {
  const auto basis = build_basis(mol, table);
  for (const auto &orb : basis)
    if (!(orb.angular() == Angular{0, 0, 0}))
      fail(ErrorKind::UnsupportedAngularMomentum,
           "orbital " + orb.label() +
               " is not s-type; supply a Hamiltonian fixture for this molecule");
  const std::size_t n = basis.size();
  IntegralSet ints;
  ints.overlap.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  ints.kinetic.resizeLike(ints.overlap);
  ints.nuclear.resizeLike(ints.overlap);
  ints.eri = Tensor4(n);
  ints.e_nuc = nuclear_repulsion(mol);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
      ints.overlap(i, j) = ints.overlap(j, i) =
          a == b ? 1.0 : overlap(basis[a], basis[b]);
      ints.kinetic(i, j) = ints.kinetic(j, i) = kinetic(basis[a], basis[b]);
      ints.nuclear(i, j) = ints.nuclear(j, i) =
          nuclear_attraction(basis[a], basis[b], mol);
    }
  }
  // Unique quartets a>=b, c>=d, ab>=cd, copied to all eight images.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d <= c; ++d) {
          if (a * (a + 1) / 2 + b < c * (c + 1) / 2 + d)
            continue;
          const double v = eri(basis[a], basis[b], basis[c], basis[d]);
          for (auto [p, q, r, s] :
               {std::array{a, b, c, d}, std::array{b, a, c, d},
                std::array{a, b, d, c}, std::array{b, a, d, c},
                std::array{c, d, a, b}, std::array{d, c, a, b},
                std::array{c, d, b, a}, std::array{d, c, b, a}})
            ints.eri(p, q, r, s) = v;
        }
  return ints;
}

} // namespace qve

#include "stablab/zoo.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "stablab/error.hpp"

namespace stablab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CMatrix shift(int n) {
  CMatrix s(static_cast<std::size_t>(n));
  const std::size_t last = static_cast<std::size_t>(n) - 1;
  s(0, last) = 1.0;
  for (std::size_t i = 1; i <= last; ++i) s(i, i - 1) = 1.0;
  return s;
}

// Winding of (r c + 1 - r)^dim, or nullopt when c = -1.
std::optional<int> scalar_wind(cplx c, std::size_t dim) {
  if (std::abs(c + 1.0) < 1e-12) return std::nullopt;
  return static_cast<int>(std::lround(static_cast<double>(dim) * principal_arg(c) / kTwoPi));
}

Word parse(const Presentation& p, std::string_view text) { return parse_word(text, p.generators); }

void add_test_relator(NamedConstruction& c, std::string_view text, std::optional<cplx> closed_form) {
  Word w = parse(c.presentation, text);
  c.presentation.relators.push_back(w);
  c.test_relators.push_back(std::move(w));
  c.closed_form.push_back(closed_form);
  c.expected_wind.push_back(closed_form ? scalar_wind(*closed_form, c.tuple.dim()) : std::nullopt);
}

void add_exact_relator(NamedConstruction& c, std::string_view text) {
  Word w = parse(c.presentation, text);
  c.presentation.relators.push_back(w);
  c.exact_relators.push_back(std::move(w));
}

NamedConstruction start(std::string family, int n, std::string name, std::vector<std::string> gens,
                        std::vector<CMatrix> mats) {
  NamedConstruction c;
  c.family = std::move(family);
  c.n_parameter = n;
  c.presentation.name = std::move(name);
  c.presentation.generators = gens;
  c.tuple.labels = std::move(gens);
  c.tuple.matrices = std::move(mats);
  c.tuple.unitarity_tol = 1e-12;
  return c;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

cplx root_of_unity(int n, long power) {
  long p = power % n;
  if (p < 0) p += n;
  return std::polar(1.0, kTwoPi * static_cast<double>(p) / static_cast<double>(n));
}

std::pair<CMatrix, CMatrix> voiculescu(int n) {
  require(n >= 2, "Voiculescu matrices need n >= 2");
  std::vector<cplx> diag(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) diag[static_cast<std::size_t>(k - 1)] = root_of_unity(n, k);
  return {CMatrix::diagonal(diag), shift(n)};
}

NamedConstruction voiculescu_family(int n) {
  auto [omega, s] = voiculescu(n);
  NamedConstruction c = start("voiculescu", n, "Z^2", {"a", "b"}, {omega, s});
  add_test_relator(c, "[a,b]", root_of_unity(n, 1));
  return c;
}

NamedConstruction wallpaper_p2(int n) {
  require(n >= 3, "p2 construction needs n >= 3");
  auto [om, s] = voiculescu(n);
  const CMatrix one = CMatrix::identity(static_cast<std::size_t>(n));
  const CMatrix z;
  CMatrix t1 = CMatrix::from_blocks({{z, om}, {om.adjoint(), z}});
  CMatrix t2 = CMatrix::from_blocks({{z, s}, {s.adjoint(), z}});
  CMatrix t3 = CMatrix::from_blocks({{z, one}, {one, z}});
  NamedConstruction c = start("p2", n, "p2", {"t1", "t2", "t3"}, {t1, t2, t3});
  add_exact_relator(c, "t1^2");
  add_exact_relator(c, "t2^2");
  add_exact_relator(c, "t3^2");
  add_test_relator(c, "t1 t2 t3 t1^-1 t2^-1 t3^-1", root_of_unity(n, -1));
  return c;
}

NamedConstruction wallpaper_p4(int n) {
  require(n >= 3, "p4 construction needs n >= 3");
  auto [om, s] = voiculescu(n);
  const CMatrix si = s.adjoint(), omi = om.adjoint();
  const CMatrix z;
  CMatrix r = CMatrix::from_blocks({{z, z, z, s}, {s, z, z, z}, {z, si, z, z}, {z, z, si, z}});
  CMatrix t = CMatrix::from_blocks({{z, z, om, z}, {z, z, z, om}, {omi, z, z, z}, {z, omi, z, z}});
  NamedConstruction c = start("p4", n, "p4", {"r", "t"}, {r, t});
  add_exact_relator(c, "r^4");
  add_exact_relator(c, "t^2");
  add_test_relator(c, "r^-3 t r t r t^-1 r t^-1", root_of_unity(n, -2));
  return c;
}

NamedConstruction wallpaper_p3(int n) {
  require(n >= 3, "p3 construction needs n >= 3");
  auto [om, s] = voiculescu(n);
  const CMatrix one = CMatrix::identity(static_cast<std::size_t>(n));
  const CMatrix z;
  CMatrix r = CMatrix::from_blocks({{z, z, s.adjoint()}, {s, z, z}, {z, one, z}});
  CMatrix t = CMatrix::from_blocks({{z, z, one}, {om, z, z}, {z, om.adjoint(), z}});
  NamedConstruction c = start("p3", n, "p3", {"r", "t"}, {r, t});
  add_exact_relator(c, "r^3");
  add_exact_relator(c, "t^3");
  add_test_relator(c, "r^-2 t^-2 r t r t", root_of_unity(n, -1));
  return c;
}

NamedConstruction wallpaper_p6(int n) {
  require(n >= 3, "p6 construction needs n >= 3");
  auto [om, s] = voiculescu(n);
  const CMatrix one = CMatrix::identity(static_cast<std::size_t>(n));
  const CMatrix si = s.adjoint(), omi = om.adjoint();
  const CMatrix z;
  CMatrix r = CMatrix::from_blocks({{z, z, z, z, si, z},
                                    {z, z, z, z, z, si},
                                    {s, z, z, z, z, z},
                                    {z, s, z, z, z, z},
                                    {z, z, one, z, z, z},
                                    {z, z, z, one, z, z}});
  CMatrix t = CMatrix::from_blocks({{z, z, z, om, z, z},
                                    {z, z, z, z, om, z},
                                    {z, z, z, z, z, om},
                                    {omi, z, z, z, z, z},
                                    {z, omi, z, z, z, z},
                                    {z, z, omi, z, z, z}});
  NamedConstruction c = start("p6", n, "p6", {"r", "t"}, {r, t});
  add_exact_relator(c, "r^3");
  add_exact_relator(c, "t^2");
  add_test_relator(c, "r^-2 t r^-2 t^-1 r t r t^-1 r t r t^-1", root_of_unity(n, -2));
  return c;
}

NamedConstruction surface(int g, int n) {
  require(g >= 1, "surface genus must be >= 1");
  require(n >= 2, "surface construction needs n >= 2");
  auto [om, s] = voiculescu(n);
  const CMatrix one = CMatrix::identity(static_cast<std::size_t>(n));
  std::vector<std::string> gens;
  std::vector<CMatrix> mats;
  for (int i = 1; i <= g; ++i) {
    gens.push_back("a" + std::to_string(i));
    mats.push_back(i == 1 ? om : one);
  }
  for (int i = 1; i <= g; ++i) {
    gens.push_back("b" + std::to_string(i));
    mats.push_back(i == 1 ? s : one);
  }
  NamedConstruction c = start("surface", n, "surface group of genus " + std::to_string(g), gens, mats);
  std::string rel;
  for (int i = 1; i <= g; ++i) {
    if (!rel.empty()) rel += ' ';
    rel += "[a" + std::to_string(i) + ",b" + std::to_string(i) + "]";
  }
  add_test_relator(c, rel, root_of_unity(n, 1));
  return c;
}

NamedConstruction bs_mm(int m, int n) {
  require(m != 0, "bs_mm needs m != 0");
  require(n > 2 * std::abs(m), "bs_mm needs n > 2|m|");
  auto [om, s] = voiculescu(n);
  NamedConstruction c = start("bs_mm", n, "BS(" + std::to_string(m) + "," + std::to_string(m) + ")", {"a", "b"},
                              {om, s});
  add_test_relator(c, "a^" + std::to_string(m) + " b a^" + std::to_string(-m) + " b^-1", root_of_unity(n, m));
  return c;
}

NamedConstruction nilpotent(int m_coefficient, int l) {
  require(m_coefficient != 0, "nilpotent family needs M != 0");
  require(l >= 3 && l % 2 == 1, "nilpotent family needs odd l >= 3");
  const std::size_t dim = static_cast<std::size_t>(l);
  std::vector<cplx> lambda(dim), mu(dim);
  for (long k = 1; k <= l; ++k) {
    // lambda_k = conj(omega_l)^(M k(k+1)/2), reduced mod l before exponentiating.
    const long tri = (k * (k + 1) / 2) % l;
    const long e = (static_cast<long>(m_coefficient) % l) * tri % l;
    lambda[static_cast<std::size_t>(k - 1)] = root_of_unity(l, -e);
    mu[static_cast<std::size_t>(k - 1)] = root_of_unity(l, -k);
  }
  NamedConstruction c = start("nilpotent", l, "2-step nilpotent slice (M=" + std::to_string(m_coefficient) + ")",
                              {"a", "s", "b"}, {CMatrix::diagonal(lambda), shift(l), CMatrix::diagonal(mu)});
  add_exact_relator(c, "a s a^-1 s^-1 b^" + std::to_string(-m_coefficient));
  add_exact_relator(c, "[a,b]");
  add_test_relator(c, "[b,s]", root_of_unity(l, -1));
  return c;
}

std::vector<std::size_t> bs23_permutation(int n) {
  require(n >= 1, "BS(2,3) construction needs n >= 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::size_t> target(6 * nn);
  for (std::size_t k = 0; k < nn; ++k) {
    target[2 * k] = 3 * k;
    target[2 * k + 1] = 3 * k + 1;
    target[2 * nn + 2 * k] = 3 * k + 2;
    target[2 * nn + 2 * k + 1] = 3 * nn + 3 * k + 2;
    target[4 * nn + 2 * k] = 3 * nn + 3 * k;
    target[4 * nn + 2 * k + 1] = 3 * nn + 3 * k + 1;
  }
  return target;
}

Bs23Matrices bs23_matrices(int n) {
  const std::vector<std::size_t> target = bs23_permutation(n);
  const std::size_t dim = target.size();
  std::vector<cplx> phases(dim);
  for (std::size_t k = 0; k < dim; ++k) phases[k] = root_of_unity(static_cast<int>(dim), static_cast<long>(k));
  Bs23Matrices out{CMatrix::diagonal(phases), CMatrix(dim), CMatrix::identity(dim)};
  for (std::size_t src = 0; src < dim; ++src) out.v(target[src], src) = 1.0;
  const std::size_t mid = 3 * static_cast<std::size_t>(n);
  const double h = 1.0 / std::sqrt(2.0);
  out.v_tilde(0, 0) = h;
  out.v_tilde(mid, 0) = -h;
  out.v_tilde(0, mid) = h;
  out.v_tilde(mid, mid) = h;
  return out;
}

Word bs23_stated_relator() { return Word{{{0, 1}, {1, 2}, {0, -1}, {1, -3}}}; }
Word bs23_mirror_relator() { return Word{{{0, 1}, {1, 3}, {0, -1}, {1, -2}}}; }
Word bs23_h0() { return Word{{{0, 1}, {1, 1}, {0, -1}, {1, 1}, {0, 1}, {1, -1}, {0, -1}, {1, -1}}}; }

NamedConstruction bs23(int n) {
  Bs23Matrices m = bs23_matrices(n);
  NamedConstruction c = start("bs23", n, "BS(2,3)", {"a", "b"}, {m.v_tilde * m.v, m.u});
  c.presentation.relators.push_back(bs23_mirror_relator());
  return c;
}

double bs23_commutator_gap(int n) {
  const NamedConstruction c = bs23(n);
  const CMatrix value = evaluate_word(bs23_h0(), c.tuple);
  return operator_norm(value - CMatrix::identity(value.dim()));
}

CMatrix bs23_restricted_commutator(int n) {
  const NamedConstruction c = bs23(n);
  const CMatrix& a = c.tuple.matrices[0];
  const CMatrix& b = c.tuple.matrices[1];
  const CMatrix x = a * b * a.adjoint();
  const CMatrix comm = x * b - b * x;
  const std::size_t idx[2] = {0, 3 * static_cast<std::size_t>(n)};
  CMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = comm(idx[i], idx[j]);
  return out;
}

NamedConstruction identity_family(int n) {
  require(n >= 1, "identity family needs n >= 1");
  const CMatrix one = CMatrix::identity(static_cast<std::size_t>(n));
  NamedConstruction c = start("identity", n, "Z^2 (identity tuple)", {"a", "b"}, {one, one});
  add_test_relator(c, "[a,b]", cplx{1.0, 0.0});
  return c;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"voiculescu", "p2",        "p3",   "p4",      "p6",
                                                 "surface",    "bs_mm",     "nilpotent", "bs23", "identity"};
  return names;
}

NamedConstruction build_family(const std::string& name, const FamilyParams& p) {
  if (name == "voiculescu") return voiculescu_family(p.n);
  if (name == "p2") return wallpaper_p2(p.n);
  if (name == "p3") return wallpaper_p3(p.n);
  if (name == "p4") return wallpaper_p4(p.n);
  if (name == "p6") return wallpaper_p6(p.n);
  if (name == "surface") return surface(p.g, p.n);
  if (name == "bs_mm") return bs_mm(p.m, p.n);
  if (name == "nilpotent") return nilpotent(p.M, p.n);
  if (name == "bs23") return bs23(p.n);
  if (name == "identity") return identity_family(p.n);
  throw DomainError("unknown family '" + name + "'");
}

}  // namespace stablab

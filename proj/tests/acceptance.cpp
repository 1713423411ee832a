#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stablab/cli.hpp"
#include "stablab/crystal.hpp"
#include "stablab/error.hpp"
#include "stablab/induce.hpp"
#include "stablab/winding.hpp"
#include "stablab/zoo.hpp"
#include "support.hpp"

using namespace stablab;
using testing::kPi;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      pass = false;
      if (notes.size() < 12) notes.push_back(what);
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << o.checks << " checks";
  if (!o.pass) {
    std::cout << "; ";
    for (std::size_t i = 0; i < o.notes.size(); ++i) std::cout << (i ? "; " : "") << o.notes[i];
  }
  std::cout << ")" << std::endl;
  if (!o.pass) ++failures;
}

cplx omega(int n, int power = 1) { return std::polar(1.0, 2 * kPi * power / n); }

std::string label(const std::string& family, const FamilyParams& p) {
  std::ostringstream s;
  s << family << " n=" << p.n;
  if (family == "bs_mm") s << " m=" << p.m;
  if (family == "surface") s << " g=" << p.g;
  if (family == "nilpotent") s << " M=" << p.M;
  return s.str();
}

/// Winding by one algorithm, or nullopt when the curve passes through zero.
struct Wind {
  std::optional<int> value;
  std::string failure;
};

Wind run_method(const std::function<WindingResult()>& f) {
  try {
    return {f().wind, ""};
  } catch (const CurveTouchesZero&) {
    return {std::nullopt, "curve through 0"};
  } catch (const std::exception& e) {
    return {std::nullopt, e.what()};
  }
}

struct WindCase {
  std::string name;
  int expected;
  Wind spectral;
  Wind sampled;
};

std::string show(const Wind& w) { return w.value ? std::to_string(*w.value) : w.failure; }

std::vector<WindCase> winding_cases() {
  std::vector<WindCase> cases;
  auto add = [&](const std::string& family, const FamilyParams& p, int expected) {
    const NamedConstruction c = build_family(family, p);
    const Word& w = c.test_relators.at(0);
    cases.push_back({label(family, p), expected, run_method([&] { return winding_spectral(w, c.tuple); }),
                     run_method([&] { return winding_sampled(w, c.tuple); })});
  };
  for (int n = 3; n <= 24; ++n) {
    FamilyParams p;
    p.n = n;
    add("p2", p, -2);
    add("p4", p, -8);
    add("p3", p, -3);
    add("p6", p, -12);
    for (int g = 1; g <= 3; ++g) {
      p.g = g;
      add("surface", p, 1);
    }
    for (int m = -3; m <= 3; ++m) {
      if (m == 0 || n <= 2 * std::abs(m)) continue;
      p.m = m;
      add("bs_mm", p, m);
    }
  }
  for (int l = 3; l <= 21; l += 2) {
    for (int M : {1, 2}) {
      FamilyParams p;
      p.n = l;
      p.M = M;
      add("nilpotent", p, -1);
    }
  }
  return cases;
}

Outcome criterion1(const std::vector<WindCase>& cases) {
  Outcome o;
  for (const WindCase& c : cases) {
    o.expect(c.spectral.value == std::optional<int>(c.expected),
             c.name + " spectral " + show(c.spectral) + " vs " + std::to_string(c.expected));
    o.expect(c.sampled.value == std::optional<int>(c.expected),
             c.name + " sampled " + show(c.sampled) + " vs " + std::to_string(c.expected));
  }
  return o;
}

double scalar_distance(const CMatrix& m, cplx c) { return max_entry_distance(m, CMatrix::scalar(m.dim(), c)); }

Outcome criterion2() {
  Outcome o;
  for (int n = 3; n <= 24; ++n) {
    auto check = [&](const NamedConstruction& c, cplx expected, std::size_t dim) {
      const CMatrix v = evaluate_word(c.test_relators.at(0), c.tuple);
      o.expect(v.dim() == dim && scalar_distance(v, expected) <= 1e-10, c.family + " n=" + std::to_string(n));
    };
    const std::size_t nn = static_cast<std::size_t>(n);
    check(wallpaper_p2(n), omega(n, -1), 2 * nn);
    check(wallpaper_p4(n), omega(n, -2), 4 * nn);
    check(wallpaper_p3(n), omega(n, -1), 3 * nn);
    check(wallpaper_p6(n), omega(n, -2), 6 * nn);
    check(surface(1, n), omega(n), nn);
    for (int m = -3; m <= 3; ++m)
      if (m != 0 && n > 2 * std::abs(m)) check(bs_mm(m, n), omega(n, m), nn);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (int n = 3; n <= 24; ++n) {
    for (const NamedConstruction& c : {wallpaper_p2(n), wallpaper_p3(n), wallpaper_p4(n), wallpaper_p6(n)}) {
      for (const Word& w : c.exact_relators) {
        const CMatrix v = evaluate_word(w, c.tuple);
        o.expect(max_entry_distance(v, CMatrix::identity(v.dim())) <= 1e-12,
                 c.family + " n=" + std::to_string(n) + " " + to_string(w, c.presentation.generators));
      }
    }
  }
  for (int M : {-2, 1, 2, 3}) {
    for (int l = 3; l <= 21; l += 2) {
      const NamedConstruction c = nilpotent(M, l);
      const CMatrix& A = c.tuple.matrices[0];
      const CMatrix& S = c.tuple.matrices[1];
      const CMatrix& B = c.tuple.matrices[2];
      const std::string tag = "nilpotent M=" + std::to_string(M) + " l=" + std::to_string(l);
      o.expect(max_entry_distance(A * S * A.adjoint() * S.adjoint(), unitary_power(B, M)) <= 1e-12, tag + " [A,S]");
      o.expect(max_entry_distance(A * B * A.adjoint() * B.adjoint(), CMatrix::identity(c.tuple.dim())) <= 1e-12,
               tag + " [A,B]");
    }
  }
  for (int n = 1; n <= 16; ++n) {
    const Bs23Matrices m = bs23_matrices(n);
    const CMatrix u2 = m.u * m.u;
    o.expect((m.v_tilde * u2 - u2 * m.v_tilde).max_abs_entry() <= 1e-12, "bs23 [v~,u^2] n=" + std::to_string(n));

    const std::size_t nn = static_cast<std::size_t>(n);
    std::multiset<std::size_t> sources, targets;
    for (std::size_t k = 0; k < nn; ++k) {
      for (std::size_t s : {2 * k, 2 * k + 1, 2 * nn + 2 * k, 2 * nn + 2 * k + 1, 4 * nn + 2 * k, 4 * nn + 2 * k + 1})
        sources.insert(s);
      for (std::size_t t : {3 * k, 3 * k + 1, 3 * k + 2, 3 * nn + 3 * k, 3 * nn + 3 * k + 1, 3 * nn + 3 * k + 2})
        targets.insert(t);
    }
    bool partition = sources.size() == 6 * nn && targets.size() == 6 * nn;
    for (std::size_t i = 0; i < 6 * nn; ++i) partition = partition && sources.count(i) == 1 && targets.count(i) == 1;
    const std::vector<std::size_t> perm = bs23_permutation(n);
    const std::set<std::size_t> image(perm.begin(), perm.end());
    partition = partition && image.size() == 6 * nn && *image.rbegin() == 6 * nn - 1;
    o.expect(partition, "bs23 index families n=" + std::to_string(n));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (int n = 3; n <= 40; ++n) {
    const NamedConstruction c = wallpaper_p2(n);
    const ObstructionReport r = certify_obstruction(c.test_relators.at(0), c.tuple);
    const Verdict want = n >= 13 ? Verdict::certified_far : Verdict::inconclusive;
    o.expect(r.verdict == want, "p2 n=" + std::to_string(n) + " verdict " + to_string(r.verdict));
    o.expect(std::abs(r.defect - 2 * std::sin(kPi / n)) <= 1e-12, "p2 n=" + std::to_string(n) + " defect");
    o.expect(r.radius_num == 1 && r.radius_den == 12, "p2 n=" + std::to_string(n) + " radius");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const cplx lambda = std::polar(1.0, 4 * kPi / 3);
  for (int n = 1; n <= 32; ++n) {
    const double gap = bs23_commutator_gap(n);
    o.expect(gap >= std::sqrt(3.0) - 1e-9, "gap n=" + std::to_string(n) + " = " + cli::format_double(gap));
    const CMatrix b = bs23_restricted_commutator(n);
    const double err = std::max({std::abs(b(0, 0)), std::abs(b(0, 1) - (1.0 - lambda)), std::abs(b(1, 0) - (lambda - 1.0)),
                                 std::abs(b(1, 1))});
    o.expect(err <= 1e-12, "restriction block n=" + std::to_string(n));
  }
  return o;
}

Outcome criterion6(const std::vector<WindCase>& cases) {
  Outcome o;
  for (const WindCase& c : cases) {
    const bool both_undefined = !c.spectral.value && !c.sampled.value && c.spectral.failure == "curve through 0" &&
                                c.sampled.failure == "curve through 0";
    o.expect((c.spectral.value && c.spectral.value == c.sampled.value) || both_undefined,
             c.name + " spectral " + show(c.spectral) + " sampled " + show(c.sampled));
  }
  std::mt19937_64 rng(600);
  std::uniform_int_distribution<std::size_t> dim(2, 12);
  const std::vector<std::string> ab{"a", "b"};
  const Word w = parse_word("[a,b]", ab);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = dim(rng);
    UnitaryTuple t{{testing::random_diagonal_unitary(n, rng), testing::random_diagonal_unitary(n, rng)}, ab};
    t.matrices[0] = t.matrices[0] * testing::near_identity(n, 0.05, rng);
    t.matrices[1] = t.matrices[1] * testing::near_identity(n, 0.05, rng);
    const Wind s = run_method([&] { return winding_spectral(w, t); });
    const Wind p = run_method([&] { return winding_sampled(w, t); });
    o.expect(s.value == std::optional<int>(0) && p.value == std::optional<int>(0),
             "perturbation " + std::to_string(trial) + " spectral " + show(s) + " sampled " + show(p));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(700);
  const std::vector<std::string> abc{"a", "b", "c"};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    UnitaryTuple t;
    t.labels = abc;
    Word w;
    if (trial % 2 == 0) {
      // Commuting diagonals satisfy every commutator word.
      for (int i = 0; i < 3; ++i) t.matrices.push_back(testing::random_diagonal_unitary(n, rng));
      const std::size_t u = static_cast<std::size_t>(trial / 2) % 3;
      w = commutator(u, (u + 1) % 3);
      if (trial % 4 == 0) w = concat(w, commutator((u + 2) % 3, u));
    } else {
      // Powers of one cyclic shift commute, so any homogeneous word on
      // them evaluates to the identity.
      const auto [clock, shift] = voiculescu(static_cast<int>(n));
      std::uniform_int_distribution<int> power(0, static_cast<int>(n) - 1);
      for (int i = 0; i < 3; ++i) t.matrices.push_back(unitary_power(shift, power(rng)));
      w = testing::random_homogeneous_word(3, 3 + static_cast<std::size_t>(trial % 4), rng);
    }
    const std::string tag = "tuple " + std::to_string(trial) + " " + to_string(w, abc);
    try {
      const ObstructionReport r = certify_obstruction(w, t, {true, {}});
      o.expect(r.wind == std::optional<int>(0) && r.sampled_wind == std::optional<int>(0), tag + " wind");
      o.expect(r.defect <= 1e-12, tag + " defect " + cli::format_double(r.defect));
    } catch (const std::exception& e) {
      o.expect(false, tag + ": " + e.what());
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const crystal::Classification c = crystal::classify_all();
  o.expect(c.rows.size() == 17, "row count " + std::to_string(c.rows.size()));
  o.expect(c.consistent(), "classification reported transcription failures");
  std::set<std::string> certified, uncertified, shaded;
  for (const auto& row : c.rows) {
    o.expect(row.verdict.cond_i == row.verdict.cond_ii, row.rec->name + " (i) != (ii)");
    (row.verdict.certificate == crystal::Certificate::stable_certified ? certified : uncertified).insert(row.rec->name);
    if (row.rec->shaded) shaded.insert(row.rec->name);
  }
  std::set<std::string> corollary;
  for (const char* name : {"cm", "pm", "pg", "cmm", "pmm", "pmg", "pgg", "p3m1", "p31m", "p4mm", "p4mg", "p6mm"})
    corollary.insert(crystal::canonical_name(name));
  o.expect(certified == corollary, "certified set differs from the twelve stable groups");
  o.expect(uncertified == shaded && shaded.size() == 5, "uncertified set differs from the shaded rows");
  return o;
}

CosetAction bs23_semidirect() {
  CosetAction a;
  a.index = 2;
  a.g_generators = {"a", "b", "c"};
  a.h_generators = {"a", "b"};
  const Word ha{{{0, 1}}}, hb{{{1, 1}}}, hb_inv{{{1, -1}}};
  a.table = {{CosetMove{0, ha}, CosetMove{1, ha}},
             {CosetMove{0, hb}, CosetMove{1, hb_inv}},
             {CosetMove{1, Word{}}, CosetMove{0, Word{}}}};
  return a;
}

CMatrix almost_unitary(std::size_t k, double delta, std::mt19937_64& rng) {
  std::vector<cplx> d(k, cplx{1.0, 0.0});
  d[0] = 1.0 + delta;
  const CMatrix q = testing::random_unitary(k, rng);
  return testing::random_unitary(k, rng) * q * CMatrix::diagonal(d) * q.adjoint();
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(900);
  const std::vector<std::string> hgen{"h"};

  // Index one.
  {
    CosetAction a;
    a.index = 1;
    a.g_generators = {"g"};
    a.h_generators = hgen;
    a.table = {{CosetMove{0, Word{{{0, 1}}}}}};
    const CMatrix m = testing::random_unitary(5, rng);
    const SubgroupRep rep{hgen, {m}};
    o.expect(max_entry_distance(induce_element(rep, a, Word{{{0, 1}}}), m) <= 1e-12, "index-1 induction");
    o.expect(max_entry_distance(induce_element(rep, a, Word{{{0, -1}}}), m.adjoint()) <= 1e-12, "index-1 inverse");
  }

  // Z inside Z with index two.
  {
    CosetAction a;
    a.index = 2;
    a.g_generators = {"t"};
    a.h_generators = hgen;
    a.table = {{CosetMove{1, Word{}}, CosetMove{0, Word{{{0, 1}}}}}};
    for (int n : {3, 8, 17}) {
      const auto [clock, shift] = voiculescu(n);
      const SubgroupRep rep{hgen, {clock}};
      const CMatrix t = induce_element(rep, a, Word{{{0, 1}}});
      const CMatrix want = CMatrix::from_blocks({{clock, CMatrix{}}, {CMatrix{}, clock}});
      o.expect(max_entry_distance(t * t, want) <= 1e-12, "Ind(t)^2 n=" + std::to_string(n));
    }
  }

  // Defect non-increase on random approximate representations.
  {
    const CosetAction a = bs23_semidirect();
    const std::vector<Word> letters{Word{{{0, 1}}}, Word{{{0, -1}}}, Word{{{1, 1}}}, Word{{{1, -1}}}, Word{{{2, 1}}},
                                    Word{{{2, -1}}}};
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t k = 2 + static_cast<std::size_t>(trial % 4);
      const SubgroupRep rep{{"a", "b"}, {almost_unitary(k, 1e-6, rng), almost_unitary(k, 1e-6, rng)}, 1e-5};
      const UnitaryTuple tuple = rep.as_tuple();
      const Word& g = letters[pick(rng)];
      const Word& gp = letters[pick(rng)];
      // Coset-wise pairs read off the table: g' g_i = g_j h'_i and g g_j = g_l h_j.
      double pair_max = 0.0;
      for (std::size_t i = 0; i < a.index; ++i) {
        const CosetMove second = a.table[gp.letters[0].generator][i];
        std::size_t j = second.target;
        Word hp = second.h_word;
        if (gp.letters[0].exponent < 0) {
          for (std::size_t src = 0; src < a.index; ++src)
            if (a.table[gp.letters[0].generator][src].target == i) {
              j = src;
              hp = invert(a.table[gp.letters[0].generator][src].h_word);
            }
        }
        Word h = a.table[g.letters[0].generator][j].h_word;
        if (g.letters[0].exponent < 0) {
          for (std::size_t src = 0; src < a.index; ++src)
            if (a.table[g.letters[0].generator][src].target == j) h = invert(a.table[g.letters[0].generator][src].h_word);
        }
        const CMatrix product = evaluate_word(h, tuple) * evaluate_word(hp, tuple);
        const CMatrix joint = evaluate_word(free_reduce(concat(h, hp)), tuple);
        pair_max = std::max(pair_max, operator_norm(product - joint));
      }
      const double defect = induce_defect(rep, a, g, gp);
      o.expect(defect <= pair_max + 1e-8, "random rep " + std::to_string(trial) + " defect " +
                                               cli::format_double(defect) + " > " + cli::format_double(pair_max));
    }
  }

  // Restriction transports the BS(2,3) gap through a hand-built index-2 table.
  {
    const CosetAction a = bs23_semidirect();
    for (int n = 1; n <= 8; ++n) {
      const NamedConstruction c = bs23(n);
      const SubgroupRep rep{{"a", "b"}, c.tuple.matrices};
      const CMatrix ind = induce_element(rep, a, bs23_h0());
      const double gap = operator_norm(ind - CMatrix::identity(ind.dim()));
      const double block_err = max_entry_distance(ind.block(0, 0, c.tuple.dim()), evaluate_word(bs23_h0(), c.tuple));
      o.expect(block_err <= 1e-12 && gap >= std::sqrt(3.0) - 1e-9,
               "induced gap n=" + std::to_string(n) + " = " + cli::format_double(gap));
    }
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto sweep = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  const std::vector<std::vector<std::string>> configs{
      {"sweep", "--family", "p6", "--from", "3", "--to", "24"},
      {"sweep", "--family", "bs23", "--from", "1", "--to", "16", "--format", "json"},
      {"sweep", "--family", "nilpotent", "--M", "2", "--from", "3", "--to", "21", "--step", "2", "--format", "json"},
      {"sweep", "--family", "bs_mm", "--m", "-2", "--from", "3", "--to", "30"},
  };
  for (const auto& base : configs) {
    auto serial = base;
    serial.insert(serial.end(), {"--parallelism", "1"});
    auto parallel = base;
    parallel.insert(parallel.end(), {"--parallelism", "8"});
    const std::string first = sweep(serial);
    o.expect(sweep(parallel) == first, base[2] + " parallelism 8 differs from 1");
    o.expect(sweep(serial) == first, base[2] + " repeated serial run differs");
    o.expect(sweep(parallel) == first, base[2] + " repeated parallel run differs");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<WindCase> cases = winding_cases();
  report(1, "winding reproduction on the zoo, both algorithms", criterion1(cases));
  report(2, "closed-form relator values within 1e-10", criterion2());
  report(3, "exact identities within 1e-12 and BS(2,3) index partition", criterion3());
  report(4, "p2 certificate flips between n = 12 and n = 13 with radius 1/12", criterion4());
  report(5, "BS(2,3) commutator gap >= sqrt(3) - 1e-9 and restriction block within 1e-12", criterion5());
  report(6, "spectral and sampled winding agree", criterion6(cases));
  report(7, "exactly satisfying tuples give wind 0 and defect <= 1e-12", criterion7());
  report(8, "wallpaper table: (i) <=> (ii), twelve certified, five shaded", criterion8());
  report(9, "induced approximate representations", criterion9());
  report(10, "sweep output identical across runs and parallelism", criterion10());
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

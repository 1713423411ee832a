#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "stablab/linalg.hpp"
#include "stablab/relator.hpp"

namespace stablab::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline CMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx{g(rng), g(rng)};
  return m;
}

inline CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  CMatrix m = random_matrix(n, rng);
  return (m + m.adjoint()) * cplx{0.5, 0.0};
}

/// exp(i t H) for Hermitian H.
inline CMatrix exp_i(const CMatrix& h, double t) {
  const HermitianEigen e = eig_hermitian(h);
  const std::size_t n = h.dim();
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, t * e.values[k]);
  return e.vectors * CMatrix::diagonal(phases) * e.vectors.adjoint();
}

inline CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) { return exp_i(random_hermitian(n, rng), 1.0); }

inline CMatrix random_diagonal_unitary(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<cplx> d(n);
  for (auto& z : d) z = std::polar(1.0, u(rng));
  return CMatrix::diagonal(d);
}

/// Unitary within operator-norm distance `radius` of the identity.
inline CMatrix near_identity(std::size_t n, double radius, std::mt19937_64& rng) {
  CMatrix h = random_hermitian(n, rng);
  const HermitianEigen e = eig_hermitian(h);
  const double scale = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  return exp_i(h, radius / scale);
}

inline CMatrix permutation_matrix(const std::vector<std::size_t>& target) {
  CMatrix p(target.size());
  for (std::size_t src = 0; src < target.size(); ++src) p(target[src], src) = 1.0;
  return p;
}

inline Word random_word(std::size_t generators, std::size_t letters, int max_exp, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, generators - 1);
  std::uniform_int_distribution<int> e(1, max_exp);
  std::bernoulli_distribution sign;
  Word w;
  for (std::size_t i = 0; i < letters; ++i) w.letters.push_back({pick(rng), sign(rng) ? e(rng) : -e(rng)});
  return w;
}

/// Random word followed by a shuffled copy of its inverse letters: every
/// exponent sum vanishes.
inline Word random_homogeneous_word(std::size_t generators, std::size_t letters, std::mt19937_64& rng) {
  Word w = random_word(generators, letters, 2, rng);
  std::vector<Letter> tail;
  for (const Letter& l : w.letters) tail.push_back({l.generator, -l.exponent});
  std::shuffle(tail.begin(), tail.end(), rng);
  w.letters.insert(w.letters.end(), tail.begin(), tail.end());
  return w;
}

}  // namespace stablab::testing

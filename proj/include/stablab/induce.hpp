#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/linalg.hpp"
#include "stablab/relator.hpp"

namespace stablab {

/// g g_i = g_{target} h for one G-generator g and coset i.
struct CosetMove {
  std::size_t target = 0;  ///< 0-based coset index
  Word h_word;             ///< over the H generators
};

/// Left action of G's generators on the cosets G/H, with the H-elements
/// picked up along the way. Cosets are 0-based internally and 1-based in
/// the file format.
struct CosetAction {
  std::size_t index = 0;
  std::vector<std::string> g_generators;
  std::vector<std::string> h_generators;
  /// table[g][i]
  std::vector<std::vector<CosetMove>> table;

  /// Throws DomainError unless every row is a permutation of the cosets and
  /// every h_word only uses H generators.
  void validate() const;
};

/// Matrices for the generators of H.
struct SubgroupRep {
  std::vector<std::string> generators;
  std::vector<CMatrix> matrices;
  double unitarity_tol = 1e-8;

  std::size_t dim() const noexcept { return matrices.empty() ? 0 : matrices.front().dim(); }
  UnitaryTuple as_tuple() const;
};

/// Coset permutation and accumulated H-word of a G-word: for each coset i,
/// w g_i = g_{target} h.
std::vector<CosetMove> compose_action(const CosetAction& action, const Word& g_word);

/// Induced matrix of a G-word: block (target(i), i) holds the rep's value
/// on the accumulated H-word. A single letter of exponent +1 uses the table
/// word verbatim and exponent -1 its conjugate transpose; longer words
/// freely reduce the concatenated H-word first.
CMatrix induce_element(const SubgroupRep& rep, const CosetAction& action, const Word& g_word);

/// ||Ind(g g') - Ind(g) Ind(g')||
double induce_defect(const SubgroupRep& rep, const CosetAction& action, const Word& g, const Word& g_prime);

/// File format:
///   index: N
///   act: <g-gen> <i> -> <j> ; <h-word or "e">
/// G generators are taken in order of first appearance.
CosetAction parse_coset_action(std::string_view text, std::vector<std::string> h_generators);

/// File format:
///   gens: h1 h2
///   matrix: h1
///   cmatrix <k> ...
SubgroupRep parse_subgroup_rep(std::string_view text);

}  // namespace stablab

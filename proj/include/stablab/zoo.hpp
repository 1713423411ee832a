#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablab/linalg.hpp"
#include "stablab/relator.hpp"

namespace stablab {

/// An explicit almost representation together with its presentation.
struct NamedConstruction {
  std::string family;
  int n_parameter = 0;
  Presentation presentation;
  UnitaryTuple tuple;
  /// Homogeneous relators whose winding is the obstruction.
  std::vector<Word> test_relators;
  std::vector<std::optional<int>> expected_wind;
  /// Exact scalar value of each test relator, when known in closed form.
  std::vector<std::optional<cplx>> closed_form;
  /// Relators of the presentation that the tuple satisfies exactly.
  std::vector<Word> exact_relators;
};

/// omega_n = exp(2 pi i / n)
cplx root_of_unity(int n, long power = 1);

/// Clock Omega = diag(omega^1, ..., omega^n) and cyclic shift S (1 in the
/// top-right corner and on the subdiagonal). Requires n >= 2.
std::pair<CMatrix, CMatrix> voiculescu(int n);

/// Z^2 = <a, b | [a, b]> with (Omega_n, S_n); wind 1.
NamedConstruction voiculescu_family(int n);

NamedConstruction wallpaper_p2(int n);
NamedConstruction wallpaper_p3(int n);
NamedConstruction wallpaper_p4(int n);
NamedConstruction wallpaper_p6(int n);

/// Genus-g surface group with a_1 -> Omega_n, b_1 -> S_n, others -> 1.
NamedConstruction surface(int g, int n);

/// a -> Omega_n, b -> S_n with relator a^m b a^-m b^-1 (BS(m,m) with b as
/// the stable letter). Requires n > 2|m|.
NamedConstruction bs_mm(int m, int n);

/// Slice a -> A_l, s -> S_l, b -> B_l of a 2-step nilpotent presentation;
/// test relator [b, s] with wind -1. Requires odd l >= 3, M != 0.
NamedConstruction nilpotent(int m_coefficient, int l);

/// a -> v~_n v_n, b -> u_n on C^{6n}. No homogeneous test relator: the
/// presentation carries the decaying relator a b^3 a^-1 b^-2.
NamedConstruction bs23(int n);

/// Debug family: identity matrices for <a, b | [a, b]>.
NamedConstruction identity_family(int n);

struct Bs23Matrices {
  CMatrix u;        ///< diag(exp(2 pi i k / 6n)), k = 0..6n-1
  CMatrix v;        ///< permutation from the six index rules
  CMatrix v_tilde;  ///< rotation on span{e_0, e_3n}
};

Bs23Matrices bs23_matrices(int n);

/// Target index of v_n e_k, for k = 0..6n-1.
std::vector<std::size_t> bs23_permutation(int n);

/// The relator printed with the group, a b^2 a^-1 b^-3.
Word bs23_stated_relator();
/// Its mirror a b^3 a^-1 b^-2, which the construction approximately satisfies.
Word bs23_mirror_relator();
/// h0 = [a b a^-1, b].
Word bs23_h0();

/// ||[pi(a) pi(b) pi(a)^-1, pi(b)] - 1||, at least sqrt(3).
double bs23_commutator_gap(int n);

/// Additive commutator [pi(a b a^-1), pi(b)] restricted to span{e_0, e_3n}.
CMatrix bs23_restricted_commutator(int n);

/// Parameters for build_family. `n` is the size parameter of every family
/// (l for the nilpotent family).
struct FamilyParams {
  int n = 10;
  int m = 1;  ///< bs_mm exponent
  int g = 1;  ///< surface genus
  int M = 1;  ///< nilpotent structure constant
};

/// Registry: voiculescu, p2, p3, p4, p6, surface, bs_mm, nilpotent, bs23,
/// identity.
const std::vector<std::string>& family_names();

/// Throws DomainError for an unknown name or invalid parameters.
NamedConstruction build_family(const std::string& name, const FamilyParams& params);

}  // namespace stablab

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablab/relator.hpp"

namespace stablab {

using cplx = std::complex<double>;

/// Dimension cap for every matrix: 4096 unless STABILITY_LAB_MAX_DIM is set.
std::size_t max_dimension();

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  /// Zero matrix of dimension n (1 <= n <= max_dimension()).
  explicit CMatrix(std::size_t n);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> entries);
  static CMatrix scalar(std::size_t n, cplx value);

  std::size_t dim() const noexcept { return n_; }

  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, cplx s) { return lhs *= s; }
  friend CMatrix operator*(cplx s, CMatrix rhs) { return rhs *= s; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

  /// y = M x
  std::vector<cplx> apply(std::span<const cplx> x) const;

  /// Kronecker product M ⊗ 1_k.
  CMatrix kron_identity(std::size_t k) const;

  /// Assembles a block matrix from a square grid of equally sized blocks;
  /// a default-constructed (dim 0) block stands for zero.
  static CMatrix from_blocks(const std::vector<std::vector<CMatrix>>& blocks);

  /// Block (bi, bj) of size `block` x `block`.
  CMatrix block(std::size_t bi, std::size_t bj, std::size_t block) const;

  double frobenius_norm() const;
  double max_abs_entry() const;
  bool all_finite() const;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

/// ||A - B|| measured entrywise (max |a_ij - b_ij|).
double max_entry_distance(const CMatrix& a, const CMatrix& b);

/// Integer matrix power; negative exponents use the adjoint (unitary inputs).
CMatrix unitary_power(const CMatrix& m, int exponent);

/// Matrices assigned to the generators of a presentation.
struct UnitaryTuple {
  std::vector<CMatrix> matrices;
  std::vector<std::string> labels;
  double unitarity_tol = 1e-10;

  std::size_t size() const noexcept { return matrices.size(); }
  std::size_t dim() const noexcept { return matrices.empty() ? 0 : matrices.front().dim(); }

  /// Throws DomainError unless all matrices share one dimension, labels
  /// match in count, and each ||M*M - 1|| <= unitarity_tol.
  void validate() const;
};

/// ||M*M - 1||
double unitarity_defect(const CMatrix& m);

/// Frobenius norm of M*M - MM*, scaled by 1/max(1, ||M||_F^2).
double normality_defect(const CMatrix& m);

/// Left-to-right product of the letter powers; negative exponents use the
/// conjugate transpose. The empty word gives the identity.
CMatrix evaluate_word(const Word& w, const UnitaryTuple& t);

struct HermitianEigen {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< columns are the eigenvectors
};

/// Cyclic complex Jacobi for Hermitian input (only the upper triangle and
/// real diagonal are trusted).
HermitianEigen eig_hermitian(const CMatrix& h);

/// Eigenvalues of a normal matrix, sorted by principal argument in (-pi, pi]
/// and then by modulus.
std::vector<cplx> eig_normal(const CMatrix& m, double normality_tol = 1e-8);

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// Largest singular value by power iteration on M*M, ignoring normality.
double operator_norm_power(const CMatrix& m);

struct ArgDet {
  double arg = 0.0;            ///< in (-pi, pi]
  double log_magnitude = 0.0;  ///< log |det M|
};

/// Argument and log-modulus of det M from an LU factorization with partial
/// pivoting. Throws CurveTouchesZero if a pivot falls below 1e-300.
ArgDet arg_det(const CMatrix& m);

/// Replaces each matrix by M ⊗ 1_k.
UnitaryTuple tensor_identity(const UnitaryTuple& t, std::size_t k);

/// Principal argument normalised to (-pi, pi].
double principal_arg(cplx z);

/// Debug dump: "cmatrix <n>" followed by n rows of "re+imj" entries.
std::string dump(const CMatrix& m);

/// Parses one or more concatenated dumps.
std::vector<CMatrix> parse_dumps(std::string_view text);

}  // namespace stablab

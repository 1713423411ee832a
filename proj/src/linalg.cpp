#include "stablab/linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

#include "stablab/error.hpp"

namespace stablab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPivotFloor = 1e-300;
constexpr int kJacobiMaxSweeps = 100;
constexpr int kPowerMaxIterations = 50000;
constexpr double kPowerRelTol = 1e-12;

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

double vector_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

// sqrt(||M||_1 ||M||_inf) >= ||M||_2; used only as a scale.
double norm_scale(const CMatrix& m) {
  const std::size_t n = m.dim();
  double row_max = 0.0, col_max = 0.0;
  std::vector<double> cols(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double a = std::abs(m(i, j));
      row += a;
      cols[j] += a;
    }
    row_max = std::max(row_max, row);
  }
  for (double c : cols) col_max = std::max(col_max, c);
  return std::sqrt(row_max * col_max);
}

}  // namespace

std::size_t max_dimension() {
  if (const char* env = std::getenv("STABILITY_LAB_MAX_DIM")) {
    std::size_t value = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) return value;
  }
  return 4096;
}

CMatrix::CMatrix(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("matrix dimension must be positive");
  if (n > max_dimension()) {
    throw DomainError("matrix dimension " + std::to_string(n) + " exceeds the cap " +
                      std::to_string(max_dimension()));
  }
  data_.assign(n * n, cplx{});
}

CMatrix CMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

CMatrix CMatrix::scalar(std::size_t n, cplx value) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> entries) {
  CMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rhs.n_ != n_) throw DomainError("dimension mismatch in matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rhs.n_ != n_) throw DomainError("dimension mismatch in matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z = mul(z, s);
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.n_ != rhs.n_) throw DomainError("dimension mismatch in matrix product");
  const std::size_t n = lhs.n_;
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* row = &out.data_[i * n];
    for (std::size_t k = 0; k < n; ++k) {
      const cplx a = lhs.data_[i * n + k];
      if (a == cplx{}) continue;
      const cplx* b = &rhs.data_[k * n];
      for (std::size_t j = 0; j < n; ++j) row[j] += mul(a, b[j]);
    }
  }
  return out;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != n_) throw DomainError("dimension mismatch in matrix-vector product");
  std::vector<cplx> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    cplx s{};
    for (std::size_t j = 0; j < n_; ++j) s += mul(data_[i * n_ + j], x[j]);
    y[i] = s;
  }
  return y;
}

CMatrix CMatrix::kron_identity(std::size_t k) const {
  if (k == 0) throw DomainError("tensor factor must be positive");
  CMatrix out(n_ * k);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t d = 0; d < k; ++d) out(i * k + d, j * k + d) = (*this)(i, j);
  return out;
}

CMatrix CMatrix::from_blocks(const std::vector<std::vector<CMatrix>>& blocks) {
  const std::size_t nb = blocks.size();
  std::size_t b = 0;
  for (const auto& row : blocks) {
    if (row.size() != nb) throw DomainError("block grid must be square");
    for (const auto& blk : row) {
      if (blk.dim() == 0) continue;
      if (b != 0 && blk.dim() != b) throw DomainError("blocks must share one dimension");
      b = blk.dim();
    }
  }
  if (b == 0) throw DomainError("block grid has no non-zero block");
  CMatrix out(nb * b);
  for (std::size_t bi = 0; bi < nb; ++bi)
    for (std::size_t bj = 0; bj < nb; ++bj) {
      const CMatrix& blk = blocks[bi][bj];
      if (blk.dim() == 0) continue;
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) out(bi * b + i, bj * b + j) = blk(i, j);
    }
  return out;
}

CMatrix CMatrix::block(std::size_t bi, std::size_t bj, std::size_t block) const {
  if (block == 0 || n_ % block != 0 || (bi + 1) * block > n_ || (bj + 1) * block > n_) {
    throw DomainError("block index out of range");
  }
  CMatrix out(block);
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j) out(i, j) = (*this)(bi * block + i, bj * block + j);
  return out;
}

double CMatrix::frobenius_norm() const { return vector_norm(data_); }

double CMatrix::max_abs_entry() const {
  double m = 0.0;
  for (cplx z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double max_entry_distance(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

CMatrix unitary_power(const CMatrix& m, int exponent) {
  CMatrix base = exponent < 0 ? m.adjoint() : m;
  long e = std::labs(static_cast<long>(exponent));
  CMatrix result = CMatrix::identity(m.dim());
  // Left-to-right repeated multiplication keeps rounding identical to the
  // written product; exponents in this domain are small.
  for (long i = 0; i < e; ++i) result = result * base;
  return result;
}

void UnitaryTuple::validate() const {
  if (matrices.empty()) throw DomainError("empty matrix tuple");
  if (!labels.empty() && labels.size() != matrices.size()) {
    throw DomainError("tuple has " + std::to_string(matrices.size()) + " matrices but " +
                      std::to_string(labels.size()) + " labels");
  }
  const std::size_t n = matrices.front().dim();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].dim() != n) throw DomainError("tuple matrices differ in dimension");
    double d = unitarity_defect(matrices[i]);
    if (!(d <= unitarity_tol)) {
      throw DomainError("matrix " + (labels.empty() ? std::to_string(i) : labels[i]) +
                        " has unitarity defect " + std::to_string(d) + " above tolerance");
    }
  }
}

double unitarity_defect(const CMatrix& m) {
  return operator_norm(m.adjoint() * m - CMatrix::identity(m.dim()));
}

double normality_defect(const CMatrix& m) {
  CMatrix a = m.adjoint();
  double f = m.frobenius_norm();
  return (a * m - m * a).frobenius_norm() / std::max(1.0, f * f);
}

CMatrix evaluate_word(const Word& w, const UnitaryTuple& t) {
  if (t.matrices.empty()) throw DomainError("empty matrix tuple");
  const std::size_t n = t.dim();
  for (const auto& m : t.matrices) {
    if (m.dim() != n) throw DomainError("tuple matrices differ in dimension");
  }
  CMatrix result = CMatrix::identity(n);
  for (const Letter& l : w.letters) {
    if (l.generator >= t.size()) {
      throw DomainError("word uses generator index " + std::to_string(l.generator) + " but tuple has " +
                        std::to_string(t.size()) + " matrices");
    }
    const CMatrix& m = t.matrices[l.generator];
    if (l.exponent > 0) {
      for (int i = 0; i < l.exponent; ++i) result = result * m;
    } else {
      CMatrix inv = m.adjoint();
      for (int i = 0; i < -l.exponent; ++i) result = result * inv;
    }
  }
  return result;
}

HermitianEigen eig_hermitian(const CMatrix& h) {
  const std::size_t n = h.dim();
  CMatrix a = h;
  // Symmetrise from the upper triangle.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  }
  CMatrix v = CMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };
  const double threshold = 1e-13 * static_cast<double>(n) * std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  for (; off_norm() > threshold; ++sweep) {
    if (sweep >= kJacobiMaxSweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx beta = a(p, q);
        const double mag = std::abs(beta);
        if (mag == 0.0) continue;
        const double alpha = a(p, p).real();
        const double delta = a(q, q).real();
        // Phase-rotate to a real symmetric 2x2 block, then a real rotation.
        const cplx phase = beta / mag;
        const double theta = (delta - alpha) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s conj(phase), c conj(phase)]] acting on (p, q).
        const cplx gpp = c, gpq = s, gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = mul(akp, gpp) + mul(akq, gqp);
          a(k, q) = mul(akp, gpq) + mul(akq, gqq);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = mul(std::conj(gpp), apk) + mul(std::conj(gqp), aqk);
          a(q, k) = mul(std::conj(gpq), apk) + mul(std::conj(gqq), aqk);
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = mul(vkp, gpp) + mul(vkq, gqp);
          v(k, q) = mul(vkp, gpq) + mul(vkq, gqq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
  }
  return out;
}

std::vector<cplx> eig_normal(const CMatrix& m, double normality_tol) {
  const std::size_t n = m.dim();
  if (!m.all_finite()) throw DomainError("matrix has non-finite entries");
  const double nd = normality_defect(m);
  if (!(nd <= normality_tol)) {
    throw DomainError("matrix is not normal (defect " + std::to_string(nd) + ")");
  }
  const CMatrix madj = m.adjoint();
  CMatrix herm = (m + madj) * cplx{0.5, 0.0};
  CMatrix skew = (m - madj) * cplx{0.0, -0.5};  // (M - M*) / (2i)

  const HermitianEigen he = eig_hermitian(herm);
  const double cluster_tol = 1e-8 * std::max(norm_scale(m), 1e-300);

  std::vector<cplx> eigenvalues;
  eigenvalues.reserve(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && he.values[end] - he.values[end - 1] <= cluster_tol) ++end;
    const std::size_t c = end - start;

    // Columns start..end-1 of the H eigenbasis span an (approximately)
    // K-invariant subspace; diagonalise K there.
    std::vector<std::vector<cplx>> basis(c, std::vector<cplx>(n));
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < n; ++k) basis[j][k] = he.vectors(k, start + j);

    std::vector<std::vector<cplx>> vecs;
    if (c == 1) {
      vecs = basis;
    } else {
      std::vector<std::vector<cplx>> kb(c);
      for (std::size_t j = 0; j < c; ++j) kb[j] = skew.apply(basis[j]);
      CMatrix kc(c);
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          cplx s{};
          for (std::size_t k = 0; k < n; ++k) s += mul(std::conj(basis[i][k]), kb[j][k]);
          kc(i, j) = s;
        }
      const HermitianEigen ke = eig_hermitian(kc);
      vecs.assign(c, std::vector<cplx>(n));
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < c; ++i) {
          const cplx w = ke.vectors(i, j);
          for (std::size_t k = 0; k < n; ++k) vecs[j][k] += mul(basis[i][k], w);
        }
    }
    for (const auto& x : vecs) {
      const std::vector<cplx> mx = m.apply(x);
      cplx rq{};
      double nx = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        rq += mul(std::conj(x[k]), mx[k]);
        nx += std::norm(x[k]);
      }
      eigenvalues.push_back(rq / nx);
    }
    start = end;
  }

  std::sort(eigenvalues.begin(), eigenvalues.end(), [](cplx x, cplx y) {
    const double ax = principal_arg(x), ay = principal_arg(y);
    if (ax != ay) return ax < ay;
    return std::abs(x) < std::abs(y);
  });
  return eigenvalues;
}

double operator_norm_power(const CMatrix& m) {
  const std::size_t n = m.dim();
  const double frob = m.frobenius_norm();
  if (frob == 0.0) return 0.0;
  const CMatrix madj = m.adjoint();
  // sigma_max >= ||M||_F / sqrt(n); a converged value below this means the
  // start vector missed the dominant singular direction.
  const double lower_bound = frob / std::sqrt(static_cast<double>(n));

  auto iterate = [&](std::vector<cplx> v) {
    double lambda = 0.0;
    for (int it = 0; it < kPowerMaxIterations; ++it) {
      std::vector<cplx> w = m.apply(v);
      const double next = vector_norm(w) * vector_norm(w);
      std::vector<cplx> u = madj.apply(w);
      const double nu = vector_norm(u);
      if (nu == 0.0) return 0.0;
      for (std::size_t k = 0; k < n; ++k) v[k] = u[k] / nu;
      if (it > 0 && std::abs(next - lambda) <= kPowerRelTol * next) return std::sqrt(next);
      lambda = next;
    }
    throw NumericalError("power iteration for the operator norm did not converge");
  };

  std::vector<cplx> ones(n, cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0});
  double sigma = iterate(ones);
  if (sigma < lower_bound * (1.0 - 1e-12)) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::norm(m(i, j));
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    std::vector<cplx> e(n, cplx{});
    e[best] = 1.0;
    sigma = std::max(sigma, iterate(std::move(e)));
  }
  return sigma;
}

double operator_norm(const CMatrix& m) {
  if (normality_defect(m) <= 1e-12) {
    double r = 0.0;
    for (cplx z : eig_normal(m, 1e-12)) r = std::max(r, std::abs(z));
    return r;
  }
  return operator_norm_power(m);
}

double principal_arg(cplx z) {
  double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

ArgDet arg_det(const CMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<cplx> lu(m.data().begin(), m.data().end());
  double arg_sum = 0.0;
  double log_sum = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(lu[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double a = std::abs(lu[r * n + col]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (!(best >= kPivotFloor)) {
      throw CurveTouchesZero("matrix is singular to the pivot floor at column " + std::to_string(col));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[piv * n + j], lu[col * n + j]);
      arg_sum += kPi;
    }
    const cplx pivot = lu[col * n + col];
    arg_sum += std::arg(pivot);
    log_sum += std::log(best);
    const cplx inv = 1.0 / pivot;
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = mul(lu[r * n + col], inv);
      if (f == cplx{}) continue;
      lu[r * n + col] = f;
      for (std::size_t j = col + 1; j < n; ++j) lu[r * n + j] -= mul(f, lu[col * n + j]);
    }
  }
  double arg = std::remainder(arg_sum, 2.0 * kPi);
  if (arg <= -kPi) arg += 2.0 * kPi;
  return {arg, log_sum};
}

UnitaryTuple tensor_identity(const UnitaryTuple& t, std::size_t k) {
  if (k == 0) throw DomainError("tensor factor must be positive");
  UnitaryTuple out;
  out.labels = t.labels;
  out.unitarity_tol = t.unitarity_tol;
  for (const auto& m : t.matrices) out.matrices.push_back(m.kron_identity(k));
  return out;
}

namespace {

void append_double(std::string& out, double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  out.append(buf, ptr);
}

}  // namespace

std::string dump(const CMatrix& m) {
  std::string out = "cmatrix " + std::to_string(m.dim()) + "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ' ';
      const cplx z = m(i, j);
      append_double(out, z.real());
      out += std::signbit(z.imag()) ? '-' : '+';
      append_double(out, std::abs(z.imag()));
      out += 'j';
    }
    out += '\n';
  }
  return out;
}

std::vector<CMatrix> parse_dumps(std::string_view text) {
  std::vector<CMatrix> out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  };
  auto read_double = [&](double& x) {
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), x);
    if (ec != std::errc()) throw ParseError("expected a real number", pos);
    pos = static_cast<std::size_t>(ptr - text.data());
  };
  skip_ws();
  while (pos < text.size()) {
    if (text.substr(pos, 7) != "cmatrix") throw ParseError("expected 'cmatrix' header", pos);
    pos += 7;
    skip_ws();
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), n);
    if (ec != std::errc() || n == 0) throw ParseError("expected a positive dimension", pos);
    pos = static_cast<std::size_t>(ptr - text.data());
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        skip_ws();
        double re = 0.0, im = 0.0;
        read_double(re);
        if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) {
          throw ParseError("expected '+' or '-' before the imaginary part", pos);
        }
        const bool neg = text[pos] == '-';
        ++pos;
        read_double(im);
        if (pos >= text.size() || text[pos] != 'j') throw ParseError("expected 'j'", pos);
        ++pos;
        m(i, j) = cplx{re, neg ? -im : im};
      }
    if (!m.all_finite()) throw ParseError("non-finite matrix entry", pos);
    out.push_back(std::move(m));
    skip_ws();
  }
  return out;
}

}  // namespace stablab

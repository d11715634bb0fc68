#include "alphatoep/core.hpp"

#include <cmath>
#include <sstream>

namespace alphatoep {

MultiIndex ones(int d) { return MultiIndex(std::vector<long long>(static_cast<size_t>(d), 1)); }
MultiIndex zeros(int d) { return MultiIndex(std::vector<long long>(static_cast<size_t>(d), 0)); }

long long product(const MultiIndex& n) {
  long long p = 1;
  for (long long e : n.v) p *= e;
  return p;
}

bool all_positive(const MultiIndex& n) {
  for (long long e : n.v)
    if (e <= 0) return false;
  return true;
}

bool all_nonnegative(const MultiIndex& n) {
  for (long long e : n.v)
    if (e < 0) return false;
  return true;
}

long long lex_rank(const MultiIndex& idx, const MultiIndex& n) {
  if (idx.dims() != n.dims()) throw std::domain_error("lex_rank: dimension mismatch");
  long long pos = 0;
  for (int k = 0; k < n.dims(); ++k) {
    if (idx[k] < 0 || idx[k] >= n[k]) throw std::domain_error("lex_rank: index component out of range");
    pos = pos * n[k] + idx[k];
  }
  return pos;
}

MultiIndex lex_unrank(long long pos, const MultiIndex& n) {
  if (pos < 0 || pos >= product(n)) throw std::domain_error("lex_unrank: position out of range");
  MultiIndex idx = zeros(n.dims());
  for (int k = n.dims() - 1; k >= 0; --k) {
    idx[k] = pos % n[k];
    pos /= n[k];
  }
  return idx;
}

MultiIndex mod_vec(const MultiIndex& r, const MultiIndex& n) {
  if (r.dims() != n.dims()) throw std::domain_error("mod_vec: dimension mismatch");
  MultiIndex out = r;
  for (int k = 0; k < n.dims(); ++k) {
    if (n[k] <= 0) throw std::domain_error("mod_vec: nonpositive modulus");
    long long m = r[k] % n[k];
    if (m < 0) m += n[k];
    out[k] = m;
  }
  return out;
}

MultiIndex hadamard(const MultiIndex& a, const MultiIndex& b) {
  if (a.dims() != b.dims()) throw std::domain_error("hadamard: dimension mismatch");
  MultiIndex out = a;
  for (int k = 0; k < a.dims(); ++k) out[k] = a[k] * b[k];
  return out;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.dims() != b.dims()) throw std::domain_error("add: dimension mismatch");
  MultiIndex out = a;
  for (int k = 0; k < a.dims(); ++k) out[k] = a[k] + b[k];
  return out;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  if (a.dims() != b.dims()) throw std::domain_error("sub: dimension mismatch");
  MultiIndex out = a;
  for (int k = 0; k < a.dims(); ++k) out[k] = a[k] - b[k];
  return out;
}

bool next_in_box(MultiIndex& idx, const MultiIndex& n) {
  for (int k = n.dims() - 1; k >= 0; --k) {
    if (++idx[k] < n[k]) return true;
    idx[k] = 0;
  }
  return false;
}

std::string to_string(const MultiIndex& m) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < m.dims(); ++k) {
    if (k) os << ",";
    os << m[k];
  }
  os << ")";
  return os.str();
}

DenseMatrix DenseMatrix::identity(long long n) {
  DenseMatrix I(n, n);
  for (long long i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

DenseMatrix DenseMatrix::conj_transpose() const {
  DenseMatrix out(cols_, rows_);
  for (long long r = 0; r < rows_; ++r)
    for (long long c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (long long r = 0; r < rows_; ++r)
    for (long long c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdbl& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (const cdbl& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool DenseMatrix::all_finite() const {
  for (const cdbl& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::domain_error("matrix product: inner dimension mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (long long i = 0; i < a.rows(); ++i)
    for (long long k = 0; k < a.cols(); ++k) {
      const cdbl aik = a(i, k);
      if (aik == cdbl{}) continue;
      for (long long j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::domain_error("matrix sum: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (long long r = 0; r < a.rows(); ++r)
    for (long long c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::domain_error("matrix difference: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (long long r = 0; r < a.rows(); ++r)
    for (long long c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw std::domain_error("hconcat: row count mismatch");
  DenseMatrix out(a.rows(), a.cols() + b.cols());
  for (long long r = 0; r < a.rows(); ++r) {
    for (long long c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (long long c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long long i = 0; i < a.rows(); ++i)
    for (long long j = 0; j < a.cols(); ++j) {
      const cdbl aij = a(i, j);
      if (aij == cdbl{}) continue;
      for (long long r = 0; r < b.rows(); ++r)
        for (long long c = 0; c < b.cols(); ++c) out(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
    }
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::domain_error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (long long r = 0; r < a.rows(); ++r)
    for (long long c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::AlphaCirculant: return "alpha-circulant";
    case MatrixKind::AlphaToeplitz: return "alpha-toeplitz";
    case MatrixKind::Circulant: return "circulant";
    case MatrixKind::Toeplitz: return "toeplitz";
    case MatrixKind::Shift: return "shift";
    case MatrixKind::Fourier: return "fourier";
    case MatrixKind::Other: return "other";
  }
  return "other";
}

}  // namespace alphatoep

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alphatoep {

using cdbl = std::complex<double>;

/// d-dimensional integer vector used for level sizes n, shift vectors alpha
/// and Fourier indices. Entries may be negative when used as Fourier indices.
struct MultiIndex {
  std::vector<long long> v;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<long long> entries) : v(std::move(entries)) {}
  MultiIndex(std::initializer_list<long long> entries) : v(entries) {}

  int dims() const { return static_cast<int>(v.size()); }
  long long operator[](int k) const { return v[static_cast<size_t>(k)]; }
  long long& operator[](int k) { return v[static_cast<size_t>(k)]; }

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex ones(int d);
MultiIndex zeros(int d);

/// Product of the entries (written n-hat for a size vector n).
long long product(const MultiIndex& n);

bool all_positive(const MultiIndex& n);
bool all_nonnegative(const MultiIndex& n);

/// Row-major linear position of idx in the box [0,n); the last level varies
/// fastest. Bijective onto {0,...,product(n)-1}.
long long lex_rank(const MultiIndex& idx, const MultiIndex& n);

/// Inverse of lex_rank.
MultiIndex lex_unrank(long long pos, const MultiIndex& n);

/// Componentwise mathematical modulus: every component lands in [0, n_k-1],
/// also for negative inputs.
MultiIndex mod_vec(const MultiIndex& r, const MultiIndex& n);

/// Componentwise product.
MultiIndex hadamard(const MultiIndex& a, const MultiIndex& b);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);

/// Odometer step through the box [0,n), last level fastest. Returns false
/// once idx has wrapped back to zero (i.e. after the last element).
bool next_in_box(MultiIndex& idx, const MultiIndex& n);

std::string to_string(const MultiIndex& m);

/// Minimal dense complex matrix, row-major storage.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(long long rows, long long cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw std::domain_error("DenseMatrix: negative dimension");
  }

  static DenseMatrix identity(long long n);

  long long rows() const { return rows_; }
  long long cols() const { return cols_; }

  cdbl& operator()(long long r, long long c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  cdbl operator()(long long r, long long c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

  const std::vector<cdbl>& data() const { return data_; }

  DenseMatrix conj_transpose() const;
  DenseMatrix transpose() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  long long rows_ = 0, cols_ = 0;
  std::vector<cdbl> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Horizontal concatenation [a|b].
DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b);

/// Kronecker product.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Max-entry absolute difference; dimensions must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

enum class MatrixKind {
  AlphaCirculant,
  AlphaToeplitz,
  Circulant,
  Toeplitz,
  Shift,
  Fourier,
  Other,
};

std::string to_string(MatrixKind kind);

/// Dense matrix plus the structural metadata of its construction.
struct StructuredMatrix {
  DenseMatrix matrix;
  MatrixKind kind = MatrixKind::Other;
  MultiIndex n;                      // level sizes; matrix is square of size product(n) for square kinds
  std::optional<MultiIndex> alpha;   // shift vector, when applicable
};

}  // namespace alphatoep

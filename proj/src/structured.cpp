#include "alphatoep/structured.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace alphatoep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_sizes(const MultiIndex& n, const char* where) {
  if (n.dims() < 1 || !all_positive(n)) throw std::domain_error(std::string(where) + ": sizes must be >= 1");
}

}  // namespace

long long reduce_alpha(long long alpha, long long n) {
  if (n < 1) throw std::domain_error("reduce_alpha: n must be >= 1");
  if (alpha < 0) throw std::domain_error("reduce_alpha: alpha must be >= 0");
  return alpha % n;
}

GcdData gcd_data(long long n, long long alpha) {
  if (n < 1) throw std::domain_error("gcd_data: n must be >= 1");
  if (alpha < 1) throw std::domain_error("gcd_data: alpha must be >= 1 (zero shifts use the degenerate reduction)");
  GcdData d{};
  d.g = std::gcd(n, alpha);
  d.n_alpha = n / d.g;
  d.alpha_check = alpha / d.g;
  d.mu_alpha = (n + alpha - 1) / alpha;
  d.d_tail = std::max(alpha * n, (alpha - 1) * (n - 1) + 3);
  return d;
}

DenseMatrix shift_full(const MultiIndex& n, const MultiIndex& alpha) {
  require_positive_sizes(n, "shift_full");
  if (alpha.dims() != n.dims() || !all_nonnegative(alpha))
    throw std::domain_error("shift_full: alpha must be a nonnegative vector of matching dimension");
  const long long nh = product(n);
  DenseMatrix Z(nh, nh);
  // Column s carries a single 1 in every level-consistent row r with
  // r = alpha o s (mod n) componentwise.
  MultiIndex s = zeros(n.dims());
  do {
    MultiIndex r = mod_vec(hadamard(alpha, s), n);
    Z(lex_rank(r, n), lex_rank(s, n)) = 1.0;
  } while (next_in_box(s, n));
  return Z;
}

DenseMatrix shift_matrix(const ShiftPattern& p) {
  if (p.variant == ShiftVariant::Full) return shift_full(p.n, p.alpha);
  if (p.n.dims() != 1 || p.alpha.dims() != 1)
    throw std::domain_error("shift_matrix: column-restricted variants are one-level");
  const long long n = p.n[0];
  const long long alpha = p.alpha[0];
  long long ncols = p.ncols;
  if (ncols < 0) {
    GcdData d = gcd_data(n, alpha);
    if (p.variant == ShiftVariant::FirstNalpha) ncols = d.n_alpha;
    else if (p.variant == ShiftVariant::FirstMu) ncols = d.mu_alpha;
    else throw std::domain_error("shift_matrix: TailCols requires an explicit column count");
  }
  if (ncols > n) throw std::domain_error("shift_matrix: column count exceeds matrix size");
  DenseMatrix Z(n, ncols);
  for (long long s = 0; s < ncols; ++s) {
    long long r = (alpha * s) % n;
    Z(r, s) = 1.0;
  }
  return Z;
}

DenseMatrix shift_tilde(long long n, long long alpha) {
  return shift_matrix({MultiIndex{n}, MultiIndex{alpha}, ShiftVariant::FirstNalpha, -1});
}

DenseMatrix shift_hat(long long n, long long alpha) {
  return shift_matrix({MultiIndex{n}, MultiIndex{alpha}, ShiftVariant::FirstMu, -1});
}

DenseMatrix shift_tail(long long size, long long alpha, long long ncols) {
  return shift_matrix({MultiIndex{size}, MultiIndex{alpha}, ShiftVariant::TailCols, ncols});
}

DenseMatrix fourier_matrix(const MultiIndex& n) {
  require_positive_sizes(n, "fourier_matrix");
  const long long nh = product(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nh));
  DenseMatrix F(nh, nh);
  MultiIndex r = zeros(n.dims());
  long long rp = 0;
  do {
    MultiIndex s = zeros(n.dims());
    long long sp = 0;
    do {
      double phase = 0.0;
      for (int k = 0; k < n.dims(); ++k)
        phase -= kTwoPi * static_cast<double>(r[k]) * static_cast<double>(s[k]) / static_cast<double>(n[k]);
      F(rp, sp) = scale * std::polar(1.0, phase);
      ++sp;
    } while (next_in_box(s, n));
    ++rp;
  } while (next_in_box(r, n));
  return F;
}

StructuredMatrix circulant(const std::vector<cdbl>& a, const MultiIndex& n) {
  StructuredMatrix out = alpha_circulant(a, n, ones(n.dims()));
  out.kind = MatrixKind::Circulant;
  return out;
}

StructuredMatrix alpha_circulant(const std::vector<cdbl>& a, const MultiIndex& n, const MultiIndex& alpha) {
  require_positive_sizes(n, "alpha_circulant");
  if (alpha.dims() != n.dims() || !all_nonnegative(alpha))
    throw std::domain_error("alpha_circulant: alpha must be a nonnegative vector of matching dimension");
  const long long nh = product(n);
  if (static_cast<long long>(a.size()) != nh) throw std::domain_error("alpha_circulant: coefficient count != product(n)");
  StructuredMatrix out;
  out.kind = MatrixKind::AlphaCirculant;
  out.n = n;
  out.alpha = alpha;
  out.matrix = DenseMatrix(nh, nh);
  MultiIndex r = zeros(n.dims());
  long long rp = 0;
  do {
    MultiIndex s = zeros(n.dims());
    long long sp = 0;
    do {
      MultiIndex idx = mod_vec(sub(r, hadamard(alpha, s)), n);
      out.matrix(rp, sp) = a[static_cast<size_t>(lex_rank(idx, n))];
      ++sp;
    } while (next_in_box(s, n));
    ++rp;
  } while (next_in_box(r, n));
  if (!out.matrix.all_finite()) throw std::runtime_error("alpha_circulant: non-finite entries");
  return out;
}

StructuredMatrix alpha_toeplitz(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha) {
  require_positive_sizes(n, "alpha_toeplitz");
  if (alpha.dims() != n.dims() || !all_nonnegative(alpha))
    throw std::domain_error("alpha_toeplitz: alpha must be a nonnegative vector of matching dimension");
  if (s.d != n.dims()) throw std::domain_error("alpha_toeplitz: symbol dimension mismatch");
  const long long nh = product(n);
  StructuredMatrix out;
  out.kind = MatrixKind::AlphaToeplitz;
  out.n = n;
  out.alpha = alpha;
  out.matrix = DenseMatrix(nh, nh);
  MultiIndex r = zeros(n.dims());
  long long rp = 0;
  do {
    MultiIndex c = zeros(n.dims());
    long long cp = 0;
    do {
      out.matrix(rp, cp) = s.get(sub(r, hadamard(alpha, c)));
      ++cp;
    } while (next_in_box(c, n));
    ++rp;
  } while (next_in_box(r, n));
  if (!out.matrix.all_finite()) throw std::runtime_error("alpha_toeplitz: non-finite entries");
  return out;
}

StructuredMatrix toeplitz(const SymbolSpec& s, const MultiIndex& n) {
  StructuredMatrix out = alpha_toeplitz(s, n, ones(n.dims()));
  out.kind = MatrixKind::Toeplitz;
  return out;
}

StructuredMatrix circulant_from_symbol(const SymbolSpec& s, const MultiIndex& n) {
  return circulant(wrap_coeffs(s, n), n);
}

FourierShiftResidual verify_fourier_shift_identity(long long n, long long alpha) {
  if (alpha < 1 || alpha >= n) throw std::domain_error("verify_fourier_shift_identity: requires 1 <= alpha < n");
  GcdData d = gcd_data(n, alpha);

  DenseMatrix Ztilde = shift_tilde(n, alpha);
  DenseMatrix lhs = fourier_matrix(MultiIndex{n}) * Ztilde;

  // Stacked identity blocks, g copies of I_{n_alpha}.
  DenseMatrix stacked(n, d.n_alpha);
  for (long long b = 0; b < d.g; ++b)
    for (long long i = 0; i < d.n_alpha; ++i) stacked(b * d.n_alpha + i, i) = 1.0;
  DenseMatrix rhs = stacked * (fourier_matrix(MultiIndex{d.n_alpha}) * shift_full(MultiIndex{d.n_alpha}, MultiIndex{d.alpha_check}));
  const double inv_sqrt_g = 1.0 / std::sqrt(static_cast<double>(d.g));
  for (long long r = 0; r < rhs.rows(); ++r)
    for (long long c = 0; c < rhs.cols(); ++c) rhs(r, c) *= inv_sqrt_g;

  FourierShiftResidual res{};
  res.refinement = max_abs_diff(lhs, rhs);
  res.factorization =
      max_abs_diff(Ztilde, shift_tilde(n, d.g) * shift_full(MultiIndex{d.n_alpha}, MultiIndex{d.alpha_check}));
  return res;
}

ToeplitzSplit toeplitz_tail_split(const SymbolSpec& s, long long n, long long alpha) {
  if (alpha < 1) throw std::domain_error("toeplitz_tail_split: alpha must be >= 1");
  if (s.d != 1) throw std::domain_error("toeplitz_tail_split: one-level only");
  GcdData d = gcd_data(n, alpha);
  ToeplitzSplit out;
  out.head = toeplitz(s, MultiIndex{n}).matrix * shift_hat(n, alpha);
  out.tail = DenseMatrix(n, n - d.mu_alpha);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n - d.mu_alpha; ++c) out.tail(r, c) = s.get(MultiIndex{r - alpha * (c + d.mu_alpha)});
  return out;
}

TailEmbeddingResidual tail_embedding(const SymbolSpec& s, long long n, long long alpha, long long d_tail) {
  if (alpha < 1) throw std::domain_error("tail_embedding: alpha must be >= 1");
  if (s.d != 1) throw std::domain_error("tail_embedding: one-level only");
  if (d_tail <= (alpha - 1) * (n - 1) + 2)
    throw std::domain_error("tail_embedding: d_tail must exceed (alpha-1)(n-1)+2");
  GcdData d = gcd_data(n, alpha);
  const long long tail_cols = n - d.mu_alpha;

  TailEmbeddingResidual res{0.0, 0.0};

  // Size-d_tail Toeplitz holding every tail coefficient, entries a_{r-c-d_tail+1}.
  DenseMatrix Td(d_tail, d_tail);
  for (long long r = 0; r < d_tail; ++r)
    for (long long c = 0; c < d_tail; ++c) Td(r, c) = s.get(MultiIndex{r - c - d_tail + 1});

  // Flip times Hankel factorization.
  DenseMatrix J(d_tail, d_tail);
  for (long long r = 0; r < d_tail; ++r) J(r, d_tail - 1 - r) = 1.0;
  DenseMatrix H(d_tail, d_tail);
  for (long long r = 0; r < d_tail; ++r)
    for (long long c = 0; c < d_tail; ++c) H(r, c) = s.get(MultiIndex{-r - c});
  res.flip = max_abs_diff(Td, J * H);

  if (tail_cols == 0) return res;  // empty tail (alpha = 1): nothing to embed

  DenseMatrix tail = toeplitz_tail_split(s, n, alpha).tail;

  // Row selector [0 | I_n | 0] with offset d_tail - alpha*mu_alpha - 1.
  const long long offset = d_tail - alpha * d.mu_alpha - 1;
  if (offset < 0) throw std::domain_error("tail_embedding: d_tail too small for the row selector");
  DenseMatrix selector(n, d_tail);
  for (long long r = 0; r < n; ++r) selector(r, r + offset) = 1.0;

  DenseMatrix rhs = selector * (Td * shift_tail(d_tail, alpha, tail_cols));
  res.embedding = max_abs_diff(tail, rhs);
  return res;
}

StructuredMatrix permute_levels(const StructuredMatrix& A, const std::vector<int>& perm) {
  const int d = A.n.dims();
  if (static_cast<int>(perm.size()) != d) throw std::domain_error("permute_levels: permutation length mismatch");
  std::vector<bool> seen(static_cast<size_t>(d), false);
  for (int p : perm) {
    if (p < 0 || p >= d || seen[static_cast<size_t>(p)]) throw std::domain_error("permute_levels: invalid permutation");
    seen[static_cast<size_t>(p)] = true;
  }
  const long long nh = product(A.n);
  if (A.matrix.rows() != nh || A.matrix.cols() != nh)
    throw std::domain_error("permute_levels: matrix is not square of size product(n)");

  MultiIndex new_n = zeros(d);
  for (int k = 0; k < d; ++k) new_n[k] = A.n[perm[static_cast<size_t>(k)]];

  // rank map: position of each old multi-index under the new level order
  std::vector<long long> new_pos(static_cast<size_t>(nh));
  MultiIndex r = zeros(d);
  long long rp = 0;
  do {
    MultiIndex rperm = zeros(d);
    for (int k = 0; k < d; ++k) rperm[k] = r[perm[static_cast<size_t>(k)]];
    new_pos[static_cast<size_t>(rp++)] = lex_rank(rperm, new_n);
  } while (next_in_box(r, A.n));

  StructuredMatrix out;
  out.kind = A.kind;
  out.n = new_n;
  if (A.alpha) {
    MultiIndex na = zeros(d);
    for (int k = 0; k < d; ++k) na[k] = (*A.alpha)[perm[static_cast<size_t>(k)]];
    out.alpha = na;
  }
  out.matrix = DenseMatrix(nh, nh);
  for (long long i = 0; i < nh; ++i)
    for (long long j = 0; j < nh; ++j)
      out.matrix(new_pos[static_cast<size_t>(i)], new_pos[static_cast<size_t>(j)]) = A.matrix(i, j);
  return out;
}

}  // namespace alphatoep

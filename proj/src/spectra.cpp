#include "alphatoep/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "alphatoep/structured.hpp"

namespace alphatoep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSvdSweeps = 60;
constexpr int kMaxEigSweeps = 100;

void sort_descending(std::vector<double>& v) { std::sort(v.begin(), v.end(), std::greater<double>()); }

SpectrumResult finalize(std::vector<double> values, long long structural_zeros, Provenance prov) {
  for (double& v : values)
    if (v < 0.0) v = 0.0;  // round-off guard; closed forms are sqrt of sums of squares
  sort_descending(values);
  return SpectrumResult{std::move(values), structural_zeros, prov};
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Oracle: return "oracle";
    case Provenance::Reduction: return "reduction";
  }
  return "oracle";
}

std::vector<cdbl> circulant_eigs(const std::vector<cdbl>& a, long long n) {
  if (static_cast<long long>(a.size()) != n) throw std::domain_error("circulant_eigs: coefficient count != n");
  std::vector<cdbl> eigs(static_cast<size_t>(n));
  for (long long j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    cdbl acc{};
    for (long long k = 0; k < n; ++k) acc += a[static_cast<size_t>(k)] * std::polar(1.0, static_cast<double>(k) * t);
    eigs[static_cast<size_t>(j)] = acc;
  }
  return eigs;
}

std::vector<cdbl> multilevel_circulant_eigs(const std::vector<cdbl>& a, const MultiIndex& n) {
  const long long nh = product(n);
  if (static_cast<long long>(a.size()) != nh)
    throw std::domain_error("multilevel_circulant_eigs: coefficient count != product(n)");
  std::vector<cdbl> eigs(static_cast<size_t>(nh));
  MultiIndex k = zeros(n.dims());
  long long kp = 0;
  do {
    cdbl acc{};
    MultiIndex j = zeros(n.dims());
    long long jp = 0;
    do {
      double phase = 0.0;
      for (int l = 0; l < n.dims(); ++l)
        phase += kTwoPi * static_cast<double>(j[l]) * static_cast<double>(k[l]) / static_cast<double>(n[l]);
      acc += a[static_cast<size_t>(jp++)] * std::polar(1.0, phase);
    } while (next_in_box(j, n));
    eigs[static_cast<size_t>(kp++)] = acc;
  } while (next_in_box(k, n));
  return eigs;
}

DiagonalFold diagonal_fold(const std::vector<cdbl>& a, long long n, long long alpha) {
  const long long ar = reduce_alpha(alpha, n);
  if (ar == 0) throw std::domain_error("diagonal_fold: alpha reduces to zero mod n");
  GcdData g = gcd_data(n, ar);
  // D_n = diag(sqrt(n) F_n^* a), per the defining matrix product.
  DenseMatrix Fs = fourier_matrix(MultiIndex{n}).conj_transpose();
  DiagonalFold out;
  out.g = g.g;
  out.n_alpha = g.n_alpha;
  out.d_values.resize(static_cast<size_t>(n));
  const double scale = std::sqrt(static_cast<double>(n));
  for (long long s = 0; s < n; ++s) {
    cdbl acc{};
    for (long long k = 0; k < n; ++k) acc += Fs(s, k) * a[static_cast<size_t>(k)];
    out.d_values[static_cast<size_t>(s)] = std::norm(scale * acc);
  }
  return out;
}

SpectrumResult alpha_circulant_singvals(const std::vector<cdbl>& a, long long n, long long alpha) {
  if (static_cast<long long>(a.size()) != n) throw std::domain_error("alpha_circulant_singvals: coefficient count != n");
  const long long ar = reduce_alpha(alpha, n);
  if (ar == 0) {
    return zero_alpha_reduction(symbol_from_box_array(a, MultiIndex{n}), MultiIndex{n}, MultiIndex{0},
                                MatrixKind::AlphaCirculant);
  }
  DiagonalFold f = diagonal_fold(a, n, ar);
  std::vector<double> vals(static_cast<size_t>(n), 0.0);
  for (long long j = 0; j < f.n_alpha; ++j) {
    double sum = 0.0;
    for (long long l = 0; l < f.g; ++l) sum += f.d_values[static_cast<size_t>(l * f.n_alpha + j)];
    vals[static_cast<size_t>(j)] = std::sqrt(sum);
  }
  return finalize(std::move(vals), n - f.n_alpha, Provenance::ClosedForm);
}

SpectrumResult alpha_circulant_singvals_symbol(const std::vector<cdbl>& a, long long n, long long alpha) {
  if (static_cast<long long>(a.size()) != n)
    throw std::domain_error("alpha_circulant_singvals_symbol: coefficient count != n");
  const long long ar = reduce_alpha(alpha, n);
  if (ar == 0) {
    return zero_alpha_reduction(symbol_from_box_array(a, MultiIndex{n}), MultiIndex{n}, MultiIndex{0},
                                MatrixKind::AlphaCirculant);
  }
  GcdData g = gcd_data(n, ar);
  auto p_sq = [&](double t) {
    cdbl acc{};
    for (long long k = 0; k < n; ++k) acc += a[static_cast<size_t>(k)] * std::polar(1.0, static_cast<double>(k) * t);
    return std::norm(acc);
  };
  std::vector<double> vals(static_cast<size_t>(n), 0.0);
  for (long long j = 0; j < g.n_alpha; ++j) {
    const double xj = kTwoPi * static_cast<double>(j) / static_cast<double>(g.n_alpha);
    double sum = 0.0;
    for (long long l = 0; l < g.g; ++l)
      sum += p_sq((xj + kTwoPi * static_cast<double>(l)) / static_cast<double>(g.g));
    vals[static_cast<size_t>(j)] = std::sqrt(sum);
  }
  return finalize(std::move(vals), n - g.n_alpha, Provenance::ClosedForm);
}

SpectrumResult svd_oracle(const DenseMatrix& A) {
  if (!A.all_finite()) throw std::domain_error("svd_oracle: non-finite entries");
  // Work on the tall orientation; singular values are shared with the
  // conjugate transpose.
  const bool wide = A.rows() < A.cols();
  const DenseMatrix& src = A;
  const long long m = wide ? A.cols() : A.rows();
  const long long k = wide ? A.rows() : A.cols();

  // Column-major working copy for cache-friendly column sweeps.
  std::vector<std::vector<cdbl>> col(static_cast<size_t>(k), std::vector<cdbl>(static_cast<size_t>(m)));
  for (long long j = 0; j < k; ++j)
    for (long long i = 0; i < m; ++i)
      col[static_cast<size_t>(j)][static_cast<size_t>(i)] = wide ? std::conj(src(j, i)) : src(i, j);

  std::vector<double> norm2(static_cast<size_t>(k), 0.0);
  double frob2 = 0.0;
  for (long long j = 0; j < k; ++j) {
    double s = 0.0;
    for (const cdbl& z : col[static_cast<size_t>(j)]) s += std::norm(z);
    norm2[static_cast<size_t>(j)] = s;
    frob2 += s;
  }
  // Columns at round-off scale are deflated: rotating noise against noise
  // never satisfies a relative threshold.
  const double negligible2 = frob2 * 1e-30;

  bool converged = (k <= 1 || frob2 == 0.0);
  for (int sweep = 0; sweep < kMaxSvdSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (long long i = 0; i + 1 < k; ++i) {
      for (long long j = i + 1; j < k; ++j) {
        auto& u = col[static_cast<size_t>(i)];
        auto& v = col[static_cast<size_t>(j)];
        const double a = norm2[static_cast<size_t>(i)];
        const double b = norm2[static_cast<size_t>(j)];
        if (a <= negligible2 || b <= negligible2) continue;
        cdbl c{};
        for (long long r = 0; r < m; ++r) c += std::conj(u[static_cast<size_t>(r)]) * v[static_cast<size_t>(r)];
        const double cabs = std::abs(c);
        if (cabs <= kJacobiTol * std::sqrt(a * b)) continue;

        rotated = true;
        const cdbl phase = c / cabs;  // align the Gram entry onto the real axis
        const double zeta = (b - a) / (2.0 * cabs);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        const cdbl conj_phase = std::conj(phase);
        double ni = 0.0, nj = 0.0;
        for (long long r = 0; r < m; ++r) {
          const cdbl ur = u[static_cast<size_t>(r)];
          const cdbl vr = conj_phase * v[static_cast<size_t>(r)];
          const cdbl un = cs * ur - sn * vr;
          const cdbl vn = sn * ur + cs * vr;
          u[static_cast<size_t>(r)] = un;
          v[static_cast<size_t>(r)] = vn;
          ni += std::norm(un);
          nj += std::norm(vn);
        }
        norm2[static_cast<size_t>(i)] = ni;
        norm2[static_cast<size_t>(j)] = nj;
      }
    }
    converged = !rotated;
  }
  if (!converged) throw std::runtime_error("svd_oracle: Jacobi sweeps did not converge");

  std::vector<double> vals(static_cast<size_t>(k));
  for (long long j = 0; j < k; ++j) {
    double s = 0.0;
    for (const cdbl& z : col[static_cast<size_t>(j)]) s += std::norm(z);
    vals[static_cast<size_t>(j)] = std::sqrt(s);
  }
  sort_descending(vals);
  return SpectrumResult{std::move(vals), 0, Provenance::Oracle};
}

std::pair<std::vector<double>, DenseMatrix> hermitian_eig(const DenseMatrix& Hin) {
  if (Hin.rows() != Hin.cols()) throw std::domain_error("hermitian_eig: matrix must be square");
  const long long n = Hin.rows();
  DenseMatrix H = Hin;
  DenseMatrix U = DenseMatrix::identity(n);
  // Entries at round-off scale relative to the matrix norm are left alone.
  const double floor_abs = H.frobenius_norm() * 1e-16;

  bool converged = (n <= 1);
  for (int sweep = 0; sweep < kMaxEigSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (long long i = 0; i + 1 < n; ++i) {
      for (long long j = i + 1; j < n; ++j) {
        const double a = H(i, i).real();
        const double b = H(j, j).real();
        const cdbl h = H(i, j);
        const double habs = std::abs(h);
        const double scale = std::sqrt(std::abs(a) * std::abs(b));
        if (habs <= floor_abs || habs <= kJacobiTol * scale) continue;

        rotated = true;
        const cdbl phase = h / habs;
        const double zeta = (b - a) / (2.0 * habs);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        // Two-sided rotation G = [[cs, sn],[-sn e^{-i phi}, cs e^{-i phi}]]
        // on columns then rows i,j; U accumulates the column action.
        const cdbl g21 = -sn * std::conj(phase);
        const cdbl g22 = cs * std::conj(phase);
        for (long long r = 0; r < n; ++r) {
          const cdbl hi = H(r, i), hj = H(r, j);
          H(r, i) = cs * hi + g21 * hj;
          H(r, j) = sn * hi + g22 * hj;
          const cdbl ui = U(r, i), uj = U(r, j);
          U(r, i) = cs * ui + g21 * uj;
          U(r, j) = sn * ui + g22 * uj;
        }
        for (long long cidx = 0; cidx < n; ++cidx) {
          const cdbl hi = H(i, cidx), hj = H(j, cidx);
          H(i, cidx) = cs * hi + std::conj(g21) * hj;
          H(j, cidx) = sn * hi + std::conj(g22) * hj;
        }
        H(i, j) = 0.0;
        H(j, i) = 0.0;
      }
    }
    converged = !rotated;
  }
  if (!converged) throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

  std::vector<double> evals(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) evals[static_cast<size_t>(i)] = H(i, i).real();
  return {std::move(evals), std::move(U)};
}

DenseMatrix hermitian_sqrt(const DenseMatrix& H) {
  auto [evals, U] = hermitian_eig(H);
  const long long n = H.rows();
  // Eigenvalues at round-off scale are treated as exact zeros; the square
  // root would otherwise inflate them to sqrt(eps)-level noise.
  const double clip = 1e-13 * std::max(1.0, H.frobenius_norm());
  DenseMatrix out(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) {
      cdbl acc{};
      for (long long k = 0; k < n; ++k) {
        const double lam = evals[static_cast<size_t>(k)];
        if (lam <= clip) continue;
        acc += U(i, k) * std::sqrt(lam) * std::conj(U(j, k));
      }
      out(i, j) = acc;
    }
  // Symmetrize to remove residual round-off skew.
  for (long long i = 0; i < n; ++i)
    for (long long j = i + 1; j < n; ++j) {
      const cdbl avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  for (long long i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

DenseMatrix gram_sqrt(const std::vector<DenseMatrix>& blocks) {
  if (blocks.empty()) throw std::domain_error("gram_sqrt: no blocks");
  const long long cols = blocks.front().cols();
  DenseMatrix G(cols, cols);
  for (const DenseMatrix& B : blocks) {
    if (B.cols() != cols) throw std::domain_error("gram_sqrt: blocks must share the column count");
    G = G + B.conj_transpose() * B;
  }
  return hermitian_sqrt(G);
}

SpectrumResult zero_alpha_reduction(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha,
                                    MatrixKind kind) {
  const int d = n.dims();
  if (alpha.dims() != d) throw std::domain_error("zero_alpha_reduction: alpha dimension mismatch");
  if (kind != MatrixKind::AlphaCirculant && kind != MatrixKind::AlphaToeplitz)
    throw std::domain_error("zero_alpha_reduction: kind must be alpha-circulant or alpha-toeplitz");

  // Circulant shifts only matter mod n; Toeplitz shifts are taken as given.
  MultiIndex eff = alpha;
  if (kind == MatrixKind::AlphaCirculant)
    for (int k = 0; k < d; ++k) eff[k] = reduce_alpha(alpha[k], n[k]);

  std::vector<int> zero_levels, pos_levels;
  for (int k = 0; k < d; ++k) (eff[k] == 0 ? zero_levels : pos_levels).push_back(k);
  if (zero_levels.empty())
    throw std::domain_error("zero_alpha_reduction: alpha has no zero component (wrong path)");

  MultiIndex n0 = zeros(static_cast<int>(zero_levels.size()));
  for (size_t i = 0; i < zero_levels.size(); ++i) n0[static_cast<int>(i)] = n[zero_levels[i]];
  MultiIndex npos = zeros(static_cast<int>(pos_levels.size()));
  MultiIndex apos = zeros(static_cast<int>(pos_levels.size()));
  for (size_t i = 0; i < pos_levels.size(); ++i) {
    npos[static_cast<int>(i)] = n[pos_levels[i]];
    apos[static_cast<int>(i)] = eff[pos_levels[i]];
  }

  const long long nh = product(n);
  const long long nh0 = product(n0);
  const long long block_dim = product(npos);  // 1 when alpha is the zero vector

  // One block per index in the degenerate box; entry indices carry the block
  // index on the zero levels and the shifted difference on the rest.
  std::vector<DenseMatrix> blocks;
  blocks.reserve(static_cast<size_t>(nh0));
  MultiIndex j = zeros(n0.dims());
  do {
    DenseMatrix B(block_dim, block_dim);
    MultiIndex r = zeros(npos.dims());
    long long rp = 0;
    do {
      MultiIndex c = zeros(npos.dims());
      long long cp = 0;
      do {
        MultiIndex full = zeros(d);
        for (size_t i = 0; i < zero_levels.size(); ++i) full[zero_levels[i]] = j[static_cast<int>(i)];
        for (size_t i = 0; i < pos_levels.size(); ++i) {
          long long diff = r[static_cast<int>(i)] - apos[static_cast<int>(i)] * c[static_cast<int>(i)];
          if (kind == MatrixKind::AlphaCirculant) {
            diff %= npos[static_cast<int>(i)];
            if (diff < 0) diff += npos[static_cast<int>(i)];
          }
          full[pos_levels[i]] = diff;
        }
        B(rp, cp) = s.get(full);
        ++cp;
      } while (next_in_box(c, npos));
      ++rp;
    } while (next_in_box(r, npos));
    blocks.push_back(std::move(B));
  } while (next_in_box(j, n0));

  DenseMatrix gram(block_dim, block_dim);
  for (const DenseMatrix& B : blocks) gram = gram + B.conj_transpose() * B;
  std::vector<double> evals = hermitian_eig(gram).first;

  // Rank deficiency shared by the blocks leaves exact zero eigenvalues in
  // the Gram; round-off residue below the clip is not allowed to inflate
  // through the square root.
  const double clip = 1e-13 * std::max(1.0, gram.frobenius_norm());
  const double scale = std::sqrt(static_cast<double>(nh0));
  std::vector<double> vals(static_cast<size_t>(nh), 0.0);
  for (long long i = 0; i < block_dim; ++i) {
    const double lam = evals[static_cast<size_t>(i)];
    vals[static_cast<size_t>(i)] = lam <= clip ? 0.0 : scale * std::sqrt(lam);
  }
  return finalize(std::move(vals), nh - block_dim, Provenance::Reduction);
}

SpectrumResult single_nonzero_alpha_singvals(const std::vector<cdbl>& a, const MultiIndex& n, int level,
                                             long long alpha_level) {
  const int d = n.dims();
  if (level < 0 || level >= d) throw std::domain_error("single_nonzero_alpha_singvals: bad level index");
  if (alpha_level <= 0) throw std::domain_error("single_nonzero_alpha_singvals: alpha at the level must be positive");
  const long long nh = product(n);
  if (static_cast<long long>(a.size()) != nh)
    throw std::domain_error("single_nonzero_alpha_singvals: coefficient count != product(n)");

  const long long nd = n[level];
  const long long ar = reduce_alpha(alpha_level, nd);
  if (ar == 0) {
    MultiIndex alpha = zeros(d);
    return zero_alpha_reduction(symbol_from_box_array(a, n), n, alpha, MatrixKind::AlphaCirculant);
  }

  // Degenerate box: all levels except `level`.
  MultiIndex n0 = zeros(d - 1);
  std::vector<int> other;
  for (int k = 0; k < d; ++k)
    if (k != level) {
      n0[static_cast<int>(other.size())] = n[k];
      other.push_back(k);
    }
  const long long nh0 = product(n0);

  GcdData g = gcd_data(nd, ar);

  // Accumulated per-slot squared DFT diagonals over the degenerate box.
  std::vector<double> q_sum(static_cast<size_t>(nd), 0.0);
  MultiIndex j = zeros(d - 1);
  do {
    for (long long sidx = 0; sidx < nd; ++sidx) {
      cdbl acc{};
      for (long long t = 0; t < nd; ++t) {
        MultiIndex full = zeros(d);
        for (size_t i = 0; i < other.size(); ++i) full[other[i]] = j[static_cast<int>(i)];
        full[level] = t;
        acc += a[static_cast<size_t>(lex_rank(full, n))] *
               std::polar(1.0, kTwoPi * static_cast<double>(sidx) * static_cast<double>(t) / static_cast<double>(nd));
      }
      q_sum[static_cast<size_t>(sidx)] += std::norm(acc);
    }
  } while (next_in_box(j, n0));

  const double scale = std::sqrt(static_cast<double>(nh0));
  std::vector<double> vals(static_cast<size_t>(nh), 0.0);
  for (long long kidx = 0; kidx < g.n_alpha; ++kidx) {
    double sum = 0.0;
    for (long long l = 0; l < g.g; ++l) sum += q_sum[static_cast<size_t>(l * g.n_alpha + kidx)];
    vals[static_cast<size_t>(kidx)] = scale * std::sqrt(sum);
  }
  return finalize(std::move(vals), nh - g.n_alpha, Provenance::ClosedForm);
}

SpectrumResult multilevel_alpha_circulant_singvals(const std::vector<cdbl>& a, const MultiIndex& n,
                                                   const MultiIndex& alpha) {
  const int d = n.dims();
  if (alpha.dims() != d) throw std::domain_error("multilevel_alpha_circulant_singvals: alpha dimension mismatch");
  const long long nh = product(n);
  if (static_cast<long long>(a.size()) != nh)
    throw std::domain_error("multilevel_alpha_circulant_singvals: coefficient count != product(n)");

  MultiIndex ar = zeros(d);
  bool any_zero = false;
  for (int k = 0; k < d; ++k) {
    ar[k] = reduce_alpha(alpha[k], n[k]);
    any_zero = any_zero || ar[k] == 0;
  }
  if (any_zero) return zero_alpha_reduction(symbol_from_box_array(a, n), n, ar, MatrixKind::AlphaCirculant);

  // Per-level fold geometry applied to the multilevel DFT diagonal array.
  MultiIndex gv = zeros(d), nav = zeros(d);
  for (int k = 0; k < d; ++k) {
    GcdData g = gcd_data(n[k], ar[k]);
    gv[k] = g.g;
    nav[k] = g.n_alpha;
  }

  std::vector<cdbl> eigs = multilevel_circulant_eigs(a, n);
  std::vector<double> dvals(static_cast<size_t>(nh));
  for (long long i = 0; i < nh; ++i) dvals[static_cast<size_t>(i)] = std::norm(eigs[static_cast<size_t>(i)]);

  const long long nonzero = product(nav);
  std::vector<double> vals(static_cast<size_t>(nh), 0.0);
  MultiIndex jidx = zeros(d);
  long long slot = 0;
  do {
    double sum = 0.0;
    MultiIndex l = zeros(d);
    do {
      MultiIndex full = zeros(d);
      for (int k = 0; k < d; ++k) full[k] = l[k] * nav[k] + jidx[k];
      sum += dvals[static_cast<size_t>(lex_rank(full, n))];
    } while (next_in_box(l, gv));
    vals[static_cast<size_t>(slot++)] = std::sqrt(sum);
  } while (next_in_box(jidx, nav));
  return finalize(std::move(vals), nh - nonzero, Provenance::ClosedForm);
}

SpectrumResult closed_form_singvals(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha,
                                    MatrixKind kind) {
  const int d = n.dims();
  if (alpha.dims() != d) throw std::domain_error("closed_form_singvals: alpha dimension mismatch");
  if (kind == MatrixKind::Circulant || kind == MatrixKind::AlphaCirculant) {
    std::vector<cdbl> a = wrap_coeffs(s, n);
    return multilevel_alpha_circulant_singvals(a, n, alpha);
  }
  if (kind == MatrixKind::Toeplitz || kind == MatrixKind::AlphaToeplitz) {
    bool any_zero = false;
    for (int k = 0; k < d; ++k) any_zero = any_zero || alpha[k] == 0;
    if (!any_zero)
      throw std::domain_error(
          "closed_form_singvals: no closed form for alpha-Toeplitz with strictly positive alpha (use the oracle)");
    return zero_alpha_reduction(s, n, alpha, MatrixKind::AlphaToeplitz);
  }
  throw std::domain_error("closed_form_singvals: unsupported kind");
}

double multiset_max_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<double> sa = a, sb = b;
  sort_descending(sa);
  sort_descending(sb);
  double m = 0.0;
  for (size_t i = 0; i < sa.size(); ++i) m = std::max(m, std::abs(sa[i] - sb[i]));
  return m;
}

}  // namespace alphatoep

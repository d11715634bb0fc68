#pragma once

#include <utility>
#include <vector>

#include "alphatoep/core.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

enum class Provenance { ClosedForm, Oracle, Reduction };

std::string to_string(Provenance p);

/// Descending-sorted nonnegative singular values. The trailing
/// structural_zero_count entries are exactly zero for closed-form and
/// reduction provenance (rank deficiency of the shift factor, independent of
/// the coefficient values).
struct SpectrumResult {
  std::vector<double> values;
  long long structural_zero_count = 0;
  Provenance provenance = Provenance::Oracle;
};

/// Eigenvalues of the one-level circulant with first column a: the
/// polynomial p(t) = sum_k a_k e^{ikt} sampled at t = 2*pi*j/n.
std::vector<cdbl> circulant_eigs(const std::vector<cdbl>& a, long long n);

/// Multilevel circulant eigenvalues over the index box.
std::vector<cdbl> multilevel_circulant_eigs(const std::vector<cdbl>& a, const MultiIndex& n);

/// Squared moduli of the DFT diagonal of the circulant, d_s = |D_n|^2_{s,s},
/// D_n = diag(sqrt(n) F_n^* a), together with the gcd fold geometry.
struct DiagonalFold {
  std::vector<double> d_values;
  long long g;
  long long n_alpha;
};

DiagonalFold diagonal_fold(const std::vector<cdbl>& a, long long n, long long alpha);

/// Closed-form singular values of the one-level alpha-circulant: gcd folds
/// of the squared DFT diagonal, sigma_j = sqrt(sum_l d_{l*n_alpha+j}) for
/// j < n_alpha and structural zeros elsewhere. alpha is reduced mod n first;
/// a zero residue delegates to the degenerate rank-one rule.
SpectrumResult alpha_circulant_singvals(const std::vector<cdbl>& a, long long n, long long alpha);

/// Same multiset through the symbol route: |p|^2 folded at the refined grid
/// points (x_j + 2*pi*l)/g, x_j = 2*pi*j/n_alpha. Used as a cross-check of
/// the diagonal-fold route.
SpectrumResult alpha_circulant_singvals_symbol(const std::vector<cdbl>& a, long long n, long long alpha);

/// Reference singular values by one-sided Jacobi orthogonalization of the
/// columns; converged when every Gram rotation falls below 1e-14 relative.
/// Throws after 60 sweeps without convergence.
SpectrumResult svd_oracle(const DenseMatrix& A);

/// Hermitian eigensolve by cyclic complex Jacobi rotations (threshold 1e-14
/// relative). Returns eigenvalues (unsorted) and the accumulated unitary U
/// with H = U diag(evals) U^*.
std::pair<std::vector<double>, DenseMatrix> hermitian_eig(const DenseMatrix& H);

/// Positive-semidefinite square root U sqrt(Lambda) U^*; small negative
/// round-off eigenvalues are clipped at zero.
DenseMatrix hermitian_sqrt(const DenseMatrix& H);

/// PSD square root of sum_j blocks_j^* blocks_j.
DenseMatrix gram_sqrt(const std::vector<DenseMatrix>& blocks);

/// Reduction for shift vectors with at least one zero component: the matrix
/// is a block matrix with constant blocks per block-row, its nonzero
/// singular values are sqrt(prod of zero-level sizes) times those of the
/// Gram square root of the positive-level blocks. Handles the all-zero
/// vector (rank-one matrix) as the fully degenerate case.
SpectrumResult zero_alpha_reduction(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha,
                                    MatrixKind kind);

/// Explicit formula for a circulant whose shift vector has exactly one
/// nonzero component (at `level`): per-block DFT diagonals are folded by the
/// gcd geometry of that level, then scaled by sqrt of the degenerate sizes.
/// a is the lexicographic coefficient array over the box [0,n).
SpectrumResult single_nonzero_alpha_singvals(const std::vector<cdbl>& a, const MultiIndex& n, int level,
                                             long long alpha_level);

/// Closed form for multilevel circulants with strictly positive shift
/// vector: the gcd fold applied independently per level on the multilevel
/// DFT diagonal array. Components are reduced mod n_k first; any zero
/// residue delegates to zero_alpha_reduction.
SpectrumResult multilevel_alpha_circulant_singvals(const std::vector<cdbl>& a, const MultiIndex& n,
                                                   const MultiIndex& alpha);

/// Closed-form/reduction dispatcher used by the CLI and the sweeps.
/// Circulant kind accepts any nonnegative alpha. Toeplitz kind requires a
/// zero component (no closed form exists otherwise) and throws a domain
/// error for strictly positive alpha.
SpectrumResult closed_form_singvals(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha,
                                    MatrixKind kind);

/// Max entrywise deviation after sorting both descending; +inf on length
/// mismatch. Spectra are compared as multisets throughout.
double multiset_max_deviation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace alphatoep

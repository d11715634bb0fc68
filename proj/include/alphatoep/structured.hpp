#pragma once

#include "alphatoep/core.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

enum class ShiftVariant {
  Full,         // square [delta_{r - alpha o s}], one 1 per column
  FirstNalpha,  // first n/gcd(n,alpha) columns (one level)
  FirstMu,      // first ceil(n/alpha) columns (one level)
  TailCols,     // first `ncols` columns, used for the tail embedding factor (one level)
};

struct ShiftPattern {
  MultiIndex n;
  MultiIndex alpha;
  ShiftVariant variant = ShiftVariant::Full;
  long long ncols = -1;  // explicit column count; required for TailCols
};

DenseMatrix shift_matrix(const ShiftPattern& p);

DenseMatrix shift_full(const MultiIndex& n, const MultiIndex& alpha);
DenseMatrix shift_tilde(long long n, long long alpha);                   // first n_alpha columns
DenseMatrix shift_hat(long long n, long long alpha);                     // first mu_alpha columns
DenseMatrix shift_tail(long long size, long long alpha, long long ncols);

/// alpha mod n; shift and circulant constructions only depend on this residue.
long long reduce_alpha(long long alpha, long long n);

/// gcd-derived geometry of the (n, alpha) pair.
struct GcdData {
  long long g;            // gcd(n, alpha)
  long long n_alpha;      // n / g
  long long alpha_check;  // alpha / g
  long long mu_alpha;     // ceil(n / alpha)
  long long d_tail;       // embedding size, default alpha*n (bumped to satisfy the strict bound)
};

GcdData gcd_data(long long n, long long alpha);

/// Unitary DFT matrix; multilevel sizes give the tensor product of the
/// per-level Fourier matrices.
DenseMatrix fourier_matrix(const MultiIndex& n);

/// Circulant from its first column a (lexicographic over the box [0,n)).
StructuredMatrix circulant(const std::vector<cdbl>& a, const MultiIndex& n);

/// Entries a[(r - alpha o s) mod n].
StructuredMatrix alpha_circulant(const std::vector<cdbl>& a, const MultiIndex& n, const MultiIndex& alpha);

/// Entries coeffs(r - alpha o s); indices are not reduced and absent
/// coefficients read as zero.
StructuredMatrix alpha_toeplitz(const SymbolSpec& s, const MultiIndex& n, const MultiIndex& alpha);

/// Ordinary multilevel Toeplitz T_n(f) (alpha = e).
StructuredMatrix toeplitz(const SymbolSpec& s, const MultiIndex& n);

/// Circulant whose first column is the symbol aliased into the box [0,n).
StructuredMatrix circulant_from_symbol(const SymbolSpec& s, const MultiIndex& n);

/// Residuals of the Fourier/shift refinement identity and of the gcd
/// factorization of the first-columns block (one level, 1 <= alpha < n).
struct FourierShiftResidual {
  double refinement;     // F_n Ztilde vs stacked-identity form
  double factorization;  // Ztilde_{n,alpha} vs Ztilde_{n,g} Z_{n_alpha,alpha/g}
};

FourierShiftResidual verify_fourier_shift_identity(long long n, long long alpha);

/// Head/tail column split of the one-level alpha-Toeplitz: head is the
/// product T_n * Zhat (n x mu_alpha), tail is the remaining n - mu_alpha
/// columns taken from the entry rule. Their concatenation reproduces
/// alpha_toeplitz exactly.
struct ToeplitzSplit {
  DenseMatrix head;
  DenseMatrix tail;
};

ToeplitzSplit toeplitz_tail_split(const SymbolSpec& s, long long n, long long alpha);

/// Residuals of the tail relabeling through a size-d_tail Toeplitz (exact
/// integer identity, expected 0) and of its flip-times-Hankel factorization.
struct TailEmbeddingResidual {
  double embedding;
  double flip;
};

TailEmbeddingResidual tail_embedding(const SymbolSpec& s, long long n, long long alpha, long long d_tail);

/// Conjugation P^T A P reordering the level structure by perm: level i of
/// the result is level perm[i] of the input. Singular values are unchanged.
StructuredMatrix permute_levels(const StructuredMatrix& A, const std::vector<int>& perm);

}  // namespace alphatoep

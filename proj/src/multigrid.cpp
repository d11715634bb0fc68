#include "alphatoep/multigrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "alphatoep/structured.hpp"

namespace alphatoep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPsdTol = 1e-10;
constexpr double kStructureTol = 1e-10;

void require_psd_fine_operator(const ProjectionSetup& setup) {
  std::vector<cdbl> eigs = circulant_eigs(wrap_coeffs(setup.f, MultiIndex{setup.n}), setup.n);
  for (const cdbl& e : eigs) {
    if (e.real() < -kPsdTol || std::abs(e.imag()) > kPsdTol)
      throw std::domain_error("multigrid: fine operator symbol is not positive semidefinite");
  }
}

double fold_value(const SymbolSpec& g, double x, long long alpha) {
  double acc = 0.0;
  for (long long l = 0; l < alpha; ++l)
    acc += eval_symbol(g, {(x + kTwoPi * static_cast<double>(l)) / static_cast<double>(alpha)}).real();
  return acc / static_cast<double>(alpha);
}

}  // namespace

SymbolSpec projected_symbol(const ProjectionSetup& setup) { return multiply_symbols(autocorrelate(setup.q), setup.f); }

DenseMatrix galerkin_matrix(const ProjectionSetup& setup) {
  const MultiIndex n{setup.n};
  DenseMatrix A = circulant_from_symbol(setup.f, n).matrix;
  DenseMatrix P = circulant_from_symbol(setup.q, n).matrix;
  return P.conj_transpose() * A * P;
}

double circulant_defect(const DenseMatrix& A) {
  if (A.rows() != A.cols()) throw std::domain_error("circulant_defect: matrix must be square");
  const long long n = A.rows();
  double defect = 0.0;
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c) {
      long long k = (r - c) % n;
      if (k < 0) k += n;
      defect = std::max(defect, std::abs(A(r, c) - A(k, 0)));
    }
  return defect;
}

StructuredMatrix project(const ProjectionSetup& setup) {
  if (setup.n < 2 || setup.alpha < 1) throw std::domain_error("project: need n >= 2 and alpha >= 1");
  if (setup.n % setup.alpha != 0)
    throw std::domain_error("project: alpha must divide n (use project_general otherwise)");
  require_psd_fine_operator(setup);

  const long long k = setup.n / setup.alpha;
  DenseMatrix Zt = shift_tilde(setup.n, setup.alpha);
  DenseMatrix coarse = Zt.transpose() * galerkin_matrix(setup) * Zt;

  const double defect = circulant_defect(coarse);
  if (defect > kStructureTol)
    throw std::runtime_error("project: coarse operator lost circulant structure beyond tolerance");

  StructuredMatrix out;
  out.kind = MatrixKind::Circulant;
  out.n = MultiIndex{k};
  out.matrix = std::move(coarse);
  return out;
}

std::vector<double> projected_eigs(const ProjectionSetup& setup) {
  if (setup.n % setup.alpha != 0) throw std::domain_error("projected_eigs: alpha must divide n");
  require_psd_fine_operator(setup);
  const long long k = setup.n / setup.alpha;
  SymbolSpec g = projected_symbol(setup);
  std::vector<double> eigs(static_cast<size_t>(k));
  for (long long j = 0; j < k; ++j) {
    const double xj = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
    eigs[static_cast<size_t>(j)] = fold_value(g, xj, setup.alpha);
  }
  return eigs;
}

SpectrumResult projector_singvals(const ProjectionSetup& setup) {
  if (setup.n % setup.alpha != 0) throw std::domain_error("projector_singvals: alpha must divide n");
  require_psd_fine_operator(setup);
  const long long k = setup.n / setup.alpha;
  SymbolSpec g = projected_symbol(setup);
  std::vector<double> vals(static_cast<size_t>(k));
  for (long long j = 0; j < k; ++j) {
    const double xj = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
    // alpha * fold = plain sum over branches
    const double sum = fold_value(g, xj, setup.alpha) * static_cast<double>(setup.alpha);
    vals[static_cast<size_t>(j)] = std::sqrt(std::max(0.0, sum)) / std::sqrt(static_cast<double>(setup.alpha));
  }
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return SpectrumResult{std::move(vals), 0, Provenance::ClosedForm};
}

GeneralProjection project_general(const ProjectionSetup& setup) {
  if (setup.alpha < 1 || setup.alpha >= setup.n) throw std::domain_error("project_general: need 1 <= alpha < n");
  require_psd_fine_operator(setup);
  GcdData d = gcd_data(setup.n, setup.alpha);
  DenseMatrix Zt = shift_tilde(setup.n, setup.alpha);
  DenseMatrix coarse = Zt.transpose() * galerkin_matrix(setup) * Zt;

  GeneralProjection out;
  out.defect = circulant_defect(coarse);
  out.coarsening = d.n_alpha < setup.n;
  out.coarse.kind = out.defect <= kStructureTol ? MatrixKind::Circulant : MatrixKind::Other;
  out.coarse.n = MultiIndex{d.n_alpha};
  out.coarse.matrix = std::move(coarse);
  return out;
}

PathologyProbe pathological_symmetry_probe(const SymbolSpec& f, double x0, long long n, long long alt_alpha) {
  if (f.d != 1) throw std::domain_error("pathological_symmetry_probe: one-level only");
  if (n < 2 || alt_alpha < 2) throw std::domain_error("pathological_symmetry_probe: need n >= 2 and alt_alpha >= 2");

  PathologyProbe probe;
  probe.n = n;
  probe.alt_alpha = alt_alpha;
  probe.f_at_x0 = eval_symbol(f, {x0}).real();
  probe.f_at_x0_plus_pi = eval_symbol(f, {x0 + std::numbers::pi}).real();

  auto min_over_coarse_grid = [&](long long alpha) {
    const long long k = std::max<long long>(1, n / alpha);
    double mn = std::numeric_limits<double>::infinity();
    for (long long j = 0; j < k; ++j) {
      const double xj = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
      mn = std::min(mn, fold_value(f, xj, alpha));
    }
    return mn;
  };

  probe.min_fold_alpha2 = min_over_coarse_grid(2);
  probe.min_fold_alt = min_over_coarse_grid(alt_alpha);
  probe.alpha2_retains_zero = std::abs(probe.min_fold_alpha2) <= 1e-12;
  return probe;
}

}  // namespace alphatoep

#include "alphatoep/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "alphatoep/parallel.hpp"
#include "alphatoep/structured.hpp"

namespace alphatoep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuadTol = 1e-9;
constexpr double kTrendFloor = 1e-9;       // errors below this count as converged
constexpr long long kOracleCap = 2048;     // dense SVD size cap for oracle mode

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

TestFunction TestFunction::hat(double center, double half_width) {
  if (half_width <= 0.0) throw std::invalid_argument("TestFunction::hat: half-width must be positive");
  return TestFunction{Kind::Hat, center, half_width, 0.0};
}

TestFunction TestFunction::bump(double center, double scale, double radius) {
  if (scale <= 0.0 || radius <= 0.0) throw std::invalid_argument("TestFunction::bump: scale and radius must be positive");
  return TestFunction{Kind::GaussianBump, center, scale, radius};
}

TestFunction TestFunction::clamp(double cap) {
  if (cap < 0.0) throw std::invalid_argument("TestFunction::clamp: cap must be nonnegative");
  return TestFunction{Kind::Clamp, cap, 0.0, 0.0};
}

double TestFunction::operator()(double x) const {
  switch (kind) {
    case Kind::Hat:
      return std::max(0.0, 1.0 - std::abs(x - p1) / p2);
    case Kind::GaussianBump: {
      if (std::abs(x - p1) >= p3) return 0.0;
      const double u = (x - p1) / p2;
      const double edge = (p3 / p2) * (p3 / p2);
      return std::exp(-u * u) - std::exp(-edge);
    }
    case Kind::Clamp:
      return std::min(x, p1);
  }
  return 0.0;
}

double TestFunction::sup_abs() const {
  switch (kind) {
    case Kind::Hat:
      return 1.0;
    case Kind::GaussianBump:
      return 1.0 - std::exp(-(p3 / p2) * (p3 / p2));
    case Kind::Clamp:
      return p1;
  }
  return 0.0;
}

std::string TestFunction::id() const {
  switch (kind) {
    case Kind::Hat:
      return "hat(" + fmt_param(p1) + ";" + fmt_param(p2) + ")";
    case Kind::GaussianBump:
      return "bump(" + fmt_param(p1) + ";" + fmt_param(p2) + ";" + fmt_param(p3) + ")";
    case Kind::Clamp:
      return "clamp(" + fmt_param(p1) + ")";
  }
  return "?";
}

double sigma_functional(const TestFunction& F, const SpectrumResult& spec, long long min_dim) {
  if (static_cast<long long>(spec.values.size()) != min_dim)
    throw std::domain_error("sigma_functional: spectrum length != min_dim");
  double acc = 0.0;
  for (double s : spec.values) acc += F(s);
  return acc / static_cast<double>(min_dim);
}

double analytic_limit(const TestFunction& F, const ThetaSymbol& th) {
  const int d = th.alpha.dims();
  if (!all_positive(th.alpha)) throw std::domain_error("analytic_limit: alpha must be strictly positive");
  const double inv_alpha_hat = 1.0 / static_cast<double>(product(th.alpha));

  // Mean of F(sqrt(folded square)) over the periodic box, grid doubled per
  // refinement until stable.
  long long grid = d == 1 ? 4096 : (d == 2 ? 64 : 16);
  const long long cap = d == 1 ? 65536 : (d == 2 ? 1024 : 64);
  auto grid_mean = [&](long long m) {
    MultiIndex box(std::vector<long long>(static_cast<size_t>(d), m));
    std::vector<double> x(static_cast<size_t>(d));
    MultiIndex t = zeros(d);
    double acc = 0.0;
    do {
      for (int k = 0; k < d; ++k)
        x[static_cast<size_t>(k)] =
            -std::numbers::pi + kTwoPi * (static_cast<double>(t[k]) + 0.5) / static_cast<double>(m);
      const double v = std::max(0.0, eval_symbol(th.base, x).real());
      acc += F(std::sqrt(v));
    } while (next_in_box(t, box));
    return acc / static_cast<double>(product(box));
  };

  double prev = grid_mean(grid);
  while (true) {
    grid *= 2;
    if (grid > cap) throw std::runtime_error("analytic_limit: quadrature refinement did not converge");
    const double cur = grid_mean(grid);
    if (std::abs(cur - prev) < kQuadTol) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  return inv_alpha_hat * prev + (1.0 - inv_alpha_hat) * F(0.0);
}

bool DistributionReport::all_decreasing() const {
  for (bool b : error_decreasing)
    if (!b) return false;
  return true;
}

DistributionReport distribution_experiment(const SymbolSpec& s, const MultiIndex& alpha,
                                           const std::vector<MultiIndex>& sizes,
                                           const std::vector<TestFunction>& F_family, SpectrumMode mode,
                                           MatrixKind kind) {
  if (sizes.empty()) throw std::invalid_argument("distribution_experiment: no sizes");
  if (F_family.empty()) throw std::invalid_argument("distribution_experiment: no test functions");
  for (size_t i = 1; i < sizes.size(); ++i)
    if (product(sizes[i]) <= product(sizes[i - 1]))
      throw std::invalid_argument("distribution_experiment: sizes must be strictly increasing in product");

  const bool circulant_kind = kind == MatrixKind::AlphaCirculant || kind == MatrixKind::Circulant;
  bool degenerate = false;
  for (int k = 0; k < alpha.dims(); ++k) degenerate = degenerate || alpha[k] == 0;

  DistributionReport report;
  {
    std::ostringstream os;
    os << (circulant_kind ? "alpha-circulant" : "alpha-toeplitz") << " alpha=" << to_string(alpha);
    report.family = os.str();
  }
  for (const TestFunction& F : F_family) report.function_ids.push_back(F.id());

  // Degenerate families collapse to the zero distribution: the limit of the
  // mean is F(0). Otherwise the folded symbol supplies the limit.
  if (degenerate) {
    for (const TestFunction& F : F_family) report.limits.push_back(F(0.0));
  } else {
    ThetaSymbol th = make_theta(s, alpha);
    for (const TestFunction& F : F_family) report.limits.push_back(analytic_limit(F, th));
  }

  report.records.resize(sizes.size());
  parallel_for(sizes.size(), [&](size_t i) {
    const MultiIndex& n = sizes[i];
    const long long nh = product(n);
    SpectrumResult spec;
    if (mode == SpectrumMode::Oracle) {
      if (nh > kOracleCap) throw std::invalid_argument("distribution_experiment: oracle mode capped at product(n) <= 2048");
      StructuredMatrix A = circulant_kind ? alpha_circulant(wrap_coeffs(s, n), n, alpha) : alpha_toeplitz(s, n, alpha);
      spec = svd_oracle(A.matrix);
    } else {
      spec = closed_form_singvals(s, n, alpha, circulant_kind ? MatrixKind::AlphaCirculant : MatrixKind::AlphaToeplitz);
    }
    DistributionRecord rec;
    rec.n = n;
    rec.n_hat = nh;
    for (size_t f = 0; f < F_family.size(); ++f) {
      const double v = sigma_functional(F_family[f], spec, nh);
      rec.sigma_values.push_back(v);
      rec.abs_errors.push_back(std::abs(v - report.limits[f]));
    }
    report.records[i] = std::move(rec);
  });

  for (size_t f = 0; f < F_family.size(); ++f) {
    const double first = report.records.front().abs_errors[f];
    const double last = report.records.back().abs_errors[f];
    report.error_decreasing.push_back(last < first || last <= kTrendFloor);
  }
  return report;
}

double equal_distribution_gap(const SpectrumResult& a, const SpectrumResult& b, const TestFunction& F) {
  if (a.values.size() != b.values.size()) throw std::domain_error("equal_distribution_gap: dimension mismatch");
  const long long dim = static_cast<long long>(a.values.size());
  return std::abs(sigma_functional(F, a, dim) - sigma_functional(F, b, dim));
}

double GcdRegimeReport::mean_sigma(long long gcd_class_min, long long gcd_class_max) const {
  double acc = 0.0;
  long long count = 0;
  for (const auto& r : records)
    if (r.g >= gcd_class_min && r.g <= gcd_class_max) {
      acc += r.sigma_value;
      ++count;
    }
  if (count == 0) throw std::domain_error("GcdRegimeReport::mean_sigma: empty gcd class");
  return acc / static_cast<double>(count);
}

GcdRegimeReport gcd_regime_probe(const std::vector<cdbl>& a, long long alpha, const std::vector<long long>& sizes,
                                 const TestFunction& F) {
  if (alpha < 1) throw std::domain_error("gcd_regime_probe: alpha must be >= 1");
  GcdRegimeReport report;
  report.alpha = alpha;
  for (long long n : sizes) {
    std::vector<cdbl> coeffs(static_cast<size_t>(n));
    for (size_t k = 0; k < a.size(); ++k) coeffs[k % static_cast<size_t>(n)] += a[k];
    SpectrumResult spec = alpha_circulant_singvals(coeffs, n, alpha);
    GcdRegimeRecord rec;
    rec.n = n;
    const long long ar = reduce_alpha(alpha, n);
    rec.g = ar == 0 ? n : gcd_data(n, ar).g;
    rec.n_alpha = ar == 0 ? 1 : gcd_data(n, ar).n_alpha;
    rec.structural_zeros = spec.structural_zero_count;
    rec.sigma_value = sigma_functional(F, spec, n);
    report.records.push_back(rec);
  }
  return report;
}

std::vector<TestFunction> default_test_functions() {
  return {TestFunction::hat(std::numbers::sqrt2, 0.5), TestFunction::clamp(5.0), TestFunction::bump(1.0, 1.0, 3.0)};
}

}  // namespace alphatoep

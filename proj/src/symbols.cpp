#include "alphatoep/symbols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alphatoep {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kThetaClipTol = 1e-10;
}  // namespace

void SymbolSpec::set(const MultiIndex& j, cdbl value) {
  if (j.dims() != d) throw std::domain_error("SymbolSpec::set: index dimension mismatch");
  if (value == cdbl{}) {
    coeffs.erase(j);
  } else {
    coeffs[j] = value;
  }
}

cdbl SymbolSpec::get(const MultiIndex& j) const {
  auto it = coeffs.find(j);
  return it == coeffs.end() ? cdbl{} : it->second;
}

double SymbolSpec::l1_norm() const {
  double s = 0.0;
  for (const auto& [j, c] : coeffs) s += std::abs(c);
  return s;
}

SymbolSpec symbol_1d(std::initializer_list<std::pair<long long, cdbl>> entries) {
  SymbolSpec s(1);
  for (const auto& [j, c] : entries) s.set(MultiIndex{j}, c);
  return s;
}

SymbolSpec builtin_symbol(const std::string& name) {
  if (name == "laplace1d") return symbol_1d({{0, 2.0}, {1, -1.0}, {-1, -1.0}});
  if (name == "shift1") return symbol_1d({{0, 1.0}, {1, 1.0}});
  throw std::invalid_argument("unknown builtin symbol: " + name);
}

SymbolSpec symbol_from_box_array(const std::vector<cdbl>& a, const MultiIndex& n) {
  if (static_cast<long long>(a.size()) != product(n))
    throw std::domain_error("symbol_from_box_array: array length != product(n)");
  SymbolSpec s(n.dims());
  for (long long pos = 0; pos < product(n); ++pos) s.set(lex_unrank(pos, n), a[static_cast<size_t>(pos)]);
  return s;
}

cdbl eval_symbol(const SymbolSpec& s, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != s.d) throw std::domain_error("eval_symbol: point dimension mismatch");
  cdbl acc{};
  for (const auto& [j, c] : s.coeffs) {
    double phase = 0.0;
    for (int k = 0; k < s.d; ++k) phase += static_cast<double>(j[k]) * x[k];
    acc += c * std::polar(1.0, phase);
  }
  return acc;
}

SymbolSpec fourier_coeffs_from_samples(const SampledSymbol& g, const MultiIndex& cutoff) {
  if (cutoff.dims() != g.d) throw std::invalid_argument("fourier_coeffs_from_samples: cutoff dimension mismatch");
  if (!all_positive(cutoff)) throw std::invalid_argument("fourier_coeffs_from_samples: cutoff must be positive");

  MultiIndex grid = cutoff;
  for (int k = 0; k < g.d; ++k) {
    long long hint = (g.grid_hint.dims() == g.d) ? g.grid_hint[k] : 0;
    grid[k] = hint > 0 ? hint : 4 * (cutoff[k] + 1);
    if (grid[k] < 2 * cutoff[k] + 1)
      throw std::invalid_argument("fourier_coeffs_from_samples: grid too small for cutoff");
  }

  // Sample once over the full grid, then project onto each requested mode.
  const long long total = product(grid);
  std::vector<cdbl> samples(static_cast<size_t>(total));
  std::vector<double> x(static_cast<size_t>(g.d));
  MultiIndex t = zeros(g.d);
  long long pos = 0;
  do {
    for (int k = 0; k < g.d; ++k) x[static_cast<size_t>(k)] = -std::numbers::pi + kTwoPi * (static_cast<double>(t[k]) + 0.5) / static_cast<double>(grid[k]);
    samples[static_cast<size_t>(pos++)] = g.sampler(x);
  } while (next_in_box(t, grid));

  SymbolSpec out(g.d);
  MultiIndex shifted = zeros(g.d);  // j + cutoff, iterated over [0, 2*cutoff]
  MultiIndex jbox = cutoff;
  for (int k = 0; k < g.d; ++k) jbox[k] = 2 * cutoff[k] + 1;
  do {
    MultiIndex j = shifted;
    for (int k = 0; k < g.d; ++k) j[k] -= cutoff[k];
    cdbl acc{};
    t = zeros(g.d);
    pos = 0;
    do {
      double phase = 0.0;
      for (int k = 0; k < g.d; ++k) {
        double xk = -std::numbers::pi + kTwoPi * (static_cast<double>(t[k]) + 0.5) / static_cast<double>(grid[k]);
        phase -= static_cast<double>(j[k]) * xk;
      }
      acc += samples[static_cast<size_t>(pos++)] * std::polar(1.0, phase);
    } while (next_in_box(t, grid));
    out.set(j, acc / static_cast<double>(total));
  } while (next_in_box(shifted, jbox));
  return out;
}

SymbolSpec autocorrelate(const SymbolSpec& s) {
  SymbolSpec out(s.d);
  for (const auto& [j1, c1] : s.coeffs)
    for (const auto& [j2, c2] : s.coeffs) {
      MultiIndex k = sub(j1, j2);
      out.set(k, out.get(k) + c1 * std::conj(c2));
    }
  return out;
}

SymbolSpec multiply_symbols(const SymbolSpec& a, const SymbolSpec& b) {
  if (a.d != b.d) throw std::domain_error("multiply_symbols: dimension mismatch");
  SymbolSpec out(a.d);
  for (const auto& [j1, c1] : a.coeffs)
    for (const auto& [j2, c2] : b.coeffs) {
      MultiIndex k = add(j1, j2);
      out.set(k, out.get(k) + c1 * c2);
    }
  return out;
}

SymbolSpec folded_square_symbol(const SymbolSpec& s, const MultiIndex& alpha) {
  if (alpha.dims() != s.d) throw std::domain_error("folded_square_symbol: alpha dimension mismatch");
  if (!all_positive(alpha))
    throw std::domain_error("folded_square_symbol: alpha must be strictly positive (route zero components through the degenerate reduction)");
  SymbolSpec ac = autocorrelate(s);
  SymbolSpec out(s.d);
  for (const auto& [j, c] : ac.coeffs) {
    MultiIndex q = j;
    bool divisible = true;
    for (int k = 0; k < s.d; ++k) {
      if (j[k] % alpha[k] != 0) {
        divisible = false;
        break;
      }
      q[k] = j[k] / alpha[k];
    }
    if (divisible) out.set(q, c);
  }
  return out;
}

ThetaSymbol make_theta(const SymbolSpec& f, const MultiIndex& alpha) {
  return ThetaSymbol{folded_square_symbol(f, alpha), alpha};
}

double theta_eval(const ThetaSymbol& th, const std::vector<double>& x, const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != th.alpha.dims()) throw std::domain_error("theta_eval: t dimension mismatch");
  for (int k = 0; k < th.alpha.dims(); ++k) {
    // t = 1/alpha belongs to the nonzero branch.
    if (t[static_cast<size_t>(k)] > 1.0 / static_cast<double>(th.alpha[k])) return 0.0;
  }
  double v = eval_symbol(th.base, x).real();
  if (v < 0.0) {
    if (v < -kThetaClipTol) throw std::runtime_error("theta_eval: folded square significantly negative");
    v = 0.0;
  }
  return std::sqrt(v);
}

std::vector<cdbl> wrap_coeffs(const SymbolSpec& s, const MultiIndex& n) {
  if (n.dims() != s.d) throw std::domain_error("wrap_coeffs: size dimension mismatch");
  if (!all_positive(n)) throw std::domain_error("wrap_coeffs: sizes must be positive");
  std::vector<cdbl> a(static_cast<size_t>(product(n)));
  for (const auto& [j, c] : s.coeffs) a[static_cast<size_t>(lex_rank(mod_vec(j, n), n))] += c;
  return a;
}

}  // namespace alphatoep

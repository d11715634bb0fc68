#include "alphatoep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphatoep/distribution.hpp"
#include "alphatoep/io.hpp"
#include "alphatoep/multigrid.hpp"
#include "alphatoep/parallel.hpp"
#include "alphatoep/rng.hpp"
#include "alphatoep/spectra.hpp"
#include "alphatoep/structured.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

namespace {

enum class OutputFormat { Csv, Json, MatrixText };

struct RunConfig {
  std::string builtin;
  std::string coeffs;
  std::string coeff_file;
  std::string n_spec = "8";
  std::string alpha_spec;
  std::string kind = "toeplitz";
  std::string sizes_spec;
  std::string mode = "oracle";
  std::string q_coeffs = "1";
  uint64_t seed = 0;
  std::string out_path;
  std::string format;
  // verify knobs
  long long max_n = 16;
  double tolerance = 1e-10;
  int seeds = 2;
  bool inject_fault = false;
};

MultiIndex parse_multiindex(const std::string& text, const char* what) {
  MultiIndex m;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
    m.v.push_back(v);
  }
  if (m.dims() == 0) throw std::invalid_argument(std::string(what) + ": empty list");
  return m;
}

// Items separated by commas; multilevel items use 'x', e.g. "16,32" or "2x3,2x4".
std::vector<MultiIndex> parse_sizes(const std::string& text) {
  std::vector<MultiIndex> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    MultiIndex m;
    std::stringstream is(item);
    std::string tok;
    while (std::getline(is, tok, 'x')) m.v.push_back(std::stoll(tok));
    sizes.push_back(std::move(m));
  }
  if (sizes.empty()) throw std::invalid_argument("--sizes: empty list");
  return sizes;
}

// "re" or "re+imi" tokens, e.g. "1", "-0.5", "1+2i", "0.5-1i", "2i".
cdbl parse_complex_token(std::string tok) {
  if (tok.empty()) throw std::invalid_argument("empty coefficient token");
  if (tok.back() != 'i') return {std::stod(tok), 0.0};
  tok.pop_back();
  if (tok.empty() || tok == "+" || tok == "-") return {0.0, tok == "-" ? -1.0 : 1.0};
  // split at the last sign that is not leading and not part of an exponent
  size_t split = std::string::npos;
  for (size_t p = tok.size(); p-- > 1;) {
    if ((tok[p] == '+' || tok[p] == '-') && tok[p - 1] != 'e' && tok[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, std::stod(tok)};
  const double re = std::stod(tok.substr(0, split));
  std::string imag = tok.substr(split);
  if (imag == "+") imag = "1";
  if (imag == "-") imag = "-1";
  return {re, std::stod(imag)};
}

std::vector<cdbl> parse_coeff_list(const std::string& text) {
  std::vector<cdbl> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(parse_complex_token(tok));
  }
  if (out.empty()) throw std::invalid_argument("--coeffs: empty list");
  return out;
}

/// Resolves the configured symbol source. Inline coefficient lists are
/// lexicographic over the box [0,n); files and builtins carry explicit
/// (possibly negative) indices.
SymbolSpec resolve_symbol(const RunConfig& cfg, const MultiIndex& n) {
  const int sources = (!cfg.builtin.empty()) + (!cfg.coeffs.empty()) + (!cfg.coeff_file.empty());
  if (sources != 1)
    throw std::invalid_argument("exactly one symbol source required (--builtin, --coeffs or --coeff-file)");
  if (!cfg.builtin.empty()) {
    SymbolSpec s = builtin_symbol(cfg.builtin);
    if (s.d != n.dims()) throw std::invalid_argument("builtin symbol is one-level; --n must match");
    return s;
  }
  if (!cfg.coeff_file.empty()) {
    std::ifstream in(cfg.coeff_file);
    if (!in) throw std::invalid_argument("cannot open coefficient file: " + cfg.coeff_file);
    SymbolSpec s = parse_symbol_text(in);
    if (s.d != n.dims()) throw std::invalid_argument("coefficient file dimension does not match --n");
    return s;
  }
  std::vector<cdbl> a = parse_coeff_list(cfg.coeffs);
  if (static_cast<long long>(a.size()) != product(n))
    throw std::invalid_argument("--coeffs: expected product(n) entries in lexicographic order");
  return symbol_from_box_array(a, n);
}

OutputFormat resolve_format(const RunConfig& cfg, OutputFormat fallback) {
  if (!cfg.format.empty()) {
    if (cfg.format == "csv") return OutputFormat::Csv;
    if (cfg.format == "json") return OutputFormat::Json;
    if (cfg.format == "matrix-text") return OutputFormat::MatrixText;
    throw std::invalid_argument("unknown format: " + cfg.format);
  }
  if (!cfg.out_path.empty()) {
    auto ends_with = [&](const char* suffix) {
      const std::string s(suffix);
      return cfg.out_path.size() >= s.size() && cfg.out_path.compare(cfg.out_path.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".json")) return OutputFormat::Json;
    if (ends_with(".csv")) return OutputFormat::Csv;
    if (ends_with(".txt")) return OutputFormat::MatrixText;
  }
  return fallback;
}

void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + cfg.out_path);
  f << payload;
}

nlohmann::json config_json(const RunConfig& cfg, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  if (!cfg.builtin.empty()) j["builtin"] = cfg.builtin;
  if (!cfg.coeffs.empty()) j["coeffs"] = cfg.coeffs;
  if (!cfg.coeff_file.empty()) j["coeff_file"] = cfg.coeff_file;
  j["n"] = cfg.n_spec;
  if (!cfg.alpha_spec.empty()) j["alpha"] = cfg.alpha_spec;
  j["kind"] = cfg.kind;
  j["seed"] = cfg.seed;
  return j;
}

MatrixKind parse_kind(const std::string& kind) {
  if (kind == "circulant") return MatrixKind::AlphaCirculant;
  if (kind == "toeplitz") return MatrixKind::AlphaToeplitz;
  throw std::invalid_argument("unknown kind: " + kind + " (expected circulant|toeplitz)");
}

void print_gcd_info(const MultiIndex& n, const MultiIndex& alpha, std::ostream& err) {
  for (int k = 0; k < n.dims(); ++k) {
    err << "  level " << k << ": n=" << n[k] << " alpha=" << alpha[k];
    const long long ar = reduce_alpha(alpha[k], n[k]);
    if (ar == 0) {
      err << " (degenerate shift)\n";
    } else {
      GcdData d = gcd_data(n[k], ar);
      err << " gcd=" << d.g << " n_alpha=" << d.n_alpha << " mu_alpha=" << d.mu_alpha << "\n";
    }
  }
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MultiIndex n = parse_multiindex(cfg.n_spec, "--n");
  MultiIndex alpha = cfg.alpha_spec.empty() ? ones(n.dims()) : parse_multiindex(cfg.alpha_spec, "--alpha");
  SymbolSpec s = resolve_symbol(cfg, n);
  const MatrixKind kind = parse_kind(cfg.kind);
  StructuredMatrix A = kind == MatrixKind::AlphaCirculant ? alpha_circulant(wrap_coeffs(s, n), n, alpha)
                                                          : alpha_toeplitz(s, n, alpha);
  err << to_string(A.kind) << " n=" << to_string(n) << " alpha=" << to_string(alpha) << "\n";
  print_gcd_info(n, alpha, err);
  emit(cfg, format_matrix_text(A.matrix), out);
  return 0;
}

int cmd_singvals(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MultiIndex n = parse_multiindex(cfg.n_spec, "--n");
  MultiIndex alpha = cfg.alpha_spec.empty() ? ones(n.dims()) : parse_multiindex(cfg.alpha_spec, "--alpha");
  SymbolSpec s = resolve_symbol(cfg, n);
  const MatrixKind kind = parse_kind(cfg.kind);

  SpectrumResult spec;
  if (kind == MatrixKind::AlphaCirculant) {
    spec = closed_form_singvals(s, n, alpha, kind);
  } else {
    bool degenerate = false;
    for (int k = 0; k < n.dims(); ++k) degenerate = degenerate || alpha[k] == 0;
    if (degenerate) {
      spec = zero_alpha_reduction(s, n, alpha, MatrixKind::AlphaToeplitz);
    } else {
      if (product(n) > 2048) throw std::invalid_argument("singvals: dense SVD capped at product(n) <= 2048");
      spec = svd_oracle(alpha_toeplitz(s, n, alpha).matrix);
    }
  }
  err << "singvals " << cfg.kind << " n=" << to_string(n) << " alpha=" << to_string(alpha)
      << " provenance=" << to_string(spec.provenance) << " structural_zeros=" << spec.structural_zero_count << "\n";

  if (resolve_format(cfg, OutputFormat::Csv) == OutputFormat::Json) {
    nlohmann::json j;
    j["config"] = config_json(cfg, "singvals");
    j["results"]["values"] = spec.values;
    j["results"]["structural_zero_count"] = spec.structural_zero_count;
    j["results"]["provenance"] = to_string(spec.provenance);
    emit(cfg, j.dump(2) + "\n", out);
  } else {
    emit(cfg, spectrum_csv(spec), out);
  }
  return 0;
}

struct VerifyCase {
  std::string check;
  long long n = 0;
  long long alpha = 0;
  uint64_t seed = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

SymbolSpec random_symbol_1d(long long lo, long long hi, uint64_t seed) {
  SplitMix64 rng(seed);
  SymbolSpec s(1);
  for (long long j = lo; j <= hi; ++j) s.set(MultiIndex{j}, rng.next_complex());
  return s;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<VerifyCase> cases;
  for (long long n = 2; n <= cfg.max_n; ++n) {
    for (long long alpha = 1; alpha <= std::min<long long>(n + 1, cfg.max_n); ++alpha) {
      cases.push_back({"circulant-shift-factorization", n, alpha, cfg.seed, 0.0, 0.0, false});
      cases.push_back({"shift-block-repetition", n, alpha, 0, 0.0, 0.0, false});
      if (alpha < n) {
        cases.push_back({"shift-gcd-factorization", n, alpha, 0, 0.0, 0.0, false});
        cases.push_back({"fourier-shift-refinement", n, alpha, 0, 0.0, 1e-12, false});
      }
      cases.push_back({"toeplitz-head-split", n, alpha, cfg.seed + 1, 0.0, 0.0, false});
      if (alpha >= 2) cases.push_back({"toeplitz-tail-embedding", n, alpha, cfg.seed + 2, 0.0, 0.0, false});
    }
    for (long long alpha = 0; alpha <= n + 1; ++alpha)
      for (int sd = 0; sd < cfg.seeds; ++sd) {
        cases.push_back({"circulant-closed-vs-oracle", n, alpha, cfg.seed + static_cast<uint64_t>(sd), 0.0, cfg.tolerance, false});
        cases.push_back({"circulant-fold-vs-symbol", n, alpha, cfg.seed + static_cast<uint64_t>(sd), 0.0, cfg.tolerance, false});
      }
  }

  const bool inject = cfg.inject_fault;
  parallel_for(cases.size(), [&](size_t i) {
    VerifyCase& c = cases[i];
    const MultiIndex n1{c.n};
    const MultiIndex a1{c.alpha};
    if (c.check == "circulant-shift-factorization") {
      std::vector<cdbl> a = random_coeffs(c.n, c.seed * 7919 + static_cast<uint64_t>(c.n * 131 + c.alpha));
      DenseMatrix lhs = alpha_circulant(a, n1, a1).matrix;
      DenseMatrix rhs = circulant(a, n1).matrix * shift_full(n1, a1);
      c.residual = max_abs_diff(lhs, rhs);
    } else if (c.check == "shift-block-repetition") {
      DenseMatrix Z = shift_full(n1, a1);
      GcdData d = gcd_data(c.n, c.alpha);
      DenseMatrix tiles = shift_tilde(c.n, c.alpha);
      DenseMatrix stacked = tiles;
      for (long long b = 1; b < d.g; ++b) stacked = hconcat(stacked, tiles);
      c.residual = max_abs_diff(Z, stacked);
    } else if (c.check == "shift-gcd-factorization") {
      c.residual = verify_fourier_shift_identity(c.n, c.alpha).factorization;
    } else if (c.check == "fourier-shift-refinement") {
      c.residual = verify_fourier_shift_identity(c.n, c.alpha).refinement;
    } else if (c.check == "toeplitz-head-split") {
      SymbolSpec s = random_symbol_1d(-c.alpha * (c.n - 1), c.n - 1, c.seed * 104729 + static_cast<uint64_t>(c.n * 131 + c.alpha));
      ToeplitzSplit split = toeplitz_tail_split(s, c.n, c.alpha);
      c.residual = max_abs_diff(hconcat(split.head, split.tail), alpha_toeplitz(s, n1, a1).matrix);
    } else if (c.check == "toeplitz-tail-embedding") {
      SymbolSpec s = random_symbol_1d(-c.alpha * (c.n - 1), c.n - 1, c.seed * 15485863 + static_cast<uint64_t>(c.n * 131 + c.alpha));
      TailEmbeddingResidual r = tail_embedding(s, c.n, c.alpha, c.alpha * c.n);
      c.residual = std::max(r.embedding, r.flip);
    } else if (c.check == "circulant-closed-vs-oracle") {
      std::vector<cdbl> a = random_coeffs(c.n, c.seed * 6151 + static_cast<uint64_t>(c.n * 131 + c.alpha));
      SpectrumResult oracle = svd_oracle(alpha_circulant(a, n1, a1).matrix);
      if (inject) a[0] += 1e-3;  // negative-control fixture: corrupt the closed-form input
      SpectrumResult closed = alpha_circulant_singvals(a, c.n, c.alpha);
      double l1 = 0.0;
      for (const cdbl& z : a) l1 += std::abs(z);
      c.tolerance = cfg.tolerance * std::max(1.0, l1);
      c.residual = multiset_max_deviation(closed.values, oracle.values);
    } else if (c.check == "circulant-fold-vs-symbol") {
      std::vector<cdbl> a = random_coeffs(c.n, c.seed * 6151 + static_cast<uint64_t>(c.n * 131 + c.alpha));
      c.residual = multiset_max_deviation(alpha_circulant_singvals(a, c.n, c.alpha).values,
                                          alpha_circulant_singvals_symbol(a, c.n, c.alpha).values);
    }
    c.pass = c.residual <= c.tolerance;
  });

  std::ostringstream csv;
  csv << "check,n,alpha,seed,residual,tolerance,status\n";
  long long failures = 0;
  for (const VerifyCase& c : cases) {
    csv << c.check << "," << c.n << "," << c.alpha << "," << c.seed << "," << fmt_g17(c.residual) << ","
        << fmt_g17(c.tolerance) << "," << (c.pass ? "pass" : "FAIL") << "\n";
    if (!c.pass && failures++ == 0)
      err << "verification failed: " << c.check << " at n=" << c.n << " alpha=" << c.alpha << " seed=" << c.seed
          << " residual=" << fmt_g17(c.residual) << "\n";
  }
  emit(cfg, csv.str(), out);
  err << "verify: " << (cases.size() - static_cast<size_t>(failures)) << "/" << cases.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

int cmd_distribution(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.sizes_spec.empty()) throw std::invalid_argument("distribution: --sizes required");
  std::vector<MultiIndex> sizes = parse_sizes(cfg.sizes_spec);
  MultiIndex alpha = cfg.alpha_spec.empty() ? ones(sizes.front().dims()) : parse_multiindex(cfg.alpha_spec, "--alpha");
  SymbolSpec s = resolve_symbol(cfg, sizes.front());
  const MatrixKind kind = parse_kind(cfg.kind);
  const SpectrumMode mode = cfg.mode == "closed" ? SpectrumMode::ClosedForm : SpectrumMode::Oracle;

  DistributionReport report = distribution_experiment(s, alpha, sizes, default_test_functions(), mode, kind);
  err << "distribution: " << report.family << " sizes=" << cfg.sizes_spec
      << (report.all_decreasing() ? " (errors decreasing)" : " (errors NOT decreasing)") << "\n";

  if (resolve_format(cfg, OutputFormat::Csv) == OutputFormat::Json) {
    nlohmann::json j;
    j["config"] = config_json(cfg, "distribution");
    j["config"]["sizes"] = cfg.sizes_spec;
    j["config"]["mode"] = cfg.mode;
    j["results"] = distribution_json(report);
    emit(cfg, j.dump(2) + "\n", out);
  } else {
    emit(cfg, distribution_csv(report), out);
  }
  return 0;
}

int cmd_multigrid(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MultiIndex n = parse_multiindex(cfg.n_spec, "--n");
  if (n.dims() != 1) throw std::invalid_argument("multigrid: one-level sizes only");
  const long long alpha = cfg.alpha_spec.empty() ? 2 : parse_multiindex(cfg.alpha_spec, "--alpha")[0];

  ProjectionSetup setup;
  setup.n = n[0];
  setup.alpha = alpha;
  setup.f = resolve_symbol(cfg, n);
  {
    std::vector<cdbl> q = parse_coeff_list(cfg.q_coeffs);
    SymbolSpec qs(1);
    for (size_t k = 0; k < q.size(); ++k) qs.set(MultiIndex{static_cast<long long>(k)}, q[k]);
    setup.q = qs;
  }

  nlohmann::json results;
  results["n"] = setup.n;
  results["alpha"] = setup.alpha;

  if (setup.n % setup.alpha == 0) {
    StructuredMatrix coarse = project(setup);
    std::vector<double> eig_formula = projected_eigs(setup);
    std::vector<cdbl> first_col(static_cast<size_t>(coarse.matrix.rows()));
    for (long long r = 0; r < coarse.matrix.rows(); ++r) first_col[static_cast<size_t>(r)] = coarse.matrix(r, 0);
    std::vector<double> eig_direct;
    for (const cdbl& e : circulant_eigs(first_col, coarse.matrix.rows())) eig_direct.push_back(e.real());

    SpectrumResult sv_formula = projector_singvals(setup);
    DenseMatrix root = hermitian_sqrt(galerkin_matrix(setup));
    SpectrumResult sv_oracle = svd_oracle(root * shift_tilde(setup.n, setup.alpha));

    results["coarse_size"] = coarse.matrix.rows();
    results["structure_defect"] = circulant_defect(coarse.matrix);
    results["eigs_formula"] = eig_formula;
    results["eigs_direct"] = eig_direct;
    results["projector_singvals_formula"] = sv_formula.values;
    results["projector_singvals_oracle"] = sv_oracle.values;
    results["fold_min"] = *std::min_element(eig_formula.begin(), eig_formula.end());
  } else {
    GeneralProjection gp = project_general(setup);
    SpectrumResult spec = svd_oracle(gp.coarse.matrix);
    results["coarse_size"] = gp.coarse.matrix.rows();
    results["structure_defect"] = gp.defect;
    results["coarsening"] = gp.coarsening;
    results["coarse_singvals_oracle"] = spec.values;
  }

  nlohmann::json j;
  j["config"] = config_json(cfg, "multigrid");
  j["config"]["q"] = cfg.q_coeffs;
  j["results"] = std::move(results);
  err << "multigrid: n=" << setup.n << " alpha=" << setup.alpha << "\n";
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"alpha-circulant / alpha-Toeplitz spectral toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_alpha = true) {
    sub->add_option("--builtin", cfg.builtin, "builtin symbol: laplace1d (2-2cos x) or shift1 (1+e^{ix})");
    sub->add_option("--coeffs", cfg.coeffs, "inline coefficients, lexicographic over the box [0,n)");
    sub->add_option("--coeff-file", cfg.coeff_file, "coefficient file, one 'j1 .. jd re im' line per entry");
    sub->add_option("--seed", cfg.seed, "PRNG seed for randomized sweeps");
    sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv | json | matrix-text (default by extension)");
    if (with_alpha) sub->add_option("--alpha", cfg.alpha_spec, "shift vector, comma separated");
  };

  CLI::App* gen = app.add_subcommand("gen", "construct a matrix and write it in matrix-text form");
  add_common(gen);
  gen->add_option("--n", cfg.n_spec, "level sizes, comma separated")->required();
  gen->add_option("--kind", cfg.kind, "circulant | toeplitz");

  CLI::App* singvals = app.add_subcommand("singvals", "singular values (closed form where available)");
  add_common(singvals);
  singvals->add_option("--n", cfg.n_spec, "level sizes, comma separated")->required();
  singvals->add_option("--kind", cfg.kind, "circulant | toeplitz");

  CLI::App* verify = app.add_subcommand("verify", "run the structural identity and closed-form sweeps");
  verify->add_option("--seed", cfg.seed, "base PRNG seed");
  verify->add_option("--out", cfg.out_path, "output file (default: stdout)");
  verify->add_option("--max-n", cfg.max_n, "largest matrix size in the sweep");
  verify->add_option("--tolerance", cfg.tolerance, "tolerance for the floating-point checks");
  verify->add_option("--seeds", cfg.seeds, "random repetitions per (n, alpha)");
  verify->add_flag("--inject-fault", cfg.inject_fault, "test fixture: corrupt one coefficient (must fail)");

  CLI::App* distribution = app.add_subcommand("distribution", "spectral distribution convergence experiment");
  add_common(distribution);
  distribution->add_option("--sizes", cfg.sizes_spec, "sizes, e.g. 16,32,64 or 2x3,2x4")->required();
  distribution->add_option("--kind", cfg.kind, "circulant | toeplitz");
  distribution->add_option("--mode", cfg.mode, "oracle | closed");

  CLI::App* multigrid = app.add_subcommand("multigrid", "coarse-grid projection report");
  add_common(multigrid);
  multigrid->add_option("--n", cfg.n_spec, "fine size")->required();
  multigrid->add_option("--q", cfg.q_coeffs, "prolongation symbol coefficients from index 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out, err);
    if (singvals->parsed()) return cmd_singvals(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (distribution->parsed()) return cmd_distribution(cfg, out, err);
    if (multigrid->parsed()) return cmd_multigrid(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace alphatoep

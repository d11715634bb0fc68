#include "alphatoep/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace alphatoep {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_matrix_text(const DenseMatrix& m) {
  std::ostringstream os;
  os << m.rows() << " " << m.cols() << "\n";
  for (long long r = 0; r < m.rows(); ++r) {
    for (long long c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << fmt_g17(m(r, c).real()) << " " << fmt_g17(m(r, c).imag());
    }
    os << "\n";
  }
  return os.str();
}

DenseMatrix parse_matrix_text(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::invalid_argument("parse_matrix_text: missing header");
  if (rows < 0 || cols < 0) throw std::invalid_argument("parse_matrix_text: negative dimension");
  DenseMatrix m(rows, cols);
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) throw std::invalid_argument("parse_matrix_text: truncated data");
      m(r, c) = {re, im};
    }
  return m;
}

std::string format_symbol_text(const SymbolSpec& s) {
  std::ostringstream os;
  for (const auto& [j, c] : s.coeffs) {
    for (int k = 0; k < s.d; ++k) os << j[k] << " ";
    os << fmt_g17(c.real()) << " " << fmt_g17(c.imag()) << "\n";
  }
  return os.str();
}

SymbolSpec parse_symbol_text(std::istream& in) {
  SymbolSpec s;
  int d = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> tokens;
    double tok = 0.0;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 3) throw std::invalid_argument("parse_symbol_text: need at least 'j re im' per line");
    const int dims = static_cast<int>(tokens.size()) - 2;
    if (d == -1) {
      d = dims;
      s.d = d;
    } else if (dims != d) {
      throw std::invalid_argument("parse_symbol_text: inconsistent index dimension");
    }
    MultiIndex j = zeros(d);
    for (int k = 0; k < d; ++k) j[k] = static_cast<long long>(tokens[static_cast<size_t>(k)]);
    const cdbl c{tokens[static_cast<size_t>(d)], tokens[static_cast<size_t>(d) + 1]};
    s.set(j, s.get(j) + c);
  }
  if (d == -1) throw std::invalid_argument("parse_symbol_text: empty input");
  return s;
}

std::string spectrum_csv(const SpectrumResult& spec) {
  std::ostringstream os;
  os << "index,sigma,structural_zero\n";
  const long long total = static_cast<long long>(spec.values.size());
  for (long long i = 0; i < total; ++i) {
    const bool structural = i >= total - spec.structural_zero_count;
    os << i << "," << fmt_g17(spec.values[static_cast<size_t>(i)]) << "," << (structural ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string distribution_csv(const DistributionReport& report) {
  std::ostringstream os;
  os << "size,n_hat,function,sigma_functional,limit,abs_error\n";
  for (const auto& rec : report.records)
    for (size_t f = 0; f < report.function_ids.size(); ++f)
      os << to_string(rec.n) << "," << rec.n_hat << "," << report.function_ids[f] << ","
         << fmt_g17(rec.sigma_values[f]) << "," << fmt_g17(report.limits[f]) << "," << fmt_g17(rec.abs_errors[f])
         << "\n";
  return os.str();
}

nlohmann::json distribution_json(const DistributionReport& report) {
  nlohmann::json j;
  j["family"] = report.family;
  j["functions"] = report.function_ids;
  j["limits"] = report.limits;
  j["error_decreasing"] = report.error_decreasing;
  j["all_decreasing"] = report.all_decreasing();
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : report.records) {
    nlohmann::json r;
    r["n"] = to_string(rec.n);
    r["n_hat"] = rec.n_hat;
    r["sigma_functionals"] = rec.sigma_values;
    r["abs_errors"] = rec.abs_errors;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j;
}

}  // namespace alphatoep

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "alphatoep/core.hpp"
#include "alphatoep/distribution.hpp"
#include "alphatoep/spectra.hpp"
#include "alphatoep/symbols.hpp"

namespace alphatoep {

/// Shortest round-trippable decimal form of a double (17 significant digits).
std::string fmt_g17(double v);

/// Dense text format: a "rows cols" header line, then one matrix row per
/// line as whitespace-separated "re im" pairs.
std::string format_matrix_text(const DenseMatrix& m);
DenseMatrix parse_matrix_text(std::istream& in);

/// Coefficient text format: one line per coefficient, "j1 ... jd re im".
/// Blank lines and lines starting with '#' are skipped.
std::string format_symbol_text(const SymbolSpec& s);
SymbolSpec parse_symbol_text(std::istream& in);

std::string spectrum_csv(const SpectrumResult& spec);

std::string distribution_csv(const DistributionReport& report);
nlohmann::json distribution_json(const DistributionReport& report);

}  // namespace alphatoep

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pseudospline/analysis.hpp"
#include "pseudospline/cascade.hpp"
#include "pseudospline/frames.hpp"
#include "pseudospline/symbol.hpp"

namespace pseudospline {

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
/// Strict parse of a whole string; ErrorKind::kParse on failure.
double parse_double(std::string_view text);

/// CSV with header "gamma,re,im,abs" (or "t,..." for time data).
void write_csv(std::ostream& out, const SampledSymbol& symbol);
void write_csv(std::ostream& out, const FourierProfile& profile);
void write_csv(std::ostream& out, const TimeProfile& profile);
/// Signal or subband samples; the first column is the sample index.
void write_signal_csv(std::ostream& out, const std::vector<Complex>& samples);

/// Reads the re/im columns of a CSV in the layout above (header required,
/// abs column optional). ErrorKind::kParse on malformed input.
std::vector<Complex> read_values_csv(std::istream& in);

std::string to_json(const PseudoSplineOrder& order);
std::string to_json(const SampledSymbol& symbol);
/// Adds the metadata block {level_m, window, step, diagnostics}.
std::string to_json(const FourierProfile& profile, const CascadeDiagnostics* diagnostics = nullptr);
std::string to_json(const TimeProfile& profile);
std::string to_json(const FrameletBank& bank);
std::string to_json(const AnalysisReport& report);

/// Orders read from files admit the extended l range, so anything written
/// can be read back.
PseudoSplineOrder order_from_json(std::string_view text);
SampledSymbol symbol_from_json(std::string_view text);
FourierProfile profile_from_json(std::string_view text);
/// Resamples the symbols from the stored order; coefficients are taken verbatim.
FrameletBank bank_from_json(std::string_view text);

}  // namespace pseudospline

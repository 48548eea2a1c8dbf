#pragma once

// CSV form of analysis rows. Every grid shares one header; fields a grid does
// not produce are left empty. Numbers use the shortest representation that
// reads back to the same double.

#include "betamedian/analysis.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace betamedian {

inline constexpr std::string_view kCsvHeader =
    "a,b,p,d,approx,exact,rel_err,log_scaled_abs_err,tail_prob,underflow";

inline constexpr std::string_view kRateFitCsvHeader =
    "metric,p,d,slope,intercept,max_abs_residual,points,error_at_a_max";

/// Shortest round-trip decimal form of v.
std::string format_real(double v);

/// Parses a full field as a double; throws CsvError on trailing junk.
double parse_real(std::string_view text);

/// Header line plus one LF-terminated line per record.
void write_csv(std::ostream& out, std::span<const ErrorRecord> records);
std::string to_csv(std::span<const ErrorRecord> records);

/// Inverse of write_csv. Throws CsvError on a wrong header or malformed row.
std::vector<ErrorRecord> read_csv(std::istream& in);

void write_rate_fit_csv(std::ostream& out, std::span<const RateFitResult> fits);

}  // namespace betamedian

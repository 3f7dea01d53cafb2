#pragma once

#include "markovpi/series.hpp"

#include <istream>
#include <string>

namespace markovpi::cli {

/**
 * Reads a single-column series. One real per line; an optional leading "y"
 * header, blank lines and `#` comment lines are skipped.
 * Throws Error(ParseError) naming the 1-based line, or Error(EmptyFile).
 */
TimeSeriesSample read_series(const std::string& path);
TimeSeriesSample read_series(std::istream& in, const std::string& name = "<stream>");

/// Shortest round-trip decimal form of `x`.
std::string format_double(double x);

}  // namespace markovpi::cli

#pragma once

#include <string>
#include <string_view>

#include "stlf/trace.hpp"

namespace stlf {

/// Parses a trace from CSV text.
///
/// Header: `time` followed by one column per scalar channel. Vector channels
/// are spread over suffixed columns, either `<sig>_x,<sig>_y[,<sig>_z]` or
/// `<sig>_0,...,<sig>_k`, and are reassembled into one signal. A lone
/// suffixed column stays a scalar channel under its full name.
///
/// Throws SamplingError (non-uniform or non-increasing time), SchemaError
/// (ragged rows, broken suffix runs, empty body) and ValueError (non-finite or
/// unparseable cells). A single-row file gets a sample period of 1.
Trace trace_from_csv(std::string_view text);

/// Writes `time` plus every channel, shortest round-trip number formatting,
/// `\n` line endings, independent of locale.
std::string trace_to_csv(const Trace& trace);

Trace read_trace_file(const std::string& path);

/// Formats a double with the shortest representation that round-trips.
std::string format_double(double value);

}  // namespace stlf

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace hypefin::csv {

/// Reads one CSV record (RFC-4180 quoting, embedded commas/quotes/newlines).
/// Returns false at end of stream. `line` tracks the 1-based line number of
/// the record start for error reporting.
bool read_record(std::istream& in, std::vector<std::string>& fields, long& line);

/// Writes one record, quoting fields only when needed.
void write_record(std::ostream& out, const std::vector<std::string>& fields);

/// Fixed-format double for byte-stable output (shortest round-trip via %.12g).
std::string fmt(double v);

} // namespace hypefin::csv

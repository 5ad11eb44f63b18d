#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eqbearing/simulation.hpp"

namespace eqbearing {

/// Exact CSV header line (without the newline).
extern const char* const kCsvHeader;

/// One header row and one row per record; numbers with 17 significant digits,
/// LF line endings.
void write_csv(const std::vector<SampleRecord>& records, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::vector<SampleRecord>& records, const std::string& path);

/// Parses text produced by write_csv. Throws std::runtime_error on a header
/// mismatch or malformed row.
std::vector<SampleRecord> read_csv(std::istream& in);

/// Per-run batch metrics, one row per seed.
void write_metrics_csv(const BatchMetrics& metrics, std::ostream& out);

/// Self-contained SVG with three panels: bearing components (truth dashed,
/// estimate solid), estimation angle error of each observer, and measurement
/// angle error with outliers marked. Throws std::invalid_argument on empty
/// input.
std::string render_plot(const std::vector<SampleRecord>& records);
void write_plot(const std::vector<SampleRecord>& records, const std::string& path);

}  // namespace eqbearing

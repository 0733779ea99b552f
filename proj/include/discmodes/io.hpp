#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "discmodes/scan.hpp"

namespace discmodes {

enum class OutputFormat { csv, json, plot_columns };
OutputFormat parse_format(const std::string& name);
const char* to_string(OutputFormat f);

/// 17 significant digits, trailing zeros kept: 1.0 -> "1.0000000000000000".
std::string format_float(double v);

void write_records_csv(const std::vector<ScanRecord>& records, std::ostream& out);
void write_records_json(const std::vector<ScanRecord>& records, std::ostream& out);

/// Dispatch by format; plot_columns applies to radial series only and is
/// rejected here with IoError.
void write_records(const std::vector<ScanRecord>& records, OutputFormat format,
                   std::ostream& out);
void write_records(const std::vector<ScanRecord>& records, OutputFormat format,
                   const std::string& path);

/// Parse of write_records_json output; IoError on malformed input.
std::vector<ScanRecord> read_records_json(std::istream& in);

using RadialSeries = std::vector<std::pair<double, double>>;

/// plot_columns: two space-separated columns per line; csv adds a header;
/// json emits an array of {rho, value} objects.
void write_series(const RadialSeries& series, OutputFormat format, std::ostream& out);

}  // namespace discmodes

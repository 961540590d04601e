#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isav/diagnostics.hpp"
#include "isav/spectral.hpp"

namespace isav {

/// Shortest decimal form that parses back to the same double; locale-free.
std::string format_double(double v);
/// Fixed 17 significant digits, locale-free.
std::string format_double17(double v);
/// Empty string for an absent value.
std::string format_optional(const std::optional<double>& v);

/// Column order of the per-step series CSV.
const std::vector<std::string>& series_columns();

/// One CSV cell per column of `series_columns()`, in order.
std::vector<std::string> series_cells(const StepRecord& rec);

void write_series_header(std::ostream& out);
void write_series_row(std::ostream& out, const StepRecord& rec);
void write_series(std::ostream& out, const std::vector<StepRecord>& records);

struct Snapshot {
    Field field;
    double t = 0.0;
};

/// Plain-text field dump: first line "nx ny lx ly t", then one line per x
/// index with ny values, all at 17 significant digits. Reading it back is
/// bit-exact.
void write_snapshot(std::ostream& out, const Field& field, double t);
void write_snapshot(const std::filesystem::path& path, const Field& field, double t);
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Relative paths are placed under $ISAV_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output_path(const std::filesystem::path& path);

}  // namespace isav

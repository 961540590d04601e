#include "isav/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "isav/error.hpp"

namespace isav {

namespace {

std::string chars(double v, std::optional<int> precision) {
    char buf[64];
    const auto res = precision ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, *precision)
                               : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ValidationError("snapshot: cannot parse number '" + token + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) { return chars(v, std::nullopt); }
std::string format_double17(double v) { return chars(v, 17); }
std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

const std::vector<std::string>& series_columns() {
    static const std::vector<std::string> cols = {"step",  "t",       "E_orig", "E_mod",   "E2",     "D_be",
                                                  "D_bdf", "r_drift", "mass",   "min_phi", "max_phi"};
    return cols;
}

std::vector<std::string> series_cells(const StepRecord& rec) {
    return {std::to_string(rec.step),  format_double(rec.t),       format_double(rec.E_orig),
            format_double(rec.E_mod),  format_optional(rec.E2),    format_optional(rec.D_be),
            format_optional(rec.D_bdf), format_double(rec.r_drift), format_double(rec.mass),
            format_double(rec.min_phi), format_double(rec.max_phi)};
}

void write_series_header(std::ostream& out) {
    const auto& cols = series_columns();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << '\n';
}

void write_series_row(std::ostream& out, const StepRecord& rec) {
    const auto cells = series_cells(rec);
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
}

void write_series(std::ostream& out, const std::vector<StepRecord>& records) {
    write_series_header(out);
    for (const auto& rec : records) write_series_row(out, rec);
}

void write_snapshot(std::ostream& out, const Field& field, double t) {
    const Grid& g = field.grid();
    out << g.nx() << ' ' << g.ny() << ' ' << format_double17(g.lx()) << ' ' << format_double17(g.ly()) << ' '
        << format_double17(t) << '\n';
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) out << (j ? " " : "") << format_double17(field(i, j));
        out << '\n';
    }
}

void write_snapshot(const std::filesystem::path& path, const Field& field, double t) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write snapshot '" + path.string() + "'");
    write_snapshot(out, field, t);
}

Snapshot read_snapshot(std::istream& in) {
    int nx = 0;
    int ny = 0;
    std::string lx, ly, t;
    if (!(in >> nx >> ny >> lx >> ly >> t)) throw ValidationError("snapshot: malformed header");
    GridPtr grid = make_grid(nx, ny, parse_double(lx), parse_double(ly));
    std::vector<double> values;
    values.reserve(grid->size());
    std::string token;
    while (values.size() < grid->size() && in >> token) values.push_back(parse_double(token));
    if (values.size() != grid->size()) throw ValidationError("snapshot: expected " + std::to_string(grid->size()) + " values");
    if (in >> token) throw ValidationError("snapshot: trailing data");
    return Snapshot{Field(grid, std::move(values)), parse_double(t)};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open snapshot '" + path.string() + "'");
    return read_snapshot(in);
}

std::filesystem::path resolve_output_path(const std::filesystem::path& path) {
    if (path.is_absolute()) return path;
    if (const char* dir = std::getenv("ISAV_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / path;
    }
    return path;
}

}  // namespace isav

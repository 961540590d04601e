#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "isav/model.hpp"

namespace isav {

struct GridConfig {
    int nx = 128;
    int ny = 128;
    double lx = 0.0;
    double ly = 0.0;
};

/// Initial datum. Kinds: ex1, squares, disks, random, file.
struct InitConfig {
    std::string kind = "ex1";
    std::uint64_t seed = 0;  ///< random only
    std::string path;        ///< file only; a snapshot written by this tool
};

struct OutputConfig {
    std::string series_path;              ///< CSV of step records; empty disables
    std::vector<double> snapshot_times;   ///< field dumps at the nearest step
    std::string snapshot_dir = "snapshots";
    int every = 1;                        ///< CSV row stride
};

/// One fully resolved experiment. Produced by `parse_config`/`load_config`,
/// which expand presets and fill defaults.
struct RunConfig {
    std::string preset;  ///< e.g. "ex2-isav-be"; empty if none
    GridConfig grid;
    double alpha = 0.0;
    double gamma = 1.0;
    PotentialSpec potential;
    SchemeKind scheme = SchemeKind::IsavBe;
    double S = 0.0;
    double tau = 0.01;
    double t_end = 1.0;
    InitConfig init;
    OutputConfig outputs;
    bool assert_energy = false;
    bool dealias = false;
    /// Directory relative init/output paths are resolved against. Not serialized.
    std::filesystem::path base_dir;

    /// round(t_end / tau); validated to be an integer up to 1e-9 relative.
    long num_steps() const;
    ModelParams model_params() const;
    GridPtr make_grid() const;
};

struct PresetInfo {
    std::string name;
    std::string description;
};

/// Every `<example>-<scheme>` combination, ex1…ex4 × four schemes.
std::vector<PresetInfo> list_presets();

/// Parses and validates a JSON config. Unknown keys and out-of-range values
/// throw ValidationError with the offending field path.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Resolved config as pretty-printed JSON; parse_config(dump_config(c))
/// dumps to the same bytes.
std::string dump_config(const RunConfig& cfg);

/// Preset expanded with no overrides.
RunConfig preset_config(const std::string& name);

}  // namespace isav

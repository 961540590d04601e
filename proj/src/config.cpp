#include "isav/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "isav/error.hpp"
#include "json.hpp"

namespace isav {

using nlohmann::json;

namespace {

constexpr const char* kPaperPreset = "paper-preset";

const std::vector<std::string> kExamples = {"ex1", "ex2", "ex3", "ex4"};
const std::vector<std::string> kSchemes = {"sav-be", "isav-be", "sav-bdf", "isav-bdf"};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

// Example defaults. S and c_add stay symbolic until ε is known.
json example_defaults(const std::string& example) {
    const double two_pi = 2.0 * std::numbers::pi;
    if (example == "ex1") {
        return {{"grid", {{"nx", 64}, {"ny", 64}, {"lx", two_pi}, {"ly", two_pi}}},
                {"model", {{"alpha", 0.0}, {"gamma", 0.1}}},
                {"potential", {{"kind", "double-well"}, {"eps", 1.0}, {"c_add", kPaperPreset}}},
                {"S", kPaperPreset},
                {"tau", 0.0125},
                {"t_end", 0.5},
                {"init", {{"kind", "ex1"}}}};
    }
    if (example == "ex2") {
        return {{"grid", {{"nx", 128}, {"ny", 128}, {"lx", 6.4}, {"ly", 6.4}}},
                {"model", {{"alpha", 1.0}, {"gamma", 0.01}}},
                {"potential", {{"kind", "double-well"}, {"eps", 0.04}, {"c_add", kPaperPreset}}},
                {"S", kPaperPreset},
                {"tau", 0.01},
                {"t_end", 1.0},
                {"init", {{"kind", "squares"}}}};
    }
    if (example == "ex3" || example == "ex4") {
        json init = example == "ex3" ? json{{"kind", "disks"}} : json{{"kind", "random"}, {"seed", 1}};
        return {{"grid", {{"nx", 128}, {"ny", 128}, {"lx", two_pi}, {"ly", two_pi}}},
                {"model", {{"alpha", 0.0}, {"gamma", 0.5}}},
                {"potential",
                 {{"kind", "flory-huggins"}, {"eps", 0.04}, {"beta", 3.0}, {"sigma", 0.01}, {"c_add", kPaperPreset}}},
                {"S", kPaperPreset},
                {"tau", 0.01},
                {"t_end", 1.0},
                {"init", init}};
    }
    fail("preset", "unknown example '" + example + "'");
}

double paper_S(const std::string& example, double eps) {
    if (example == "ex1") return 6.0;
    if (example == "ex2") return 3.0 / (eps * eps);
    return 10.0 / (eps * eps);
}

double paper_c_add(const std::string& example, double eps) {
    if (example == "ex1") return 0.0;
    if (example == "ex2") return 1.0;
    return 0.06 / (eps * eps);
}

json generic_defaults() {
    const double two_pi = 2.0 * std::numbers::pi;
    return {{"grid", {{"nx", 64}, {"ny", 64}, {"lx", two_pi}, {"ly", two_pi}}},
            {"model", {{"alpha", 0.0}, {"gamma", 1.0}}},
            {"potential", {{"kind", "double-well"}, {"eps", 1.0}, {"c_add", 0.0}}},
            {"S", 0.0},
            {"tau", 0.01},
            {"t_end", 1.0},
            {"init", {{"kind", "ex1"}}}};
}

json common_defaults() {
    return {{"outputs", {{"series_path", "series.csv"}, {"field_snapshot_times", json::array()},
                         {"snapshot_dir", "snapshots"}, {"every", 1}}},
            {"assert_energy", false},
            {"dealias", false}};
}

// Objects merge key by key; everything else is replaced.
void merge_into(json& base, const json& over) {
    for (auto it = over.begin(); it != over.end(); ++it) {
        if (it->is_object() && base.contains(it.key()) && base[it.key()].is_object()) {
            merge_into(base[it.key()], *it);
        } else {
            base[it.key()] = *it;
        }
    }
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) fail(full, "missing");
    const json& v = obj.at(key);
    if (v.is_number()) {
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(full, "must be finite");
        return d;
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "pi") return std::numbers::pi;
        if (s == "2pi") return 2.0 * std::numbers::pi;
    }
    fail(full, "expected a number");
}

long get_integer(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) fail(full, "missing");
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(full, "expected an integer");
    return v.get<long>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.contains(key)) fail(full, "missing");
    if (!obj.at(key).is_string()) fail(full, "expected a string");
    return obj.at(key).get<std::string>();
}

bool get_bool(const json& obj, const std::string& key) {
    if (!obj.at(key).is_boolean()) fail(key, "expected true or false");
    return obj.at(key).get<bool>();
}

std::pair<std::string, std::string> split_preset(const std::string& name) {
    const auto dash = name.find('-');
    if (dash == std::string::npos) fail("preset", "expected <example>-<scheme>, got '" + name + "'");
    std::string example = name.substr(0, dash);
    std::string scheme = name.substr(dash + 1);
    if (std::find(kExamples.begin(), kExamples.end(), example) == kExamples.end() ||
        std::find(kSchemes.begin(), kSchemes.end(), scheme) == kSchemes.end()) {
        fail("preset", "unknown preset '" + name + "'");
    }
    return {example, scheme};
}

RunConfig from_json(const json& user, const std::filesystem::path& base_dir) {
    check_keys(user, "", {"preset", "grid", "model", "potential", "scheme", "S", "tau", "t_end", "init", "outputs",
                          "assert_energy", "dealias"});

    std::string example;
    json merged;
    RunConfig cfg;
    if (user.contains("preset")) {
        if (!user.at("preset").is_string()) fail("preset", "expected a string");
        cfg.preset = user.at("preset").get<std::string>();
        auto [ex, scheme] = split_preset(cfg.preset);
        example = ex;
        merged = example_defaults(example);
        merged["scheme"] = scheme;
    } else {
        if (!user.contains("scheme")) fail("scheme", "missing (required when no preset is given)");
        merged = generic_defaults();
    }
    merge_into(merged, common_defaults());
    merge_into(merged, user);
    merged.erase("preset");

    // grid
    const json& g = merged.at("grid");
    check_keys(g, "grid", {"nx", "ny", "lx", "ly"});
    cfg.grid.nx = static_cast<int>(get_integer(g, "nx", "grid"));
    cfg.grid.ny = static_cast<int>(get_integer(g, "ny", "grid"));
    cfg.grid.lx = get_number(g, "lx", "grid");
    cfg.grid.ly = get_number(g, "ly", "grid");
    if (cfg.grid.nx < 4 || cfg.grid.nx % 2) fail("grid.nx", "must be even and >= 4");
    if (cfg.grid.ny < 4 || cfg.grid.ny % 2) fail("grid.ny", "must be even and >= 4");
    if (!(cfg.grid.lx > 0.0)) fail("grid.lx", "must be positive");
    if (!(cfg.grid.ly > 0.0)) fail("grid.ly", "must be positive");

    // model
    const json& m = merged.at("model");
    check_keys(m, "model", {"alpha", "gamma"});
    cfg.alpha = get_number(m, "alpha", "model");
    cfg.gamma = get_number(m, "gamma", "model");
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) fail("model.alpha", "must be 0 or lie in (0, 1]");
    if (!(cfg.gamma > 0.0)) fail("model.gamma", "must be positive");

    // potential
    const json& p = merged.at("potential");
    check_keys(p, "potential", {"kind", "eps", "beta", "sigma", "c_add"});
    try {
        cfg.potential.kind = potential_kind_from_string(get_string(p, "kind", "potential"));
    } catch (const ValidationError& e) {
        fail("potential.kind", e.what());
    }
    cfg.potential.eps = get_number(p, "eps", "potential");
    if (!(cfg.potential.eps > 0.0)) fail("potential.eps", "must be positive");
    if (cfg.potential.kind == PotentialKind::FloryHugginsReg) {
        cfg.potential.beta = get_number(p, "beta", "potential");
        cfg.potential.sigma = get_number(p, "sigma", "potential");
        if (!(cfg.potential.sigma > 0.0 && cfg.potential.sigma <= 0.5)) fail("potential.sigma", "must lie in (0, 0.5]");
    } else if (p.contains("beta") || p.contains("sigma")) {
        fail("potential", "beta and sigma apply to flory-huggins only");
    }
    if (p.contains("c_add") && p.at("c_add") == kPaperPreset) {
        if (example.empty()) fail("potential.c_add", "'paper-preset' needs a preset");
        cfg.potential.c_add = paper_c_add(example, cfg.potential.eps);
    } else {
        cfg.potential.c_add = p.contains("c_add") ? get_number(p, "c_add", "potential") : 0.0;
    }
    if (!(cfg.potential.c_add >= 0.0)) fail("potential.c_add", "must be >= 0");

    // scheme and time stepping
    try {
        cfg.scheme = scheme_kind_from_string(get_string(merged, "scheme", ""));
    } catch (const ValidationError& e) {
        fail("scheme", e.what());
    }
    if (merged.at("S") == kPaperPreset) {
        if (example.empty()) fail("S", "'paper-preset' needs a preset");
        cfg.S = paper_S(example, cfg.potential.eps);
    } else {
        cfg.S = get_number(merged, "S", "");
    }
    if (!(cfg.S >= 0.0)) fail("S", "must be >= 0");
    cfg.tau = get_number(merged, "tau", "");
    cfg.t_end = get_number(merged, "t_end", "");
    if (!(cfg.tau > 0.0)) fail("tau", "must be positive");
    if (!(cfg.t_end > 0.0)) fail("t_end", "must be positive");
    const double ratio = cfg.t_end / cfg.tau;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        fail("t_end", "must be an integer multiple of tau");
    }

    // init
    const json& in = merged.at("init");
    check_keys(in, "init", {"kind", "seed", "path"});
    cfg.init.kind = get_string(in, "kind", "init");
    static const std::set<std::string> kinds = {"ex1", "squares", "disks", "random", "file"};
    if (!kinds.count(cfg.init.kind)) fail("init.kind", "expected ex1, squares, disks, random or file");
    if (in.contains("seed")) {
        if (!in.at("seed").is_number_integer() || in.at("seed").get<long long>() < 0) fail("init.seed", "expected a non-negative integer");
        cfg.init.seed = in.at("seed").get<std::uint64_t>();
    }
    if (in.contains("path")) cfg.init.path = get_string(in, "path", "init");
    if (cfg.init.kind == "file" && cfg.init.path.empty()) fail("init.path", "required for kind 'file'");

    // outputs
    const json& o = merged.at("outputs");
    check_keys(o, "outputs", {"series_path", "field_snapshot_times", "snapshot_dir", "every"});
    cfg.outputs.series_path = get_string(o, "series_path", "outputs");
    cfg.outputs.snapshot_dir = get_string(o, "snapshot_dir", "outputs");
    cfg.outputs.every = static_cast<int>(get_integer(o, "every", "outputs"));
    if (cfg.outputs.every < 1) fail("outputs.every", "must be >= 1");
    const json& times = o.at("field_snapshot_times");
    if (!times.is_array()) fail("outputs.field_snapshot_times", "expected an array");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!times[k].is_number()) fail("outputs.field_snapshot_times[" + std::to_string(k) + "]", "expected a number");
        const double t = times[k].get<double>();
        if (!(t >= 0.0 && t <= cfg.t_end + 0.5 * cfg.tau)) {
            fail("outputs.field_snapshot_times[" + std::to_string(k) + "]", "outside [0, t_end]");
        }
        cfg.outputs.snapshot_times.push_back(t);
    }

    cfg.assert_energy = get_bool(merged, "assert_energy");
    cfg.dealias = get_bool(merged, "dealias");
    cfg.base_dir = base_dir;
    return cfg;
}

}  // namespace

long RunConfig::num_steps() const { return std::lround(t_end / tau); }

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.alpha = alpha;
    p.gamma = gamma;
    p.S = S;
    p.tau = tau;
    p.potential = potential;
    p.dealias = dealias;
    p.assert_energy = assert_energy;
    return p;
}

GridPtr RunConfig::make_grid() const { return isav::make_grid(grid.nx, grid.ny, grid.lx, grid.ly); }

std::vector<PresetInfo> list_presets() {
    static const std::vector<std::pair<std::string, std::string>> examples = {
        {"ex1", "double-well accuracy test, phi0 = 1 + 0.5 sin x sin y on [0,2pi]^2, eps=1, gamma=0.1, S=6"},
        {"ex2", "double-well Cahn-Hilliard, two squares on [0,6.4]^2, eps=0.04, gamma=0.01, S=3/eps^2, c_add=1"},
        {"ex3", "regularized Flory-Huggins, two disks on [0,2pi]^2, eps=0.04, beta=3, sigma=0.01, S=10/eps^2"},
        {"ex4", "regularized Flory-Huggins, random data 0.5 + 0.2 Rand, otherwise as ex3"},
    };
    std::vector<PresetInfo> out;
    for (const auto& [ex, desc] : examples) {
        for (const auto& scheme : kSchemes) out.push_back({ex + "-" + scheme, desc});
    }
    return out;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    json user;
    try {
        user = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(user, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

RunConfig preset_config(const std::string& name) { return parse_config(json{{"preset", name}}.dump()); }

std::string dump_config(const RunConfig& cfg) {
    json pot = {{"kind", to_string(cfg.potential.kind)}, {"eps", cfg.potential.eps}, {"c_add", cfg.potential.c_add}};
    if (cfg.potential.kind == PotentialKind::FloryHugginsReg) {
        pot["beta"] = cfg.potential.beta;
        pot["sigma"] = cfg.potential.sigma;
    }
    json init = {{"kind", cfg.init.kind}};
    if (cfg.init.kind == "random") init["seed"] = cfg.init.seed;
    if (!cfg.init.path.empty()) init["path"] = cfg.init.path;
    json out = {{"grid", {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"lx", cfg.grid.lx}, {"ly", cfg.grid.ly}}},
                {"model", {{"alpha", cfg.alpha}, {"gamma", cfg.gamma}}},
                {"potential", pot},
                {"scheme", to_string(cfg.scheme)},
                {"S", cfg.S},
                {"tau", cfg.tau},
                {"t_end", cfg.t_end},
                {"init", init},
                {"outputs",
                 {{"series_path", cfg.outputs.series_path},
                  {"field_snapshot_times", cfg.outputs.snapshot_times},
                  {"snapshot_dir", cfg.outputs.snapshot_dir},
                  {"every", cfg.outputs.every}}},
                {"assert_energy", cfg.assert_energy},
                {"dealias", cfg.dealias}};
    if (!cfg.preset.empty()) out["preset"] = cfg.preset;
    return out.dump(2) + "\n";
}

}  // namespace isav

// Command-line driver: run, converge, compare, presets list.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isav/config.hpp"
#include "isav/error.hpp"
#include "isav/io.hpp"
#include "isav/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitScheme = 3;

// Writes to `path` (resolved like every other output) or stdout when empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    const auto resolved = isav::resolve_output_path(path);
    if (resolved.has_parent_path()) std::filesystem::create_directories(resolved.parent_path());
    std::ofstream out(resolved);
    if (!out) throw isav::ValidationError("cannot write '" + resolved.string() + "'");
    fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral SAV / iSAV gradient-flow solver"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one simulation and write its series CSV");
    std::string run_config;
    run->add_option("config", run_config, "JSON config file")->required();

    auto* converge = app.add_subcommand("converge", "Temporal or spatial convergence table");
    std::string conv_config;
    std::vector<double> taus;
    std::vector<int> grids;
    isav::ConvergenceOptions conv_opts;
    std::string conv_out;
    converge->add_option("config", conv_config, "JSON config file")->required();
    auto* taus_opt = converge->add_option("--taus", taus, "time steps, e.g. 0.05,0.025")->delimiter(',');
    auto* grids_opt = converge->add_option("--grids", grids, "grid sizes per side, e.g. 4,8,12")->delimiter(',');
    taus_opt->excludes(grids_opt);
    converge->add_option("--ref-tau", conv_opts.ref_tau, "reference step (temporal)")->capture_default_str();
    converge->add_option("--ref-grid", conv_opts.ref_grid, "reference grid size (spatial)")->capture_default_str();
    converge->add_option("--out", conv_out, "output CSV (default stdout)");

    auto* compare = app.add_subcommand("compare", "Run two configs and merge their series");
    std::string cmp_a, cmp_b, cmp_out;
    compare->add_option("configA", cmp_a, "first config")->required();
    compare->add_option("configB", cmp_b, "second config")->required();
    compare->add_option("--out", cmp_out, "merged CSV (default stdout)");

    auto* presets = app.add_subcommand("presets", "Preset utilities");
    auto* presets_list = presets->add_subcommand("list", "List preset names");
    presets->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*run) {
            const isav::RunConfig cfg = isav::load_config(run_config);
            const auto result = isav::run_simulation(cfg);
            std::cerr << "completed " << cfg.num_steps() << " steps, t = " << result.final_state.t << '\n';
        } else if (*converge) {
            if (taus.empty() && grids.empty()) throw isav::ValidationError("converge: give --taus or --grids");
            const isav::RunConfig cfg = isav::load_config(conv_config);
            const bool temporal = !taus.empty();
            const auto rows = temporal ? isav::temporal_study(cfg, taus, conv_opts)
                                       : isav::spatial_study(cfg, grids, conv_opts);
            with_output(conv_out, [&](std::ostream& out) {
                isav::write_convergence(out, temporal ? isav::StudyKind::Temporal : isav::StudyKind::Spatial, rows);
            });
        } else if (*compare) {
            const auto cmp = isav::compare_schemes(isav::load_config(cmp_a), isav::load_config(cmp_b), {true, false});
            with_output(cmp_out, [&](std::ostream& out) { isav::write_comparison(out, cmp); });
        } else if (*presets_list) {
            for (const auto& p : isav::list_presets()) std::cout << p.name << '\t' << p.description << '\n';
        }
    } catch (const isav::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const isav::SchemeError& e) {
        std::cerr << "scheme failure at step " << e.step() << ": " << e.what() << '\n';
        return kExitScheme;
    }
    return 0;
}

#include "isav/runner.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <memory>
#include <ostream>
#include <set>

#include "isav/error.hpp"
#include "isav/initial.hpp"
#include "isav/io.hpp"
#include "isav/schemes.hpp"

namespace isav {

namespace {

std::string snapshot_name(long step) {
    std::string digits = std::to_string(step);
    if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
    return "phi_" + digits + ".txt";
}


void require_whole_steps(double t_end, double tau) {
    const double ratio = t_end / tau;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw ValidationError("t_end must be an integer multiple of tau");
    }
}

std::optional<double> observed_order(double e_prev, double e, double ratio) {
    if (!(e_prev > 0.0) || !(e > 0.0) || ratio == 1.0) return std::nullopt;
    return std::log(e_prev / e) / std::log(ratio);
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, const RunOptions& options) {
    require_whole_steps(cfg.t_end, cfg.tau);
    const GridPtr grid = cfg.make_grid();
    const ModelParams params = cfg.model_params();
    Solver solver(grid, params);
    SchemeState state = [&] {
        try {
            return solver.initial_state(cfg.scheme, make_initial(cfg, grid));
        } catch (SchemeError& e) {
            if (e.step() < 0) e.set_step(0);
            throw;
        }
    }();
    const long steps = cfg.num_steps();

    std::set<long> snapshot_steps;
    for (double t : cfg.outputs.snapshot_times) snapshot_steps.insert(std::lround(t / cfg.tau));

    std::unique_ptr<std::ofstream> csv;
    if (options.write_files && options.diagnostics && !cfg.outputs.series_path.empty()) {
        const auto path = resolve_output_path(cfg.outputs.series_path);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        csv = std::make_unique<std::ofstream>(path);
        if (!*csv) throw ValidationError("cannot write series '" + path.string() + "'");
        write_series_header(*csv);
    }
    const auto snapshot_dir = resolve_output_path(cfg.outputs.snapshot_dir);
    auto maybe_snapshot = [&](const SchemeState& s) {
        if (options.write_files && snapshot_steps.count(s.step)) {
            write_snapshot(snapshot_dir / snapshot_name(s.step), s.phi, s.t);
        }
    };

    RunResult result{{}, state};
    StepRecord prev;
    auto emit = [&](const StepRecord& rec) {
        if (rec.step % cfg.outputs.every != 0 && rec.step != steps) return;
        result.records.push_back(rec);
        if (csv) write_series_row(*csv, rec);
    };
    if (options.diagnostics) {
        prev = record_state(state, params, solver.symbols(), solver.transform());
        emit(prev);
    }
    maybe_snapshot(state);

    for (long n = 0; n < steps; ++n) {
        try {
            SchemeState next = solver.next_state(state);
            if (options.diagnostics) {
                StepRecord rec = record_step(&prev, next, params, solver.symbols(), solver.transform());
                if (params.assert_energy) check_energy_law(cfg.scheme, prev, rec);
                emit(rec);
                prev = rec;
            }
            state = std::move(next);
        } catch (SchemeError& e) {
            if (e.step() < 0) e.set_step(n + 1);
            if (csv) csv->flush();
            throw;
        }
        maybe_snapshot(state);
    }
    result.final_state = std::move(state);
    return result;
}

Field reference_solution(const RunConfig& base, StudyKind kind, const ConvergenceOptions& options) {
    RunConfig cfg = base;
    cfg.assert_energy = false;
    if (kind == StudyKind::Temporal) {
        cfg.scheme = SchemeKind::SavBdf;
        cfg.tau = options.ref_tau;
        require_whole_steps(cfg.t_end, cfg.tau);
    } else {
        cfg.grid.nx = options.ref_grid;
        cfg.grid.ny = options.ref_grid;
    }
    return run_simulation(cfg, RunOptions{false, false}).final_state.phi;
}

std::vector<ConvergenceRow> temporal_study(const RunConfig& base, std::span<const double> taus,
                                           const ConvergenceOptions& options) {
    if (taus.empty()) throw ValidationError("temporal study needs at least one tau");
    const RunOptions quiet{false, false};
    const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
    auto ref_future = std::async(policy, [&base, &options] {
        return options.reference ? *options.reference : reference_solution(base, StudyKind::Temporal, options);
    });
    std::vector<std::future<Field>> members;
    for (double tau : taus) {
        RunConfig cfg = base;
        cfg.tau = tau;
        require_whole_steps(cfg.t_end, tau);
        members.push_back(std::async(policy, [cfg, quiet] { return run_simulation(cfg, quiet).final_state.phi; }));
    }
    const Field ref = ref_future.get();
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < taus.size(); ++k) {
        ConvergenceRow row;
        row.tau = taus[k];
        row.n = static_cast<int>(std::lround(base.t_end / taus[k]));
        row.error = h1_error(members[k].get(), ref);
        if (k > 0) row.order = observed_order(rows.back().error, row.error, taus[k - 1] / taus[k]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ConvergenceRow> spatial_study(const RunConfig& base, std::span<const int> grids,
                                          const ConvergenceOptions& options) {
    if (grids.empty()) throw ValidationError("spatial study needs at least one grid");
    const RunOptions quiet{false, false};
    const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
    auto with_grid = [&base](int n) {
        RunConfig cfg = base;
        cfg.grid.nx = n;
        cfg.grid.ny = n;
        return cfg;
    };
    auto ref_future = std::async(policy, [&base, &options] {
        return options.reference ? *options.reference : reference_solution(base, StudyKind::Spatial, options);
    });
    std::vector<std::future<Field>> members;
    for (int n : grids) {
        RunConfig cfg = with_grid(n);
        members.push_back(std::async(policy, [cfg, quiet] { return run_simulation(cfg, quiet).final_state.phi; }));
    }
    const Field ref = ref_future.get();
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < grids.size(); ++k) {
        ConvergenceRow row;
        row.n = grids[k];
        row.tau = base.tau;
        row.error = h1_error(members[k].get(), ref);
        if (k > 0) row.order = observed_order(rows.back().error, row.error, static_cast<double>(grids[k]) / grids[k - 1]);
        rows.push_back(row);
    }
    return rows;
}

void write_convergence(std::ostream& out, StudyKind kind, const std::vector<ConvergenceRow>& rows) {
    out << (kind == StudyKind::Temporal ? "N" : "grid") << ",tau,h1_error,order\n";
    for (const auto& row : rows) {
        out << row.n << ',' << format_double(row.tau) << ',' << format_double(row.error) << ','
            << format_optional(row.order) << '\n';
    }
}

Comparison compare_schemes(const RunConfig& a, const RunConfig& b, const RunOptions& options) {
    if (a.tau != b.tau) throw ValidationError("compare: tau differs between configs");
    if (a.t_end != b.t_end) throw ValidationError("compare: t_end differs between configs");
    if (a.grid.nx != b.grid.nx || a.grid.ny != b.grid.ny || a.grid.lx != b.grid.lx || a.grid.ly != b.grid.ly) {
        throw ValidationError("compare: grids differ between configs");
    }
    if (a.outputs.every != b.outputs.every) throw ValidationError("compare: outputs.every differs between configs");
    RunOptions opts = options;
    opts.diagnostics = true;
    Comparison cmp{run_simulation(a, opts), run_simulation(b, opts)};
    return cmp;
}

void write_comparison(std::ostream& out, const Comparison& cmp) {
    const auto& cols = series_columns();
    out << "step,t";
    for (std::size_t c = 2; c < cols.size(); ++c) out << ',' << cols[c] << "_a," << cols[c] << "_b";
    out << '\n';
    const std::size_t rows = std::min(cmp.a.records.size(), cmp.b.records.size());
    for (std::size_t r = 0; r < rows; ++r) {
        const auto ca = series_cells(cmp.a.records[r]);
        const auto cb = series_cells(cmp.b.records[r]);
        out << ca[0] << ',' << ca[1];
        for (std::size_t c = 2; c < cols.size(); ++c) out << ',' << ca[c] << ',' << cb[c];
        out << '\n';
    }
}

}  // namespace isav

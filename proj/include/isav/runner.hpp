#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isav/config.hpp"
#include "isav/diagnostics.hpp"
#include "isav/model.hpp"

namespace isav {

struct RunOptions {
    bool diagnostics = true;   ///< compute StepRecords; off for reference runs
    bool write_files = true;   ///< honour cfg.outputs (CSV and snapshots)
};

struct RunResult {
    std::vector<StepRecord> records;  ///< every `outputs.every`-th level, always including 0
    SchemeState final_state;
};

/// Steps from t = 0 to t_end. A SchemeError aborts the run after flushing
/// the rows written so far; its step() names the failing level.
RunResult run_simulation(const RunConfig& cfg, const RunOptions& options = {});

enum class StudyKind { Temporal, Spatial };

struct ConvergenceOptions {
    double ref_tau = 1e-5;  ///< temporal study: SAV-BDF reference step
    int ref_grid = 64;      ///< spatial study: reference resolution (same scheme, same tau)
    bool parallel = true;   ///< run members concurrently
    /// Precomputed reference at t_end; skips the reference run when set.
    std::optional<Field> reference;
};

/// The field a study of `kind` compares against: SAV-BDF at ref_tau
/// (temporal) or the same config on a ref_grid² grid (spatial).
Field reference_solution(const RunConfig& base, StudyKind kind, const ConvergenceOptions& options = {});

struct ConvergenceRow {
    int n = 0;           ///< steps (temporal) or grid points per side (spatial)
    double tau = 0.0;
    double error = 0.0;  ///< ‖φ − φ_ref‖_{H¹} at t_end
    std::optional<double> order;
};

/// H¹ errors at t_end against a SAV-BDF reference at options.ref_tau on the
/// same grid. Order between rows i−1, i is log(e_{i−1}/e_i)/log(τ_{i−1}/τ_i).
std::vector<ConvergenceRow> temporal_study(const RunConfig& base, std::span<const double> taus,
                                           const ConvergenceOptions& options = {});

/// H¹ errors at t_end on n×n grids against the same scheme and tau on a
/// ref_grid² grid, interpolated spectrally. Order uses log(n_i/n_{i−1}).
std::vector<ConvergenceRow> spatial_study(const RunConfig& base, std::span<const int> grids,
                                          const ConvergenceOptions& options = {});

void write_convergence(std::ostream& out, StudyKind kind, const std::vector<ConvergenceRow>& rows);

struct Comparison {
    RunResult a;
    RunResult b;
};

/// Runs two configs that differ only in scheme and aligns their series.
/// Throws ValidationError if tau, t_end or the grid differ.
Comparison compare_schemes(const RunConfig& a, const RunConfig& b, const RunOptions& options = {});

/// step,t then every other series column twice, suffixed _a and _b.
void write_comparison(std::ostream& out, const Comparison& cmp);

}  // namespace isav

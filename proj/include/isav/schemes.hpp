#pragma once

#include "isav/diagnostics.hpp"
#include "isav/model.hpp"
#include "isav/spectral.hpp"

namespace isav {

/// diag·φ + weight·⟨b, φ⟩·gb = rhs, with diag a per-mode symbol ≥ 1.
struct RankOneSystem {
    Symbol diag;
    Field gb;   ///< 𝒢b
    Field b;
    Field rhs;
    double weight = 0.0;
};

/// Solves a RankOneSystem with two diagonal solves and one scalar equation
/// for ⟨b, φ⟩ (Sherman–Morrison in the L² inner product).
Field rank_one_solve(const RankOneSystem& sys, SpectralTransform& transform);

struct DenseSolution {
    Field phi;
    double rcond;  ///< reciprocal condition estimate of the assembled matrix
};

/// Verification oracle: assembles the full (nx·ny)² matrix of the operator
/// from an explicit cosine sum over the symbol, adds the quadrature-weighted
/// rank-one term, and solves by LU. Grids up to 16×16 only.
DenseSolution dense_solve_oracle(const RankOneSystem& sys);

/// Tolerances of the asserted energy laws: relative for the SAV-BE modified
/// energy, scaled by (1 + |𝓔ⁿ|) for the iSAV-BE original-energy decrement.
inline constexpr double kModifiedEnergyTol = 1e-12;
inline constexpr double kOriginalEnergyTol = 1e-10;

/// Throws SchemeError if `rec` breaks the discrete energy law of a BE scheme.
/// BDF schemes carry no unconditional law and are never rejected.
void check_energy_law(SchemeKind scheme, const StepRecord& prev, const StepRecord& rec);

struct StepOutput {
    SchemeState state;
    StepRecord record;
};

/// Time stepper for one grid and one parameter set. Owns the FFT plans, so a
/// Solver must not be shared between threads.
class Solver {
public:
    Solver(GridPtr grid, ModelParams params);

    const GridPtr& grid() const { return grid_; }
    const ModelParams& params() const { return params_; }
    const OperatorSymbols& symbols() const { return symbols_; }
    SpectralTransform& transform() { return transform_; }

    /// Level 0: r = r[φ⁰], μ⁰ = 𝓛φ⁰ + f(φ⁰). BDF states start without history;
    /// the first `step` bootstraps them with iSAV-BE.
    SchemeState initial_state(SchemeKind kind, const Field& phi0);

    /// The linear system whose solution is φⁿ⁺¹ for this state's scheme.
    RankOneSystem assemble(const SchemeState& state);

    StepOutput step_sav_be(const SchemeState& state);
    StepOutput step_isav_be(const SchemeState& state);
    StepOutput step_sav_bdf(const SchemeState& state);
    StepOutput step_isav_bdf(const SchemeState& state);

    /// Turns the level-0 state and the result of one iSAV-BE step into a BDF
    /// state at level 1. SAV-BDF gets r⁰ = r[φ⁰] and r¹ = r̃¹.
    SchemeState bootstrap_bdf(const SchemeState& initial, const SchemeState& be_step, SchemeKind target) const;

    /// Advances one level with the state's own scheme, bootstrapping BDF
    /// states that lack history. Enforces the energy law when
    /// params.assert_energy is set.
    StepOutput step(const SchemeState& state);

    /// As `step`, without diagnostics or energy checks.
    SchemeState next_state(const SchemeState& state);

    /// Relative residual of the scheme's time relation
    /// (φⁿ⁺¹−φⁿ)/τ + 𝒢μⁿ⁺¹ (BE) or (3φⁿ⁺¹−4φⁿ+φⁿ⁻¹)/(2τ) + 𝒢μⁿ⁺¹ (BDF).
    double scheme_residual(const SchemeState& before, const SchemeState& after);

private:
    struct Nonlinear {
        Field b;
        Field gb;
        double r_exact;  ///< r at the point where b is evaluated
    };
    Nonlinear nonlinear_at(const Field& phi);
    SchemeState solve_sav_be(const SchemeState& state);
    SchemeState solve_isav_be(const SchemeState& state);
    SchemeState solve_sav_bdf(const SchemeState& state);
    SchemeState solve_isav_bdf(const SchemeState& state);
    StepOutput finish(const SchemeState& before, SchemeState after);
    void require_scheme(const SchemeState& state, SchemeKind kind, bool needs_history) const;
    SchemeState advance(const SchemeState& state, Field phi_next, double r_next, Field mu) const;
    Field apply_L(const Field& u) { return transform_.apply(u, symbols_.lap); }
    Field apply_G(const Field& u) { return transform_.apply(u, symbols_.g_sym); }

    GridPtr grid_;
    ModelParams params_;
    OperatorSymbols symbols_;
    SpectralTransform transform_;
    Symbol be_diag_plain_;  ///< 1 + τ·g·|k|²
    Symbol be_diag_stab_;   ///< 1 + τ·g·(|k|² + S)
    Symbol bdf_diag_plain_; ///< 3 + 2τ·g·|k|²
    Symbol bdf_diag_stab_;  ///< 3 + 2τ·g·(|k|² + S)
    Symbol mask_;
};

}  // namespace isav

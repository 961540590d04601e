#include "isav/schemes.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

#include "isav/error.hpp"

namespace isav {

// ---------------------------------------------------------------- names

std::string to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::SavBe: return "sav-be";
        case SchemeKind::IsavBe: return "isav-be";
        case SchemeKind::SavBdf: return "sav-bdf";
        case SchemeKind::IsavBdf: return "isav-bdf";
    }
    return "unknown";
}

SchemeKind scheme_kind_from_string(const std::string& name) {
    if (name == "sav-be") return SchemeKind::SavBe;
    if (name == "isav-be") return SchemeKind::IsavBe;
    if (name == "sav-bdf") return SchemeKind::SavBdf;
    if (name == "isav-bdf") return SchemeKind::IsavBdf;
    throw ValidationError("unknown scheme '" + name + "' (expected sav-be, isav-be, sav-bdf or isav-bdf)");
}

void ModelParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("model.alpha must lie in [0, 1]");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("model.gamma must be positive");
    if (!(S >= 0.0) || !std::isfinite(S)) throw ValidationError("S must be >= 0");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be positive");
    if (!std::isfinite(tau * S) || !std::isfinite(tau * gamma)) throw ValidationError("tau*S and tau*gamma must be finite");
    potential.validate();
}

// ---------------------------------------------------------------- solves

Field rank_one_solve(const RankOneSystem& sys, SpectralTransform& transform) {
    const Symbol inv = sys.diag.reciprocal();
    const Field y_gb = transform.apply(sys.gb, inv);
    const Field y_rhs = transform.apply(sys.rhs, inv);
    const double s1 = inner(sys.b, y_gb);
    const double s2 = inner(sys.b, y_rhs);
    const double b_phi = s2 / (1.0 + sys.weight * s1);
    Field phi = y_rhs;
    phi.axpy(-sys.weight * b_phi, y_gb);
    return phi;
}

DenseSolution dense_solve_oracle(const RankOneSystem& sys) {
    const Grid& g = sys.rhs.grid();
    const int nx = g.nx();
    const int ny = g.ny();
    const int n = nx * ny;
    if (nx > 16 || ny > 16) throw ValidationError("dense_solve_oracle supports grids up to 16x16");
    if (!sys.diag.matches(g)) throw ValidationError("dense_solve_oracle: symbol shape mismatch");
    const int nyh = g.ny_half();

    auto full_symbol = [&](int p, int q) {
        if (q <= ny / 2) return sys.diag.values[static_cast<std::size_t>(p) * nyh + q];
        return sys.diag.values[static_cast<std::size_t>((nx - p) % nx) * nyh + (ny - q)];
    };

    // Convolution kernel of the real, even symbol.
    Eigen::MatrixXd kernel(nx, ny);
    for (int da = 0; da < nx; ++da) {
        for (int db = 0; db < ny; ++db) {
            double acc = 0.0;
            for (int p = 0; p < nx; ++p) {
                for (int q = 0; q < ny; ++q) {
                    const double phase = 2.0 * std::numbers::pi * (static_cast<double>(p) * da / nx +
                                                                   static_cast<double>(q) * db / ny);
                    acc += full_symbol(p, q) * std::cos(phase);
                }
            }
            kernel(da, db) = acc / n;
        }
    }

    const double h = g.cell_area();
    Eigen::MatrixXd m(n, n);
    Eigen::VectorXd rhs(n);
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < ny; ++b) {
            const int row = a * ny + b;
            rhs(row) = sys.rhs[row];
            for (int c = 0; c < nx; ++c) {
                for (int e = 0; e < ny; ++e) {
                    const int col = c * ny + e;
                    m(row, col) = kernel(((a - c) % nx + nx) % nx, ((b - e) % ny + ny) % ny) +
                                  sys.weight * sys.gb[row] * h * sys.b[col];
                }
            }
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::VectorXd x = lu.solve(rhs);
    std::vector<double> values(x.data(), x.data() + n);
    return DenseSolution{Field(sys.rhs.grid_ptr(), std::move(values)), lu.rcond()};
}

// ---------------------------------------------------------------- Solver

Solver::Solver(GridPtr grid, ModelParams params)
    : grid_(std::move(grid)),
      params_(std::move(params)),
      symbols_(OperatorSymbols::make(*grid_, params_.alpha, params_.gamma)),
      transform_(grid_) {
    params_.validate();
    const double tau = params_.tau;
    const double S = params_.S;
    auto build = [&](double base, double scale, double shift) {
        Symbol s = symbols_.g_sym;
        for (std::size_t k = 0; k < s.values.size(); ++k) {
            s.values[k] = base + scale * symbols_.g_sym.values[k] * (symbols_.lap.values[k] + shift);
        }
        return s;
    };
    be_diag_plain_ = build(1.0, tau, 0.0);
    be_diag_stab_ = build(1.0, tau, S);
    bdf_diag_plain_ = build(3.0, 2.0 * tau, 0.0);
    bdf_diag_stab_ = build(3.0, 2.0 * tau, S);
    if (params_.dealias) mask_ = dealias_mask(*grid_);
}

Solver::Nonlinear Solver::nonlinear_at(const Field& phi) {
    const double energy = bulk_energy(params_.potential, phi);
    const double root = std::sqrt(energy);
    Field b = apply_f(params_.potential, phi);
    if (params_.dealias) b = transform_.apply(b, mask_);
    b *= 1.0 / root;
    b.require_finite("b = f(phi)/sqrt(F[phi])");
    Field gb = apply_G(b);
    return Nonlinear{std::move(b), std::move(gb), root};
}

void Solver::require_scheme(const SchemeState& state, SchemeKind kind, bool needs_history) const {
    if (state.scheme != kind) {
        throw ValidationError("state belongs to " + to_string(state.scheme) + ", stepper is " + to_string(kind));
    }
    if (!(state.phi.grid() == *grid_)) throw ValidationError("state grid does not match solver grid");
    if (needs_history && !state.phi_prev) {
        throw ValidationError(to_string(kind) + " needs phi at the previous level; bootstrap first");
    }
    // The carried r of the SAV schemes may lose its sign; the scheme is linear
    // in r and stays well defined, and r_drift shows the departure.
    if (!std::isfinite(state.r)) throw SchemeError("auxiliary variable r is not finite", state.step);
}

SchemeState Solver::initial_state(SchemeKind kind, const Field& phi0) {
    if (!(phi0.grid() == *grid_)) throw ValidationError("initial field grid does not match solver grid");
    SchemeState s{kind, phi0};
    s.r = r_of_phi(params_.potential, phi0);
    s.r_prev = s.r;
    Field mu = apply_L(phi0);
    mu += apply_f(params_.potential, phi0);
    s.mu = std::move(mu);
    return s;
}

RankOneSystem Solver::assemble(const SchemeState& state) {
    const double tau = params_.tau;
    const double S = params_.S;
    switch (state.scheme) {
        case SchemeKind::SavBe: {
            require_scheme(state, SchemeKind::SavBe, false);
            auto nl = nonlinear_at(state.phi);
            Field rhs = state.phi;
            rhs.axpy(-tau * (state.r - 0.5 * inner(nl.b, state.phi)), nl.gb);
            return RankOneSystem{be_diag_plain_, std::move(nl.gb), std::move(nl.b), std::move(rhs), 0.5 * tau};
        }
        case SchemeKind::IsavBe: {
            require_scheme(state, SchemeKind::IsavBe, false);
            auto nl = nonlinear_at(state.phi);
            Field rhs = state.phi;
            if (S != 0.0) rhs.axpy(tau * S, apply_G(state.phi));
            rhs.axpy(-tau * (nl.r_exact - 0.5 * inner(nl.b, state.phi)), nl.gb);
            return RankOneSystem{be_diag_stab_, std::move(nl.gb), std::move(nl.b), std::move(rhs), 0.5 * tau};
        }
        case SchemeKind::SavBdf:
        case SchemeKind::IsavBdf: {
            const bool improved = state.scheme == SchemeKind::IsavBdf;
            require_scheme(state, state.scheme, true);
            const Field& prev = *state.phi_prev;
            Field extrap = 2.0 * state.phi;
            extrap -= prev;
            // r-history: carried values for SAV-BDF, recomputed functionals for iSAV-BDF.
            double r_n = state.r;
            double r_nm1 = state.r_prev;
            if (improved) {
                r_n = r_of_phi(params_.potential, state.phi);
                r_nm1 = r_of_phi(params_.potential, prev);
            }
            auto nl = nonlinear_at(extrap);
            Field base = 4.0 * state.phi;
            base -= prev;
            Field rhs = base;
            if (improved && S != 0.0) rhs.axpy(2.0 * tau * S, apply_G(extrap));
            const double coeff = (4.0 * r_n - r_nm1) / 3.0 - inner(nl.b, base) / 6.0;
            rhs.axpy(-2.0 * tau * coeff, nl.gb);
            const Symbol& diag = improved ? bdf_diag_stab_ : bdf_diag_plain_;
            return RankOneSystem{diag, std::move(nl.gb), std::move(nl.b), std::move(rhs), tau};
        }
    }
    throw ValidationError("unknown scheme");
}

SchemeState Solver::advance(const SchemeState& state, Field phi_next, double r_next, Field mu) const {
    phi_next.require_finite("phi^{n+1}");
    SchemeState out{state.scheme, std::move(phi_next)};
    if (is_bdf(state.scheme)) out.phi_prev = state.phi;
    out.r = r_next;
    out.r_prev = state.r;
    out.step = state.step + 1;
    out.t = static_cast<double>(out.step) * params_.tau;
    out.mu = std::move(mu);
    return out;
}

SchemeState Solver::solve_sav_be(const SchemeState& state) {
    require_scheme(state, SchemeKind::SavBe, false);
    const RankOneSystem sys = assemble(state);
    Field phi = rank_one_solve(sys, transform_);
    const double r_next = state.r + 0.5 * inner(sys.b, phi - state.phi);
    Field mu = apply_L(phi);
    mu.axpy(r_next, sys.b);
    return advance(state, std::move(phi), r_next, std::move(mu));
}

SchemeState Solver::solve_isav_be(const SchemeState& state) {
    require_scheme(state, SchemeKind::IsavBe, false);
    const RankOneSystem sys = assemble(state);
    Field phi = rank_one_solve(sys, transform_);
    const Field delta = phi - state.phi;
    const double r_tilde = r_of_phi(params_.potential, state.phi) + 0.5 * inner(sys.b, delta);
    Field mu = apply_L(phi);
    mu.axpy(r_tilde, sys.b);
    mu.axpy(params_.S, delta);
    return advance(state, std::move(phi), r_tilde, std::move(mu));
}

namespace {

// 3φⁿ⁺¹ − 4φⁿ + φⁿ⁻¹
Field bdf_difference(const Field& next, const Field& cur, const Field& prev) {
    Field d = 3.0 * next;
    d.axpy(-4.0, cur);
    d += prev;
    return d;
}

}  // namespace

SchemeState Solver::solve_sav_bdf(const SchemeState& state) {
    require_scheme(state, SchemeKind::SavBdf, true);
    const RankOneSystem sys = assemble(state);
    Field phi = rank_one_solve(sys, transform_);
    const double r_next =
        (4.0 * state.r - state.r_prev) / 3.0 + inner(sys.b, bdf_difference(phi, state.phi, *state.phi_prev)) / 6.0;
    Field mu = apply_L(phi);
    mu.axpy(r_next, sys.b);
    return advance(state, std::move(phi), r_next, std::move(mu));
}

SchemeState Solver::solve_isav_bdf(const SchemeState& state) {
    require_scheme(state, SchemeKind::IsavBdf, true);
    const RankOneSystem sys = assemble(state);
    Field phi = rank_one_solve(sys, transform_);
    const Field& prev_phi = *state.phi_prev;
    const double r_n = r_of_phi(params_.potential, state.phi);
    const double r_nm1 = r_of_phi(params_.potential, prev_phi);
    const double r_tilde =
        (4.0 * r_n - r_nm1) / 3.0 + inner(sys.b, bdf_difference(phi, state.phi, prev_phi)) / 6.0;
    Field mu = apply_L(phi);
    mu.axpy(r_tilde, sys.b);
    Field second = phi;
    second.axpy(-2.0, state.phi);
    second += prev_phi;
    mu.axpy(params_.S, second);
    return advance(state, std::move(phi), r_tilde, std::move(mu));
}

SchemeState Solver::bootstrap_bdf(const SchemeState& initial, const SchemeState& be_step, SchemeKind target) const {
    if (!is_bdf(target)) throw ValidationError("bootstrap target must be a BDF scheme");
    if (be_step.step != initial.step + 1) throw ValidationError("bootstrap expects one BE step after the initial level");
    SchemeState s{target, be_step.phi};
    s.phi_prev = initial.phi;
    s.r = be_step.r;
    s.r_prev = r_of_phi(params_.potential, initial.phi);
    s.step = be_step.step;
    s.t = be_step.t;
    s.mu = be_step.mu;
    return s;
}

StepOutput Solver::step_sav_be(const SchemeState& state) { return finish(state, solve_sav_be(state)); }
StepOutput Solver::step_isav_be(const SchemeState& state) { return finish(state, solve_isav_be(state)); }
StepOutput Solver::step_sav_bdf(const SchemeState& state) { return finish(state, solve_sav_bdf(state)); }
StepOutput Solver::step_isav_bdf(const SchemeState& state) { return finish(state, solve_isav_bdf(state)); }

SchemeState Solver::next_state(const SchemeState& state) {
    if (is_bdf(state.scheme) && !state.phi_prev) {
        SchemeState be = state;
        be.scheme = SchemeKind::IsavBe;
        return bootstrap_bdf(state, solve_isav_be(be), state.scheme);
    }
    switch (state.scheme) {
        case SchemeKind::SavBe: return solve_sav_be(state);
        case SchemeKind::IsavBe: return solve_isav_be(state);
        case SchemeKind::SavBdf: return solve_sav_bdf(state);
        case SchemeKind::IsavBdf: return solve_isav_bdf(state);
    }
    throw ValidationError("unknown scheme");
}

StepOutput Solver::step(const SchemeState& state) { return finish(state, next_state(state)); }

StepOutput Solver::finish(const SchemeState& before, SchemeState after) {
    const StepRecord prev = record_state(before, params_, symbols_, transform_);
    StepRecord rec = record_step(&prev, after, params_, symbols_, transform_);
    if (params_.assert_energy) check_energy_law(after.scheme, prev, rec);
    return {std::move(after), rec};
}

void check_energy_law(SchemeKind scheme, const StepRecord& prev, const StepRecord& rec) {
    if (scheme == SchemeKind::SavBe) {
        if (rec.E_mod > prev.E_mod + kModifiedEnergyTol * std::abs(prev.E_mod)) {
            throw SchemeError("modified energy increased: " + std::to_string(prev.E_mod) + " -> " +
                                  std::to_string(rec.E_mod),
                              rec.step);
        }
    } else if (scheme == SchemeKind::IsavBe && rec.D_be) {
        if (*rec.D_be > kOriginalEnergyTol * (1.0 + std::abs(prev.E_orig))) {
            throw SchemeError("original energy law violated: D_be = " + std::to_string(*rec.D_be), rec.step);
        }
    }
}

double Solver::scheme_residual(const SchemeState& before, const SchemeState& after) {
    if (!after.mu) throw ValidationError("scheme_residual needs mu on the new level");
    Field rate(grid_);
    if (is_bdf(after.scheme) && before.phi_prev) {
        rate = bdf_difference(after.phi, before.phi, *before.phi_prev);
        rate *= 1.0 / (2.0 * params_.tau);
    } else {
        rate = after.phi - before.phi;
        rate *= 1.0 / params_.tau;
    }
    const Field gmu = apply_G(*after.mu);
    const Field res = rate + gmu;
    const double scale = std::sqrt(inner(rate, rate)) + std::sqrt(inner(gmu, gmu));
    const double norm = std::sqrt(inner(res, res));
    return scale > 0.0 ? norm / scale : norm;
}

}  // namespace isav

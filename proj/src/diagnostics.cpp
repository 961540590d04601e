#include "isav/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "isav/error.hpp"

namespace isav {

double gradient_energy(const Field& phi, const OperatorSymbols& sym, SpectralTransform& transform) {
    return 0.5 * transform.quadratic_form(phi, sym.lap);
}

double original_energy(const Field& phi, const PotentialSpec& p, const OperatorSymbols& sym,
                       SpectralTransform& transform) {
    return gradient_energy(phi, sym, transform) + bulk_integral(p, phi);
}

double modified_energy(const Field& phi, double r, const OperatorSymbols& sym, SpectralTransform& transform) {
    return gradient_energy(phi, sym, transform) + r * r;
}

double e2_energy(const Field& phi_n, const Field& phi_nm1, const PotentialSpec& p, double S,
                 const OperatorSymbols& sym, SpectralTransform& transform) {
    require_same_grid(phi_n, phi_nm1);
    Field extrap = 2.0 * phi_n;
    extrap -= phi_nm1;
    const Field diff = phi_n - phi_nm1;
    const double r_n = r_of_phi(p, phi_n);
    const double r_nm1 = r_of_phi(p, phi_nm1);
    const double r_ext = 2.0 * r_n - r_nm1;
    return 0.25 * (transform.quadratic_form(phi_n, sym.lap) + transform.quadratic_form(extrap, sym.lap)) +
           0.5 * (r_n * r_n + r_ext * r_ext) + 0.5 * S * inner(diff, diff);
}

double h1_error(const Field& u, const Field& ref) {
    if (u.grid().lx() != ref.grid().lx() || u.grid().ly() != ref.grid().ly()) {
        throw ValidationError("h1_error: grids cover different domains");
    }
    Field diff = u;
    if (u.grid() == ref.grid()) {
        diff -= ref;
    } else {
        SpectralTransform ref_transform(ref.grid_ptr());
        diff -= ref_transform.resample(ref, u.grid_ptr());
    }
    SpectralTransform transform(u.grid_ptr());
    const double l2 = inner(diff, diff);
    const Symbol lap = Symbol::from_function(u.grid(), [](double kx, double ky) { return kx * kx + ky * ky; });
    const double grad = transform.quadratic_form(diff, lap);
    return std::sqrt(l2 + std::max(0.0, grad));
}

StepRecord record_state(const SchemeState& state, const ModelParams& params, const OperatorSymbols& sym,
                        SpectralTransform& transform) {
    StepRecord rec;
    rec.step = state.step;
    rec.t = state.t;
    const double grad = gradient_energy(state.phi, sym, transform);
    const double bulk = bulk_integral(params.potential, state.phi);
    rec.E_orig = grad + bulk;
    rec.E_mod = grad + state.r * state.r;
    rec.r_drift = (bulk > 0.0 ? std::sqrt(bulk) : std::numeric_limits<double>::quiet_NaN()) - state.r;
    if (is_bdf(state.scheme) && state.phi_prev) {
        rec.E2 = e2_energy(state.phi, *state.phi_prev, params.potential, state.effective_S(params), sym, transform);
    }
    rec.mass = state.phi.mean();
    rec.min_phi = state.phi.min();
    rec.max_phi = state.phi.max();
    return rec;
}

StepRecord record_step(const StepRecord* prev, const SchemeState& after, const ModelParams& params,
                       const OperatorSymbols& sym, SpectralTransform& transform) {
    StepRecord rec = record_state(after, params, sym, transform);
    if (prev == nullptr || !after.mu) return rec;
    const double dissipation = params.tau * transform.quadratic_form(*after.mu, sym.g_sym);
    rec.D_be = rec.E_orig - prev->E_orig + dissipation;
    if (rec.E2 && prev->E2) rec.D_bdf = *rec.E2 - *prev->E2 + dissipation;
    return rec;
}

}  // namespace isav

#pragma once

#include <optional>

#include "isav/model.hpp"
#include "isav/spectral.hpp"

namespace isav {

/// Per-step diagnostics. Optional entries are absent when the history they
/// need does not exist yet (n = 0, or the first BDF level).
struct StepRecord {
    long step = 0;
    double t = 0.0;
    double E_orig = 0.0;  ///< 𝓔[φⁿ] = ½‖𝓛^{1/2}φⁿ‖² + 𝓕[φⁿ]
    double E_mod = 0.0;   ///< ½‖𝓛^{1/2}φⁿ‖² + (rⁿ)², r̃ⁿ for iSAV
    std::optional<double> E2;     ///< 𝓔₂[φⁿ, φⁿ⁻¹], BDF schemes
    std::optional<double> D_be;   ///< 𝓔[φⁿ] − 𝓔[φⁿ⁻¹] + τ‖𝒢^{1/2}μⁿ‖²
    std::optional<double> D_bdf;  ///< 𝓔₂[φⁿ,φⁿ⁻¹] − 𝓔₂[φⁿ⁻¹,φⁿ⁻²] + τ‖𝒢^{1/2}μⁿ‖²
    double r_drift = 0.0;         ///< r[φⁿ] − rⁿ (or r̃ⁿ)
    double mass = 0.0;
    double min_phi = 0.0;
    double max_phi = 0.0;
};

/// ½⟨φ, 𝓛φ⟩.
double gradient_energy(const Field& phi, const OperatorSymbols& sym, SpectralTransform& transform);

double original_energy(const Field& phi, const PotentialSpec& p, const OperatorSymbols& sym,
                       SpectralTransform& transform);

/// ½‖𝓛^{1/2}φ‖² + r².
double modified_energy(const Field& phi, double r, const OperatorSymbols& sym, SpectralTransform& transform);

/// 𝓔₂[φⁿ, φⁿ⁻¹] = ¼(‖𝓛^{1/2}φⁿ‖² + ‖𝓛^{1/2}(2φⁿ−φⁿ⁻¹)‖²)
///               + ½[(r[φⁿ])² + (2r[φⁿ] − r[φⁿ⁻¹])²] + (S/2)‖φⁿ−φⁿ⁻¹‖².
/// Throws NonPositiveEnergy if either bulk energy is ≤ 0.
double e2_energy(const Field& phi_n, const Field& phi_nm1, const PotentialSpec& p, double S,
                 const OperatorSymbols& sym, SpectralTransform& transform);

/// ‖u − ref‖_{H¹}. A reference on a different grid over the same domain is
/// first interpolated spectrally onto u's grid.
double h1_error(const Field& u, const Field& ref);

/// Diagnostics of a single state without history: decrements are absent.
StepRecord record_state(const SchemeState& state, const ModelParams& params, const OperatorSymbols& sym,
                        SpectralTransform& transform);

/// Diagnostics of `after`, with the decrement quantities taken against the
/// record of the previous level. `prev` may be null at n = 0.
StepRecord record_step(const StepRecord* prev, const SchemeState& after, const ModelParams& params,
                       const OperatorSymbols& sym, SpectralTransform& transform);

}  // namespace isav

#pragma once

#include <optional>
#include <string>

#include "isav/potentials.hpp"
#include "isav/spectral.hpp"

namespace isav {

enum class SchemeKind { SavBe, IsavBe, SavBdf, IsavBdf };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);

constexpr bool is_bdf(SchemeKind k) { return k == SchemeKind::SavBdf || k == SchemeKind::IsavBdf; }
constexpr bool is_improved(SchemeKind k) { return k == SchemeKind::IsavBe || k == SchemeKind::IsavBdf; }

/// Gradient flow φ_t = −𝒢μ, μ = 𝓛φ + f(φ), with 𝓛 = −Δ and 𝒢 = γ(−Δ)^α.
struct ModelParams {
    double alpha = 0.0;
    double gamma = 1.0;
    double S = 0.0;    ///< stabilization; used by the iSAV schemes and the BDF bootstrap
    double tau = 0.01;
    PotentialSpec potential;
    bool dealias = false;        ///< filter f(φ) with the 2/3 rule
    bool assert_energy = false;  ///< enforce the discrete energy law of the BE schemes

    void validate() const;
};

/// Time level n of one scheme.
///
/// `r` is the carried auxiliary scalar rⁿ for the SAV schemes. The iSAV schemes
/// recompute r[φⁿ] from the field every step; for them `r` only reports r̃ⁿ.
struct SchemeState {
    SchemeState(SchemeKind kind, Field phi0) : scheme(kind), phi(std::move(phi0)) {}

    SchemeKind scheme = SchemeKind::IsavBe;
    Field phi;
    std::optional<Field> phi_prev;  ///< φⁿ⁻¹, BDF schemes once history exists
    double r = 0.0;
    double r_prev = 0.0;  ///< rⁿ⁻¹, SAV-BDF only
    long step = 0;
    double t = 0.0;
    std::optional<Field> mu;  ///< μⁿ of the step that produced this state

    /// The S that enters μ and 𝓔₂ for this scheme (zero for SAV schemes).
    double effective_S(const ModelParams& params) const { return is_improved(scheme) ? params.S : 0.0; }
};

}  // namespace isav

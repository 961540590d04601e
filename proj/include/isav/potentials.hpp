#pragma once

#include <string>

#include "isav/spectral.hpp"

namespace isav {

enum class PotentialKind { DoubleWell, FloryHugginsReg };

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

/// Bulk free-energy density F and its first two derivatives.
///
/// DoubleWell:      F = (φ²−1)²/(4ε²) + c_add.
/// FloryHugginsReg: the logarithmic mixing energy scaled by 1/ε², with the
///                  logarithms outside [σ, 1−σ] replaced by quadratic
///                  extensions so that F is C² on all of ℝ; plus c_add.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::DoubleWell;
    double eps = 1.0;
    double beta = 0.0;   ///< mixing parameter, Flory–Huggins only
    double sigma = 0.0;  ///< regularization width in (0, 1/2], Flory–Huggins only
    double c_add = 0.0;

    static PotentialSpec double_well(double eps, double c_add = 0.0);
    static PotentialSpec flory_huggins(double eps, double beta, double sigma, double c_add = 0.0);

    void validate() const;

    double F(double phi) const;
    double f(double phi) const;
    double fprime(double phi) const;
};

enum class FhBranch { Lower, Middle, Upper };

/// Unscaled Flory–Huggins piece (no 1/ε², no c_add) and its derivatives
/// (order 0, 1, 2), evaluated on one branch regardless of φ.
double flory_huggins_branch(FhBranch branch, int order, double phi, double beta, double sigma);

/// Pointwise f(φ) as a field.
Field apply_f(const PotentialSpec& p, const Field& phi);

/// ∫ F(φ) by nodal quadrature, no sign check.
double bulk_integral(const PotentialSpec& p, const Field& phi);

/// 𝓕[φ]; throws NonPositiveEnergy if the result is ≤ 0.
double bulk_energy(const PotentialSpec& p, const Field& phi);

/// r[φ] = √𝓕[φ].
double r_of_phi(const PotentialSpec& p, const Field& phi);

/// ½·max f′ over [lo, hi]; never negative. Takes the maximum over 10⁴
/// uniform samples plus the endpoints and the branch points of f′.
double suggest_S(const PotentialSpec& p, double lo, double hi);

}  // namespace isav

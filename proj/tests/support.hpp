#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "isav/potentials.hpp"
#include "isav/schemes.hpp"
#include "isav/spectral.hpp"

namespace isav::test {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline GridPtr square(int n, double l = two_pi) { return make_grid(n, n, l, l); }

// f(φ) = (φ³−φ)/ε² is below 1e-14 for |φ| ≲ 2, so b vanishes to roundoff.
inline PotentialSpec flat_potential() { return PotentialSpec::double_well(1e8, 1.0); }

inline Field random_field(GridPtr grid, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Field u(std::move(grid));
    for (double& v : u.values()) v = dist(gen);
    return u;
}

inline double l2(const Field& u) { return std::sqrt(inner(u, u)); }

inline double rel_diff(const Field& a, const Field& b) {
    const double scale = l2(b);
    const double d = l2(a - b);
    return scale > 0.0 ? d / scale : d;
}

// Symbols must be even in kx and ky separately to describe a real operator
// (the Nyquist row is its own mirror image), and gb = 𝒢b with 𝒢 ≥ 0
// commuting with diag keeps the scalar denominator ≥ 1.
inline RankOneSystem random_system(GridPtr g, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = unit(gen), c = unit(gen), e = unit(gen);
    const Symbol diag = Symbol::from_function(*g, [=](double kx, double ky) {
        return 1.0 + e + a * kx * kx + c * ky * ky + e * std::cos(kx) * std::cos(2.0 * ky);
    });
    const double gamma = 0.1 + unit(gen);
    const double alpha = unit(gen);
    const auto sym = OperatorSymbols::make(*g, alpha, gamma);
    SpectralTransform tr(g);
    Field b = random_field(g, seed + 1);
    Field gb = tr.apply(b, sym.g_sym);
    return RankOneSystem{diag, std::move(gb), std::move(b), random_field(g, seed + 3), 0.05 + unit(gen)};
}

}  // namespace isav::test

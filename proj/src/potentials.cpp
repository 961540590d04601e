#include "isav/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "isav/error.hpp"

namespace isav {

std::string to_string(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::DoubleWell: return "double-well";
        case PotentialKind::FloryHugginsReg: return "flory-huggins";
    }
    return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& name) {
    if (name == "double-well") return PotentialKind::DoubleWell;
    if (name == "flory-huggins") return PotentialKind::FloryHugginsReg;
    throw ValidationError("unknown potential kind '" + name + "' (expected double-well or flory-huggins)");
}

PotentialSpec PotentialSpec::double_well(double eps, double c_add) {
    PotentialSpec p;
    p.kind = PotentialKind::DoubleWell;
    p.eps = eps;
    p.c_add = c_add;
    p.validate();
    return p;
}

PotentialSpec PotentialSpec::flory_huggins(double eps, double beta, double sigma, double c_add) {
    PotentialSpec p;
    p.kind = PotentialKind::FloryHugginsReg;
    p.eps = eps;
    p.beta = beta;
    p.sigma = sigma;
    p.c_add = c_add;
    p.validate();
    return p;
}

void PotentialSpec::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("potential.eps must be positive");
    if (!(c_add >= 0.0) || !std::isfinite(c_add)) throw ValidationError("potential.c_add must be >= 0");
    if (kind == PotentialKind::FloryHugginsReg) {
        if (!(sigma > 0.0 && sigma <= 0.5)) throw ValidationError("potential.sigma must lie in (0, 0.5]");
        if (!std::isfinite(beta)) throw ValidationError("potential.beta must be finite");
    }
}

namespace {

void reject_nan(double phi) {
    if (std::isnan(phi)) throw ValidationError("potential evaluated at NaN");
}

}  // namespace

double flory_huggins_branch(FhBranch branch, int order, double phi, double beta, double sigma) {
    const double q = 1.0 - phi;
    switch (order) {
        case 0: {
            const double mix = beta * (phi - phi * phi);
            switch (branch) {
                case FhBranch::Upper: return phi * std::log(phi) + q * q / (2.0 * sigma) + q * std::log(sigma) - 0.5 * sigma + mix;
                case FhBranch::Middle: return phi * std::log(phi) + q * std::log1p(-phi) + mix;
                case FhBranch::Lower: return q * std::log1p(-phi) + phi * phi / (2.0 * sigma) + phi * std::log(sigma) - 0.5 * sigma + mix;
            }
            break;
        }
        case 1: {
            const double mix = beta * (1.0 - 2.0 * phi);
            switch (branch) {
                case FhBranch::Upper: return std::log(phi) + 1.0 - q / sigma - std::log(sigma) + mix;
                case FhBranch::Middle: return std::log(phi) - std::log1p(-phi) + mix;
                case FhBranch::Lower: return -std::log1p(-phi) - 1.0 + phi / sigma + std::log(sigma) + mix;
            }
            break;
        }
        case 2: {
            switch (branch) {
                case FhBranch::Upper: return 1.0 / phi + 1.0 / sigma - 2.0 * beta;
                case FhBranch::Middle: return 1.0 / phi + 1.0 / q - 2.0 * beta;
                case FhBranch::Lower: return 1.0 / q + 1.0 / sigma - 2.0 * beta;
            }
            break;
        }
    }
    throw ValidationError("flory_huggins_branch: order must be 0, 1 or 2");
}

namespace {

FhBranch branch_of(double phi, double sigma) {
    if (phi >= 1.0 - sigma) return FhBranch::Upper;
    if (phi > sigma) return FhBranch::Middle;
    return FhBranch::Lower;
}

}  // namespace

double PotentialSpec::F(double phi) const {
    reject_nan(phi);
    const double s = 1.0 / (eps * eps);
    if (kind == PotentialKind::DoubleWell) {
        const double w = phi * phi - 1.0;
        return 0.25 * s * w * w + c_add;
    }
    return s * flory_huggins_branch(branch_of(phi, sigma), 0, phi, beta, sigma) + c_add;
}

double PotentialSpec::f(double phi) const {
    reject_nan(phi);
    const double s = 1.0 / (eps * eps);
    if (kind == PotentialKind::DoubleWell) return s * (phi * phi * phi - phi);
    return s * flory_huggins_branch(branch_of(phi, sigma), 1, phi, beta, sigma);
}

double PotentialSpec::fprime(double phi) const {
    reject_nan(phi);
    const double s = 1.0 / (eps * eps);
    if (kind == PotentialKind::DoubleWell) return s * (3.0 * phi * phi - 1.0);
    return s * flory_huggins_branch(branch_of(phi, sigma), 2, phi, beta, sigma);
}

Field apply_f(const PotentialSpec& p, const Field& phi) {
    Field out(phi.grid_ptr());
    auto dst = out.values();
    auto src = phi.values();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = p.f(src[k]);
    return out;
}

double bulk_integral(const PotentialSpec& p, const Field& phi) {
    double sum = 0.0;
    for (double v : phi.values()) sum += p.F(v);
    return phi.grid().cell_area() * sum;
}

double bulk_energy(const PotentialSpec& p, const Field& phi) {
    const double e = bulk_integral(p, phi);
    if (!(e > 0.0)) {
        throw NonPositiveEnergy("bulk energy is not positive (" + std::to_string(e) +
                                "); increase potential.c_add");
    }
    return e;
}

double r_of_phi(const PotentialSpec& p, const Field& phi) { return std::sqrt(bulk_energy(p, phi)); }

double suggest_S(const PotentialSpec& p, double lo, double hi) {
    if (!(lo < hi)) throw ValidationError("suggest_S requires lo < hi");
    constexpr int samples = 10000;
    double best = std::max(p.fprime(lo), p.fprime(hi));
    for (int k = 1; k < samples; ++k) {
        const double phi = lo + (hi - lo) * k / samples;
        best = std::max(best, p.fprime(phi));
    }
    if (p.kind == PotentialKind::FloryHugginsReg) {
        // f′ peaks at the branch points on the outer pieces.
        for (double bp : {p.sigma, 1.0 - p.sigma}) {
            if (bp >= lo && bp <= hi) best = std::max(best, p.fprime(bp));
        }
    }
    return std::max(0.0, 0.5 * best);
}

}  // namespace isav

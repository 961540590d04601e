#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "isav/error.hpp"
#include "isav/initial.hpp"
#include "isav/potentials.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace isav;
using namespace isav::test;

namespace {

PotentialSpec ex3_fh() { return PotentialSpec::flory_huggins(0.04, 3.0, 0.01); }

}  // namespace

TEST_CASE("double-well values", "[potentials]") {
    const auto p = PotentialSpec::double_well(1.0);
    CHECK(p.F(0.0) == 0.25);
    CHECK(p.f(1.0) == 0.0);
    CHECK(p.fprime(0.0) == -1.0);
    CHECK(PotentialSpec::double_well(0.5).f(2.0) == Approx(24.0));
}

TEST_CASE("NaN input is rejected", "[potentials]") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : {PotentialSpec::double_well(1.0), ex3_fh()}) {
        CHECK_THROWS_AS(p.F(nan), ValidationError);
        CHECK_THROWS_AS(p.f(nan), ValidationError);
        CHECK_THROWS_AS(p.fprime(nan), ValidationError);
    }
}

TEST_CASE("invalid specs are rejected", "[potentials]") {
    CHECK_THROWS_AS(PotentialSpec::double_well(0.0).validate(), ValidationError);
    CHECK_THROWS_AS(PotentialSpec::double_well(1.0, -1.0).validate(), ValidationError);
    CHECK_THROWS_AS(PotentialSpec::flory_huggins(1.0, 3.0, 0.6).validate(), ValidationError);
    CHECK_THROWS_AS(PotentialSpec::flory_huggins(1.0, 3.0, 0.0).validate(), ValidationError);
    CHECK_NOTHROW(PotentialSpec::flory_huggins(1.0, 3.0, 0.5).validate());
}

TEST_CASE("Flory-Huggins branches join with C2 continuity", "[potentials][flory-huggins]") {
    for (double sigma : {0.01, 0.1, 0.3, 0.5}) {
        for (double beta : {0.0, 3.0}) {
            for (int order = 0; order <= 2; ++order) {
                const double lo = sigma;
                const double hi = 1.0 - sigma;
                CHECK(std::abs(flory_huggins_branch(FhBranch::Lower, order, lo, beta, sigma) -
                               flory_huggins_branch(FhBranch::Middle, order, lo, beta, sigma)) <= 1e-12);
                CHECK(std::abs(flory_huggins_branch(FhBranch::Middle, order, hi, beta, sigma) -
                               flory_huggins_branch(FhBranch::Upper, order, hi, beta, sigma)) <= 1e-12);
            }
        }
    }
    // the public evaluators pick the branches on either side
    const auto p = PotentialSpec::flory_huggins(1.0, 3.0, 0.1);
    CHECK(p.F(0.05) == flory_huggins_branch(FhBranch::Lower, 0, 0.05, 3.0, 0.1));
    CHECK(p.f(0.5) == flory_huggins_branch(FhBranch::Middle, 1, 0.5, 3.0, 0.1));
    CHECK(p.fprime(0.95) == flory_huggins_branch(FhBranch::Upper, 2, 0.95, 3.0, 0.1));
}

TEST_CASE("Flory-Huggins is finite on all of the real line", "[potentials][flory-huggins]") {
    const auto p = ex3_fh();
    for (double x : {-10.0, -1.0, 0.0, 1.0, 2.0, 10.0}) {
        CHECK(std::isfinite(p.F(x)));
        CHECK(std::isfinite(p.f(x)));
        CHECK(std::isfinite(p.fprime(x)));
    }
}

TEST_CASE("Flory-Huggins curvature is bounded below by -2 beta / eps^2", "[potentials][flory-huggins]") {
    const auto p = ex3_fh();
    const double bound = -2.0 * p.beta / (p.eps * p.eps);
    double lowest = std::numeric_limits<double>::infinity();
    const int n = 100000;
    for (int k = 0; k <= n; ++k) lowest = std::min(lowest, p.fprime(-1.0 + 3.0 * k / n));
    CHECK(lowest >= bound);
}

TEST_CASE("derivatives agree with central differences", "[potentials][property]") {
    std::mt19937_64 gen(7);
    const double h = 1e-5;
    auto check = [&](const PotentialSpec& p, double lo, double hi) {
        // Relative to the size of each derivative over the interval, so that
        // points near a zero of f or f′ do not demand more than the step allows.
        double f_scale = 0.0;
        double fp_scale = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double x = lo + (hi - lo) * k / 1000.0;
            f_scale = std::max(f_scale, std::abs(p.f(x)));
            fp_scale = std::max(fp_scale, std::abs(p.fprime(x)));
        }
        std::uniform_real_distribution<double> dist(lo, hi);
        for (int k = 0; k < 1000; ++k) {
            const double x = dist(gen);
            // f″ jumps at the branch points
            if (p.kind == PotentialKind::FloryHugginsReg &&
                (std::abs(x - p.sigma) < 2 * h || std::abs(x - (1.0 - p.sigma)) < 2 * h)) {
                continue;
            }
            const double dF = (p.F(x + h) - p.F(x - h)) / (2 * h);
            const double df = (p.f(x + h) - p.f(x - h)) / (2 * h);
            CHECK(std::abs(dF - p.f(x)) <= 1e-6 * std::max(std::abs(p.f(x)), 1e-3 * f_scale));
            CHECK(std::abs(df - p.fprime(x)) <= 1e-6 * std::max(std::abs(p.fprime(x)), 1e-3 * fp_scale));
        }
    };
    check(PotentialSpec::double_well(1.0), -2.0, 2.0);
    check(PotentialSpec::double_well(0.1, 1.0), -1.5, 1.5);
    check(PotentialSpec::flory_huggins(1.0, 3.0, 0.01), -0.5, 1.5);
    check(PotentialSpec::flory_huggins(0.5, 2.0, 0.2), -0.5, 1.5);
}

TEST_CASE("bulk energy of constant fields", "[potentials][bulk]") {
    const auto g = square(16);
    const double pi = std::numbers::pi;
    const auto dw = PotentialSpec::double_well(1.0);
    CHECK(bulk_energy(dw, Field::constant(g, 0.0)) == Approx(pi * pi));
    CHECK(r_of_phi(dw, Field::constant(g, 0.0)) == Approx(pi));
    CHECK_THROWS_AS(bulk_energy(dw, Field::constant(g, 1.0)), NonPositiveEnergy);
    CHECK_THROWS_AS(r_of_phi(dw, Field::constant(g, 1.0)), NonPositiveEnergy);
    const auto shifted = PotentialSpec::double_well(1.0, 1.0);
    CHECK(bulk_energy(shifted, Field::constant(g, 1.0)) == Approx(4.0 * pi * pi));
    CHECK(r_of_phi(shifted, Field::constant(g, 1.0)) == Approx(2.0 * pi));
}

TEST_CASE("c_add shifts the bulk energy by c_add times the area", "[potentials][bulk]") {
    const auto g = make_grid(16, 8, two_pi, 6.4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Field u = random_field(g, seed, -1.5, 1.5);
        for (double c : {0.5, 1.0, 37.5}) {
            for (const auto& base : {PotentialSpec::double_well(0.3), PotentialSpec::flory_huggins(0.3, 3.0, 0.05)}) {
                PotentialSpec shifted = base;
                shifted.c_add = c;
                const double diff = bulk_integral(shifted, u) - bulk_integral(base, u);
                CHECK(diff == Approx(c * g->area()).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("r of the smooth initial datum is resolved on 64x64", "[potentials][bulk]") {
    const auto dw = PotentialSpec::double_well(1.0);
    const double coarse = r_of_phi(dw, init_ex1(square(64)));
    const double fine = r_of_phi(dw, init_ex1(square(256)));
    CHECK(coarse == Approx(fine).epsilon(1e-10));
}

TEST_CASE("stabilization suggestion", "[potentials][suggest]") {
    CHECK(suggest_S(PotentialSpec::double_well(1.0), -1.5, 1.5) == Approx(2.875));
    const double s_ex2 = suggest_S(PotentialSpec::double_well(0.04), -1.5, 1.5);
    CHECK(s_ex2 == Approx(2.875 / 0.0016));
    // The fixed value used for the phase-separation example is 3/ε².
    CHECK(s_ex2 < 3.0 / 0.0016);
    const double s_fh = suggest_S(ex3_fh(), -0.5, 1.5);
    CHECK(std::isfinite(s_fh));
    CHECK(s_fh > 0.0);
    CHECK(suggest_S(PotentialSpec::double_well(1.0), -0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(suggest_S(PotentialSpec::double_well(1.0), 1.0, 1.0), ValidationError);
}

TEST_CASE("stabilization suggestion grows with the range", "[potentials][suggest][property]") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> centre(-1.0, 2.0);
    std::uniform_real_distribution<double> width(0.01, 1.0);
    for (const auto& p : {PotentialSpec::double_well(0.2), ex3_fh()}) {
        for (int k = 0; k < 200; ++k) {
            const double c = centre(gen);
            const double w = width(gen);
            const double grow = width(gen);
            const double inner_s = suggest_S(p, c - w, c + w);
            const double outer_s = suggest_S(p, c - w - grow, c + w + grow);
            CHECK(outer_s >= inner_s * (1.0 - 1e-12));
        }
    }
}

#include "isav/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "isav/error.hpp"

namespace isav {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> wavenumbers(int n, double l) {
    std::vector<double> k(n);
    const double scale = 2.0 * std::numbers::pi / l;
    for (int j = 0; j < n; ++j) {
        k[j] = scale * (j < n / 2 ? j : j - n);
    }
    return k;
}

// Multiplicity of a half-spectrum column in the full spectrum.
double column_weight(int q, int ny) { return (q == 0 || q == ny / 2) ? 1.0 : 2.0; }

}  // namespace

// ---------------------------------------------------------------- Grid

Grid::Grid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
        throw ValidationError("grid sizes must be even and >= 4, got " + std::to_string(nx) + "x" +
                              std::to_string(ny));
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw ValidationError("grid lengths must be positive and finite");
    }
    kx_ = wavenumbers(nx, lx);
    ky_ = wavenumbers(ny, ly);
}

GridPtr make_grid(int nx, int ny, double lx, double ly) {
    return std::make_shared<const Grid>(nx, ny, lx, ly);
}

// ---------------------------------------------------------------- Field

Field::Field(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw ValidationError("field requires a grid");
    values_.assign(grid_->size(), 0.0);
}

Field::Field(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw ValidationError("field requires a grid");
    if (values_.size() != grid_->size()) {
        throw ValidationError("field has " + std::to_string(values_.size()) + " values, grid has " +
                              std::to_string(grid_->size()) + " nodes");
    }
    if (!all_finite()) throw ValidationError("field contains non-finite values");
}

Field Field::from_function(GridPtr grid, const std::function<double(double, double)>& fn) {
    Field out(grid);
    for (int i = 0; i < grid->nx(); ++i) {
        for (int j = 0; j < grid->ny(); ++j) {
            out(i, j) = fn(grid->x(i), grid->y(j));
        }
    }
    if (!out.all_finite()) throw ValidationError("field function produced non-finite values");
    return out;
}

Field Field::constant(GridPtr grid, double value) {
    Field out(std::move(grid));
    std::fill(out.values_.begin(), out.values_.end(), value);
    if (!out.all_finite()) throw ValidationError("constant field value must be finite");
    return out;
}

void require_same_grid(const Field& u, const Field& v) {
    if (!(u.grid() == v.grid())) throw ValidationError("fields live on different grids");
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Field& Field::axpy(double a, const Field& x) {
    require_same_grid(*this, x);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * x.values_[k];
    return *this;
}

double Field::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void Field::require_finite(const char* where) const {
    if (!all_finite()) throw SchemeError(std::string("non-finite values in ") + where);
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

// ---------------------------------------------------------------- Symbols

Symbol Symbol::from_function(const Grid& grid, const std::function<double(double, double)>& fn) {
    Symbol s{grid.nx(), grid.ny(), std::vector<double>(grid.spectral_size())};
    const int nyh = grid.ny_half();
    for (int p = 0; p < grid.nx(); ++p) {
        for (int q = 0; q < nyh; ++q) {
            s.values[static_cast<std::size_t>(p) * nyh + q] = fn(grid.kx()[p], grid.ky()[q]);
        }
    }
    return s;
}

Symbol Symbol::constant(const Grid& grid, double value) {
    return Symbol{grid.nx(), grid.ny(), std::vector<double>(grid.spectral_size(), value)};
}

Symbol Symbol::reciprocal() const {
    Symbol out = *this;
    for (double& v : out.values) {
        if (v == 0.0) throw ValidationError("cannot invert a symbol with a zero mode");
        v = 1.0 / v;
    }
    return out;
}

OperatorSymbols OperatorSymbols::make(const Grid& grid, double alpha, double gamma) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be positive");
    OperatorSymbols s;
    s.alpha = alpha;
    s.gamma = gamma;
    auto k2 = [](double kx, double ky) { return kx * kx + ky * ky; };
    // |k|^{2α} with the convention 0^0 = 1.
    auto frac = [alpha, k2](double kx, double ky) {
        if (alpha == 0.0) return 1.0;
        const double m = k2(kx, ky);
        return m == 0.0 ? 0.0 : std::pow(m, alpha);
    };
    s.lap = Symbol::from_function(grid, k2);
    s.sqrt_l = Symbol::from_function(grid, [k2](double kx, double ky) { return std::sqrt(k2(kx, ky)); });
    s.g_sym = Symbol::from_function(grid, [&](double kx, double ky) { return gamma * frac(kx, ky); });
    s.sqrt_g = Symbol::from_function(grid, [&](double kx, double ky) { return std::sqrt(gamma * frac(kx, ky)); });
    return s;
}

Symbol dealias_mask(const Grid& grid) {
    const double kx_cut = (2.0 / 3.0) * (std::numbers::pi / grid.hx());
    const double ky_cut = (2.0 / 3.0) * (std::numbers::pi / grid.hy());
    return Symbol::from_function(grid, [=](double kx, double ky) {
        return (std::abs(kx) < kx_cut && std::abs(ky) < ky_cut) ? 1.0 : 0.0;
    });
}

// ---------------------------------------------------------------- Transform

struct SpectralTransform::Plans {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    Plans(int nx, int ny) {
        std::lock_guard lock(planner_mutex());
        real = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
        spec = fftw_alloc_complex(static_cast<std::size_t>(nx) * (ny / 2 + 1));
        fwd = fftw_plan_dft_r2c_2d(nx, ny, real, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(nx, ny, spec, real, FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(spec);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

SpectralTransform::SpectralTransform(GridPtr grid)
    : grid_(std::move(grid)), plans_(std::make_unique<Plans>(grid_->nx(), grid_->ny())) {}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

std::vector<std::complex<double>> SpectralTransform::forward(const Field& u) {
    if (!(u.grid() == *grid_)) throw ValidationError("field grid does not match transform grid");
    std::copy(u.values().begin(), u.values().end(), plans_->real);
    fftw_execute(plans_->fwd);
    std::vector<std::complex<double>> out(grid_->spectral_size());
    std::memcpy(static_cast<void*>(out.data()), plans_->spec, out.size() * sizeof(fftw_complex));
    return out;
}

Field SpectralTransform::inverse(std::span<const std::complex<double>> spectrum) {
    if (spectrum.size() != grid_->spectral_size()) throw ValidationError("spectrum size mismatch");
    std::memcpy(plans_->spec, spectrum.data(), spectrum.size() * sizeof(fftw_complex));
    fftw_execute(plans_->inv);
    Field out(grid_);
    const double scale = 1.0 / static_cast<double>(grid_->size());
    auto vals = out.values();
    for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = plans_->real[k] * scale;
    return out;
}

Field SpectralTransform::apply(const Field& u, const Symbol& symbol, int sign) {
    if (!symbol.matches(*grid_) || symbol.values.size() != grid_->spectral_size()) {
        throw ValidationError("symbol shape does not match grid");
    }
    if (sign != 1 && sign != -1) throw ValidationError("symbol sign must be +1 or -1");
    auto spec = forward(u);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= sign * symbol.values[k];
    Field out = inverse(spec);
    out.require_finite("apply_symbol");
    return out;
}

double SpectralTransform::quadratic_form(const Field& u, const Symbol& symbol) {
    if (!symbol.matches(*grid_)) throw ValidationError("symbol shape does not match grid");
    const auto spec = forward(u);
    const int nyh = grid_->ny_half();
    double sum = 0.0;
    for (int p = 0; p < grid_->nx(); ++p) {
        for (int q = 0; q < nyh; ++q) {
            const std::size_t k = static_cast<std::size_t>(p) * nyh + q;
            sum += column_weight(q, grid_->ny()) * symbol.values[k] * std::norm(spec[k]);
        }
    }
    return grid_->cell_area() * sum / static_cast<double>(grid_->size());
}

Field SpectralTransform::resample(const Field& u, GridPtr target) {
    if (target->lx() != grid_->lx() || target->ly() != grid_->ly()) {
        throw ValidationError("resample requires grids on the same domain");
    }
    if (*target == *grid_) return u;
    const auto spec = forward(u);
    const int nx = grid_->nx();
    const int ny = grid_->ny();
    const int nyh = grid_->ny_half();
    const int tnx = target->nx();
    const int tny = target->ny();

    // Row sums B(i, q) = Σ_p ĉ(p, q)·Ex_p(x_i).
    std::vector<std::complex<double>> rows(static_cast<std::size_t>(tnx) * nyh);
    for (int i = 0; i < tnx; ++i) {
        const double x = target->x(i);
        for (int p = 0; p < nx; ++p) {
            const double kx = grid_->kx()[p];
            const std::complex<double> ex =
                (p == nx / 2) ? std::complex<double>(std::cos(kx * x), 0.0) : std::polar(1.0, kx * x);
            for (int q = 0; q < nyh; ++q) {
                rows[static_cast<std::size_t>(i) * nyh + q] += spec[static_cast<std::size_t>(p) * nyh + q] * ex;
            }
        }
    }
    Field out(target);
    const double scale = 1.0 / static_cast<double>(grid_->size());
    for (int j = 0; j < tny; ++j) {
        const double y = target->y(j);
        for (int i = 0; i < tnx; ++i) {
            double acc = 0.0;
            for (int q = 0; q < nyh; ++q) {
                const double ky = grid_->ky()[q];
                const auto ey = std::polar(1.0, ky * y);
                acc += column_weight(q, ny) * (rows[static_cast<std::size_t>(i) * nyh + q] * ey).real();
            }
            out(i, j) = acc * scale;
        }
    }
    out.require_finite("resample");
    return out;
}

// ---------------------------------------------------------------- Quadrature

double inner(const Field& u, const Field& v) {
    require_same_grid(u, v);
    const auto a = u.values();
    const auto b = v.values();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
    return u.grid().cell_area() * sum;
}

Norms norms(const Field& u, const OperatorSymbols& sym, SpectralTransform& transform) {
    Norms n;
    n.l2 = std::sqrt(inner(u, u));
    n.grad_l2 = std::sqrt(std::max(0.0, transform.quadratic_form(u, sym.lap)));
    n.h1 = std::sqrt(n.l2 * n.l2 + n.grad_l2 * n.grad_l2);
    n.g_half = std::sqrt(std::max(0.0, transform.quadratic_form(u, sym.g_sym)));
    return n;
}

}  // namespace isav

#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace isav {

/// Uniform periodic grid on [0,lx)×[0,ly) with nx×ny nodes.
///
/// Nodes are stored row-major with x as the slow index: node (i, j) sits at
/// (i·hx, j·hy) and has flat index i·ny + j. Spectral arrays use the r2c
/// half layout: nx rows × (ny/2 + 1) columns.
class Grid {
public:
    Grid(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    double hx() const { return lx_ / nx_; }
    double hy() const { return ly_ / ny_; }
    double cell_area() const { return hx() * hy(); }
    double area() const { return lx_ * ly_; }

    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
    int ny_half() const { return ny_ / 2 + 1; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(nx_) * ny_half(); }

    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }

    /// Signed wavenumbers in FFT ordering, 2π/l·(j for j ≤ n/2, else j−n).
    const std::vector<double>& kx() const { return kx_; }
    const std::vector<double>& ky() const { return ky_; }

    bool operator==(const Grid& other) const {
        return nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
    }

private:
    int nx_, ny_;
    double lx_, ly_;
    std::vector<double> kx_, ky_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws ValidationError unless nx, ny are even and ≥ 4 and lx, ly > 0.
GridPtr make_grid(int nx, int ny, double lx, double ly);

/// Real nodal values on a grid. Entries are finite on construction.
class Field {
public:
    explicit Field(GridPtr grid);
    Field(GridPtr grid, std::vector<double> values);

    static Field from_function(GridPtr grid, const std::function<double(double, double)>& fn);
    static Field constant(GridPtr grid, double value);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_->ny() + j]; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_->ny() + j]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);
    /// this += a·x
    Field& axpy(double a, const Field& x);

    double mean() const;
    double min() const;
    double max() const;
    bool all_finite() const;
    /// Throws SchemeError naming `where` if any entry is NaN/Inf.
    void require_finite(const char* where) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Throws ValidationError if the two fields live on different grids.
void require_same_grid(const Field& u, const Field& v);

/// Real per-mode multiplier on the half spectrum of a grid.
struct Symbol {
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    static Symbol from_function(const Grid& grid, const std::function<double(double, double)>& fn);
    static Symbol constant(const Grid& grid, double value);

    bool matches(const Grid& grid) const { return nx == grid.nx() && ny == grid.ny(); }
    Symbol reciprocal() const;
};

/// Symbols of 𝓛 = −Δ and 𝒢 = γ(−Δ)^α.
struct OperatorSymbols {
    Symbol lap;     ///< |k|²
    Symbol g_sym;   ///< γ|k|^{2α}; the zero mode is γ when α = 0
    Symbol sqrt_g;  ///< γ^{1/2}|k|^α
    Symbol sqrt_l;  ///< |k|
    double alpha = 0.0;
    double gamma = 1.0;

    static OperatorSymbols make(const Grid& grid, double alpha, double gamma);
};

/// 2/3-rule mask: 1 where |kx| < (2/3)·kx_max and |ky| < (2/3)·ky_max, 0 elsewhere.
Symbol dealias_mask(const Grid& grid);

/// FFTW r2c/c2r plans for one grid. Planning is serialized behind a global
/// mutex; a transform object itself is not shareable between threads.
class SpectralTransform {
public:
    explicit SpectralTransform(GridPtr grid);
    ~SpectralTransform();
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;
    SpectralTransform(SpectralTransform&&) noexcept;
    SpectralTransform& operator=(SpectralTransform&&) noexcept;

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    /// Unnormalized forward DFT into the half spectrum.
    std::vector<std::complex<double>> forward(const Field& u);
    /// Inverse DFT of a half spectrum, normalized by 1/(nx·ny).
    Field inverse(std::span<const std::complex<double>> spectrum);

    /// 𝒯⁻¹(sign · symbol · 𝒯u). Result is checked finite.
    Field apply(const Field& u, const Symbol& symbol, int sign = 1);

    /// hx·hy·(1/N)·Σ_k s(k)|û(k)|² over the full spectrum, i.e. ⟨u, S u⟩.
    double quadratic_form(const Field& u, const Symbol& symbol);

    /// Evaluate the trigonometric interpolant of `u` at the nodes of `target`.
    /// Both grids must share lx, ly. Nyquist modes enter as cosines.
    Field resample(const Field& u, GridPtr target);

private:
    struct Plans;
    GridPtr grid_;
    std::unique_ptr<Plans> plans_;
};

/// Nodal quadrature hx·hy·Σ uᵢⱼ vᵢⱼ.
double inner(const Field& u, const Field& v);

struct Norms {
    double l2 = 0.0;
    double grad_l2 = 0.0;
    double h1 = 0.0;
    double g_half = 0.0;  ///< ‖𝒢^{1/2}u‖
};

Norms norms(const Field& u, const OperatorSymbols& sym, SpectralTransform& transform);

}  // namespace isav

#include "isav/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "isav/error.hpp"
#include "isav/io.hpp"

namespace isav {

Field init_ex1(GridPtr grid) {
    return Field::from_function(std::move(grid), [](double x, double y) { return 1.0 + 0.5 * std::sin(x) * std::sin(y); });
}

Field init_squares(GridPtr grid) {
    return Field::from_function(std::move(grid), [](double x, double y) {
        const bool big = std::abs(x - 3.2) <= 1.0 && std::abs(y - 3.2) <= 1.0;
        const bool small = std::abs(x - 5.0) <= 0.36 && std::abs(y - 5.0) <= 0.36;
        return (big || small) ? 1.0 : -1.0;
    });
}

Field init_disks(GridPtr grid) {
    constexpr double pi = std::numbers::pi;
    return Field::from_function(std::move(grid), [](double x, double y) {
        const double d1 = (x - (pi - 0.8)) * (x - (pi - 0.8)) + (y - pi) * (y - pi);
        const double d2 = (x - (pi + 1.7)) * (x - (pi + 1.7)) + (y - pi) * (y - pi);
        return (d1 <= 1.4 * 1.4 || d2 <= 0.5 * 0.5) ? 0.7 : 0.3;
    });
}

Field init_random(GridPtr grid, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Field out(grid);
    for (double& v : out.values()) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
        v = 0.5 + 0.2 * (2.0 * u - 1.0);
    }
    return out;
}

Field make_initial(const RunConfig& cfg, GridPtr grid) {
    const auto& kind = cfg.init.kind;
    if (kind == "ex1") return init_ex1(grid);
    if (kind == "squares") return init_squares(grid);
    if (kind == "disks") return init_disks(grid);
    if (kind == "random") return init_random(grid, cfg.init.seed);
    if (kind == "file") {
        std::filesystem::path p = cfg.init.path;
        if (p.is_relative() && !cfg.base_dir.empty()) p = cfg.base_dir / p;
        Snapshot snap = read_snapshot(p);
        if (!(snap.field.grid() == *grid)) throw ValidationError("init.path: snapshot grid does not match config grid");
        return snap.field;
    }
    throw ValidationError("init.kind: unknown kind '" + kind + "'");
}

}  // namespace isav

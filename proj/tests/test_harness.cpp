#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isav/config.hpp"
#include "isav/error.hpp"
#include "isav/initial.hpp"
#include "isav/io.hpp"
#include "isav/runner.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace isav;
using namespace isav::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("isav_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ISAV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("minimal config fills defaults and round-trips", "[harness][config]") {
    const RunConfig cfg = parse_config(R"({"scheme": "isav-be"})");
    CHECK(cfg.scheme == SchemeKind::IsavBe);
    CHECK(cfg.grid.nx == 64);
    CHECK(cfg.grid.lx == Approx(two_pi));
    CHECK(cfg.outputs.every == 1);
    const std::string dumped = dump_config(cfg);
    CHECK(dump_config(parse_config(dumped)) == dumped);

    const RunConfig preset = preset_config("ex3-sav-bdf");
    const std::string pd = dump_config(preset);
    CHECK(dump_config(parse_config(pd)) == pd);
}

TEST_CASE("config validation errors name the field", "[harness][config]") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"scheme": "isav-be", "model": {"alpha": 2}})").find("model.alpha") != std::string::npos);
    CHECK(message(R"({"scheme": "isav-be", "grid": {"nx": 7}})").find("grid") != std::string::npos);
    CHECK(message(R"({"scheme": "isav-be", "bogus": 1})").find("bogus") != std::string::npos);
    CHECK(message(R"({"scheme": "rk4"})").find("scheme") != std::string::npos);
    CHECK(message(R"({"scheme": "isav-be", "tau": 0.03, "t_end": 0.1})").find("t_end") != std::string::npos);
    CHECK(message(R"({"model": {"alpha": 0}})").find("scheme") != std::string::npos);
    CHECK(message(R"({"scheme": "isav-be", "potential": {"kind": "flory-huggins", "eps": 1}})").find("potential")
          != std::string::npos);
    CHECK_FALSE(message("{not json").empty());
}

TEST_CASE("presets expand to the example parameters", "[harness][config]") {
    const RunConfig ex1 = preset_config("ex1-isav-be");
    CHECK(ex1.potential.eps == 1.0);
    CHECK(ex1.gamma == 0.1);
    CHECK(ex1.S == 6.0);
    CHECK(ex1.grid.lx == Approx(two_pi));
    CHECK(ex1.grid.ly == Approx(two_pi));

    const RunConfig ex2 = preset_config("ex2-isav-be");
    CHECK(ex2.S == Approx(3.0 / (0.04 * 0.04)));
    CHECK(ex2.alpha == 1.0);
    CHECK(ex2.gamma == 0.01);
    CHECK(ex2.potential.c_add == 1.0);
    CHECK(ex2.grid.lx == 6.4);

    const RunConfig ex3 = preset_config("ex3-isav-be");
    CHECK(ex3.S == Approx(10.0 / (0.04 * 0.04)));
    CHECK(ex3.potential.kind == PotentialKind::FloryHugginsReg);
    CHECK(ex3.potential.c_add == Approx(0.06 / (0.04 * 0.04)));

    // overriding eps keeps the preset S rule
    const RunConfig ex2b = parse_config(R"({"preset": "ex2-isav-be", "potential": {"eps": 0.01}})");
    CHECK(ex2b.S == Approx(3.0 / 1e-4));
    CHECK(list_presets().size() == 16);
    CHECK_THROWS_AS(preset_config("ex9-isav-be"), ValidationError);
}

TEST_CASE("random initial data is seeded and bounded", "[harness][init]") {
    const auto g = square(32);
    const Field a = init_random(g, 11);
    const Field b = init_random(g, 11);
    const Field c = init_random(g, 12);
    CHECK(rel_diff(a, b) == 0.0);
    CHECK(rel_diff(a, c) > 0.0);
    CHECK(a.min() >= 0.3);
    CHECK(a.max() <= 0.7);
}

TEST_CASE("indicator initial data", "[harness][init]") {
    const auto g = make_grid(64, 64, 6.4, 6.4);
    const Field sq = init_squares(g);
    CHECK(sq(32, 32) == 1.0);   // (3.2, 3.2)
    CHECK(sq(50, 50) == 1.0);   // (5.0, 5.0)
    CHECK(sq(0, 0) == -1.0);
    const auto d = square(64);
    const Field disks = init_disks(d);
    CHECK(disks(32, 32) == 0.7);  // near (π, π)
    CHECK(disks(0, 0) == 0.3);
}

TEST_CASE("snapshots round-trip bit-exactly", "[harness][io]") {
    const auto g = make_grid(8, 12, two_pi, 6.4);
    const Field u = random_field(g, 77, -1e3, 1e3);
    std::stringstream ss;
    write_snapshot(ss, u, 0.1 + 0.2);
    const Snapshot back = read_snapshot(ss);
    CHECK(back.t == 0.1 + 0.2);
    CHECK(back.field.grid() == *g);
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(back.field[k] == u[k]);

    std::stringstream bad("4 4 1 1 0\n1 2 3\n");
    CHECK_THROWS_AS(read_snapshot(bad), ValidationError);
}

TEST_CASE("runs emit one row per step and are deterministic", "[harness][run]") {
    const fs::path dir = scratch_dir("run");
    const std::string cfg_text = R"({"preset": "ex4-isav-bdf", "grid": {"nx": 32, "ny": 32}, "tau": 0.001,
        "t_end": 0.02, "outputs": {"series_path": "a.csv", "field_snapshot_times": [0.01], "snapshot_dir": "snaps"}})";
    write_text(dir / "cfg.json", cfg_text);

    RunConfig cfg = load_config(dir / "cfg.json");
    cfg.outputs.series_path = (dir / "a.csv").string();
    cfg.outputs.snapshot_dir = (dir / "snaps").string();
    const auto first = run_simulation(cfg);
    CHECK(first.records.size() == 21);
    CHECK(first.final_state.step == 20);
    CHECK(fs::exists(dir / "snaps" / "phi_0000010.txt"));
    const Snapshot snap = read_snapshot(dir / "snaps" / "phi_0000010.txt");
    CHECK(snap.t == Approx(0.01));

    cfg.outputs.series_path = (dir / "b.csv").string();
    run_simulation(cfg);
    const std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(a.rfind("step,t,E_orig,E_mod,E2,D_be,D_bdf,r_drift,mass,min_phi,max_phi\n", 0) == 0);
    CHECK(std::count(a.begin(), a.end(), '\n') == 22);

    cfg.outputs.every = 3;
    cfg.outputs.series_path.clear();
    const auto strided = run_simulation(cfg);
    CHECK(strided.records.size() == 8);  // 0,3,…,18 and the last step
    CHECK(strided.records.back().step == 20);
}

TEST_CASE("initial data can be read back from a snapshot", "[harness][run]") {
    const fs::path dir = scratch_dir("restart");
    const auto g = square(16);
    write_snapshot(dir / "phi0.txt", init_ex1(g), 0.0);
    write_text(dir / "cfg.json", R"({"preset": "ex1-isav-be", "grid": {"nx": 16, "ny": 16},
        "init": {"kind": "file", "path": "phi0.txt"}, "outputs": {"series_path": ""}, "t_end": 0.05})");
    const RunConfig cfg = load_config(dir / "cfg.json");
    RunConfig direct = cfg;
    direct.init.kind = "ex1";
    CHECK(rel_diff(run_simulation(cfg).final_state.phi, run_simulation(direct).final_state.phi) == 0.0);

    write_text(dir / "bad.json", R"({"preset": "ex1-isav-be", "init": {"kind": "file", "path": "phi0.txt"}})");
    CHECK_THROWS_AS(run_simulation(load_config(dir / "bad.json")), ValidationError);
}

TEST_CASE("compare rejects misaligned configs", "[harness][compare]") {
    RunConfig a = preset_config("ex1-sav-be");
    RunConfig b = preset_config("ex1-isav-be");
    b.tau = a.tau / 2;
    CHECK_THROWS_AS(compare_schemes(a, b), ValidationError);
    b = preset_config("ex1-isav-be");
    b.t_end = 1.0;
    CHECK_THROWS_AS(compare_schemes(a, b), ValidationError);

    a.grid.nx = a.grid.ny = 16;
    b = preset_config("ex1-isav-be");
    b.grid.nx = b.grid.ny = 16;
    a.t_end = b.t_end = 0.05;
    a.outputs.series_path.clear();
    b.outputs.series_path.clear();
    const auto cmp = compare_schemes(a, b, RunOptions{true, false});
    std::ostringstream out;
    write_comparison(out, cmp);
    const std::string text = out.str();
    CHECK(text.rfind("step,t,E_orig_a,E_orig_b,E_mod_a,E_mod_b,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("convergence table format", "[harness][converge]") {
    std::vector<ConvergenceRow> rows{{10, 0.05, 1e-2, std::nullopt}, {20, 0.025, 5e-3, 1.0}};
    std::ostringstream out;
    write_convergence(out, StudyKind::Temporal, rows);
    CHECK(out.str() == "N,tau,h1_error,order\n10,0.05,0.01,\n20,0.025,0.005,1\n");
}

TEST_CASE("output directory override", "[harness][io]") {
    const fs::path dir = scratch_dir("outdir");
    ::setenv("ISAV_OUTPUT_DIR", dir.c_str(), 1);
    CHECK(resolve_output_path("x/y.csv") == dir / "x/y.csv");
    CHECK(resolve_output_path("/abs.csv") == fs::path("/abs.csv"));
    RunConfig cfg = preset_config("ex1-sav-be");
    cfg.grid.nx = cfg.grid.ny = 8;
    cfg.t_end = 0.025;
    cfg.outputs.series_path = "series.csv";
    run_simulation(cfg);
    ::unsetenv("ISAV_OUTPUT_DIR");
    CHECK(fs::exists(dir / "series.csv"));
}

TEST_CASE("command-line exit codes", "[harness][cli]") {
    const fs::path dir = scratch_dir("cli");
    write_text(dir / "ok.json", R"({"preset": "ex1-isav-be", "grid": {"nx": 8, "ny": 8}, "t_end": 0.025,
        "outputs": {"series_path": ")" + (dir / "ok.csv").string() + R"("}})");
    write_text(dir / "bad.json", R"({"preset": "ex1-isav-be", "model": {"alpha": 2}})");
    write_snapshot(dir / "one.txt", Field::constant(square(8), 1.0), 0.0);
    write_text(dir / "fail.json", R"({"preset": "ex1-isav-be", "grid": {"nx": 8, "ny": 8},
        "init": {"kind": "file", "path": "one.txt"}, "outputs": {"series_path": ""}})");

    CHECK(run_cli("run " + (dir / "ok.json").string()) == 0);
    CHECK(fs::exists(dir / "ok.csv"));
    CHECK(run_cli("run " + (dir / "bad.json").string()) == 2);
    CHECK(run_cli("run " + (dir / "missing.json").string()) == 2);
    CHECK(run_cli("run " + (dir / "fail.json").string()) == 3);
    CHECK(run_cli("presets list") == 0);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("converge " + (dir / "ok.json").string()) == 2);
    CHECK(run_cli("converge " + (dir / "ok.json").string() + " --grids 4,8 --ref-grid 16 --out " +
                  (dir / "conv.csv").string()) == 0);
    CHECK(slurp(dir / "conv.csv").rfind("grid,tau,h1_error,order\n4,", 0) == 0);
    CHECK(run_cli("compare " + (dir / "ok.json").string() + " " + (dir / "ok.json").string() + " --out " +
                  (dir / "cmp.csv").string()) == 0);
}

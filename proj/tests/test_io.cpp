#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dendrite/config.hpp"
#include "dendrite/io.hpp"
#include "dendrite/runner.hpp"
#include "test_helpers.hpp"

using namespace dendrite;
using namespace dendrite::testing;
namespace fs = std::filesystem;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimalConfig = R"json({
  "grid": {"n": [32, 32]},
  "params": {"eps": 0.06, "lambda": 1.0, "K": 1.0, "D": 1.0, "tau": 100.0,
             "dt": 0.01},
  "scheme": "sieq",
  "t_final": 0.05,
  "initial_condition": {"type": "constant", "phi_value": 1.0, "u_value": 0.0}
})json";

} // namespace

TEST_CASE("config parsing, defaults and validation") {
  RunConfig cfg = config_from_json_text(kMinimalConfig);
  CHECK(cfg.grid.n[0] == 32);
  CHECK(cfg.grid.length[0] == doctest::Approx(two_pi)); // default domain
  CHECK(cfg.params.bigB == doctest::Approx(5.0e4));     // default shift
  CHECK(cfg.params.eta == doctest::Approx(1e-12));
  CHECK(cfg.params.s1 == doctest::Approx(4.0));
  CHECK(cfg.scheme == SchemeKind::SIEQ);
  CHECK(cfg.sample_every == 1);

  // negative interface width
  std::string bad = kMinimalConfig;
  auto replace = [](std::string s, const std::string& from,
                    const std::string& to) {
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(
      config_from_json_text(replace(bad, "\"eps\": 0.06", "\"eps\": -0.06")),
      ConfigError);

  // unknown keys are rejected with the field path
  try {
    config_from_json_text(
        replace(bad, "\"eps\": 0.06", "\"eps\": 0.06, \"epz\": 1"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("params.epz") != std::string::npos);
  }

  // malformed JSON
  CHECK_THROWS_AS(config_from_json_text("{"), ConfigError);

  // center outside the domain
  std::string off = replace(std::string(kMinimalConfig),
                            "{\"type\": \"constant\", \"phi_value\": 1.0, "
                            "\"u_value\": 0.0}",
                            "{\"type\": \"circle\", \"center\": [100.0, 0.0]}");
  CHECK_THROWS_AS(config_from_json_text(off), ConfigError);
}

TEST_CASE("config round trips through its JSON form") {
  RunConfig cfg = preset("dendrite-halfplane");
  RunConfig back = config_from_json_text(config_to_json_text(cfg));
  CHECK(back.grid == cfg.grid);
  CHECK(back.scheme == cfg.scheme);
  CHECK(back.t_final == cfg.t_final);
  CHECK(back.params.eps == cfg.params.eps);
  CHECK(back.params.bigK == cfg.params.bigK);
  CHECK(back.ic.type == cfg.ic.type);
  CHECK(back.ic.center[1] == cfg.ic.center[1]);
}

TEST_CASE("presets reproduce the published parameter sets") {
  RunConfig acc = preset("accuracy-2d");
  CHECK(acc.params.tau == 100.0);
  CHECK(acc.params.eps == 0.06);
  CHECK(acc.params.eps4 == 0.05);
  CHECK(acc.params.diffD == 1.0);
  CHECK(acc.params.lambda == 1.0);
  CHECK(acc.params.bigK == 1.0);
  CHECK(acc.params.s1 == 4.0);
  CHECK(acc.params.s2 == 4.0);
  CHECK(acc.grid.n[0] == 128);
  CHECK(acc.ic.type == IcType::Mms);

  RunConfig circ = preset("circle-sieq");
  CHECK(circ.params.eps4 == 0.25);
  CHECK(circ.ic.r0 == 1.5);
  CHECK(circ.ic.eps0 == 0.072);
  CHECK(circ.ic.u0 == -0.55);
  CHECK(circ.scheme == SchemeKind::SIEQ);
  CHECK(preset("circle-ls").scheme == SchemeKind::LS);

  RunConfig den = preset("dendrite-2d-k05");
  CHECK(den.params.tau == 4.4e3);
  CHECK(den.params.eps == 1.12e-2);
  CHECK(den.params.eps4 == 0.05);
  CHECK(den.params.diffD == 2.25e-4);
  CHECK(den.params.bigK == 0.5);
  CHECK(den.params.lambda == 380.0);
  CHECK(den.grid.n[0] == 256);
  CHECK(preset("dendrite-2d-k05", true).grid.n[0] == 512);
  CHECK(den.ic.r0 == 0.02);

  RunConfig half = preset("dendrite-halfplane");
  CHECK(half.grid.bc[1] == Bc::NoFlux);
  CHECK(half.grid.length[1] == 3.0);
  CHECK(half.params.bigK == 0.75);
  CHECK(half.ic.center[1] == 0.0);

  RunConfig d3 = preset("dendrite-3d-k1");
  CHECK(d3.grid.dims == 3);
  CHECK(d3.grid.n[2] == 64);
  CHECK(preset("dendrite-3d-k1", true).grid.n[2] == 128);
  CHECK(d3.params.tau == 2.5e4);
  CHECK(d3.params.eps == 3.0e-2);
  CHECK(d3.params.diffD == 2.0e-4);
  CHECK(d3.params.lambda == 260.0);
  CHECK(d3.params.bigK == 1.0);
  CHECK(d3.params.dt == 1.0e-1);

  CHECK_THROWS_AS(preset("no-such-preset"), ConfigError);
}

TEST_CASE("field dump round trip is bit exact") {
  fs::path dir = fs::temp_directory_path() / "dendrite_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "f.f64").string();

  Grid g = Grid::make_2d(16, 8, 1.0, 2.0);
  ScalarField f = random_field(g, 5);
  dump_field(f, path, "phi", 1.25);

  CHECK(fs::file_size(path) == 8u * 16u * 8u);

  ScalarField back = load_field(path);
  CHECK(back.grid == g);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

  const std::string sidecar = slurp(path + ".json");
  CHECK(sidecar.find("\"nz\": 1") != std::string::npos);
  CHECK(sidecar.find("\"name\": \"phi\"") != std::string::npos);
  CHECK(sidecar.find("\"time\": 1.25") != std::string::npos);
}

TEST_CASE("images map the phase range onto 8-bit gray") {
  fs::path dir = fs::temp_directory_path() / "dendrite_io_test";
  fs::create_directories(dir);
  Grid g = Grid::make_2d(8, 4, 1.0, 1.0);

  auto pixel_of = [&](double value) {
    const std::string path = (dir / "img.pgm").string();
    render_image(ScalarField(g, value), path);
    std::ifstream in(path, std::ios::binary);
    std::string magic;
    int w, h, maxval;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 8);
    CHECK(h == 4);
    CHECK(maxval == 255);
    in.get(); // single whitespace after the header
    int first = in.get();
    for (int i = 1; i < w * h; ++i) CHECK(in.get() == first);
    return first;
  };

  CHECK(pixel_of(1.0) == 255);
  CHECK(pixel_of(-1.0) == 0);
  CHECK(pixel_of(0.0) == 128); // rounds half up
  CHECK(pixel_of(7.5) == 255); // clipped
}

TEST_CASE("runs write the energy ledger with a stable schema") {
  fs::path dir = fs::temp_directory_path() / "dendrite_run_a";
  fs::remove_all(dir);

  RunConfig cfg = config_from_json_text(kMinimalConfig);
  cfg.output_dir = dir.string();
  CHECK(run(cfg) == kRunOk);

  const std::string csv = slurp((dir / "energy.csv").string());
  CHECK(csv.rfind("step,time,e_original,e_modified,radius,phi_min,phi_max,"
                  "solver_iters,solver_residual\n",
                  0) == 0);

  // identical reruns produce identical ledgers
  fs::path dir_b = fs::temp_directory_path() / "dendrite_run_b";
  fs::remove_all(dir_b);
  RunConfig cfg_b = cfg;
  cfg_b.output_dir = dir_b.string();
  CHECK(run(cfg_b) == kRunOk);
  CHECK(slurp((dir_b / "energy.csv").string()) == csv);

  // an LS run leaves the e_modified column empty
  RunConfig ls = cfg;
  ls.scheme = SchemeKind::LS;
  fs::path dir_c = fs::temp_directory_path() / "dendrite_run_c";
  fs::remove_all(dir_c);
  ls.output_dir = dir_c.string();
  CHECK(run(ls) == kRunOk);
  std::ifstream in((dir_c / "energy.csv").string());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  // third comma starts the e_modified field; it must be empty
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = row.find(',', pos) + 1;
  CHECK(row[pos] == ',');
}

TEST_CASE("divergent runs exit with the dedicated status and mark the csv") {
  fs::path dir = fs::temp_directory_path() / "dendrite_run_div";
  fs::remove_all(dir);

  RunConfig cfg = preset("circle-ls");
  cfg.grid = Grid::make_2d(64, 64, two_pi, two_pi);
  cfg.params.dt = 1.0;
  cfg.t_final = 10.0;
  cfg.output_dir = dir.string();

  CHECK(run(cfg) == kRunDiverged);
  const std::string csv = slurp((dir / "energy.csv").string());
  CHECK(csv.find("# diverged at step") != std::string::npos);
}

TEST_CASE("initial conditions sample the configured shapes") {
  Grid g = Grid::make_2d(64, 64, two_pi, two_pi);
  InitialCondition ic;
  ic.type = IcType::Nucleus;
  ic.center = {std::numbers::pi, std::numbers::pi, 0.0};
  ic.r0 = 1.0;
  ic.eps0 = 0.1;
  ic.u0 = -0.55;
  auto [phi, u] = build_initial(ic, g);

  // solid core is undercooled nowhere; ambient liquid sits at u0
  const std::size_t center = phi.index(32, 32);
  CHECK(phi[center] > 0.99);
  CHECK(u[center] == 0.0);
  CHECK(phi[phi.index(0, 0)] < -0.99);
  CHECK(u[u.index(0, 0)] == -0.55);

  ic.type = IcType::Circle;
  auto [phi2, u2] = build_initial(ic, g);
  CHECK(u2[center] == -0.55); // uniform undercooling everywhere
  CHECK(max_abs_diff(phi2, phi) == 0.0);
}

#include "dendrite/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dendrite/diagnostics.hpp"

namespace dendrite {
namespace {

using nlohmann::json;
constexpr double two_pi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double get_num(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "." + key, "missing required number");
  if (!j[key].is_number()) fail(path + "." + key, "expected a number");
  return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& path, const char* key,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) fail(path + "." + key, "expected a number");
  return j[key].get<double>();
}

long get_int_or(const json& j, const std::string& path, const char* key,
                long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return j[key].get<long>();
}

bool get_bool_or(const json& j, const std::string& path, const char* key,
                 bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) fail(path + "." + key, "expected a boolean");
  return j[key].get<bool>();
}

std::string get_str_or(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) fail(path + "." + key, "expected a string");
  return j[key].get<std::string>();
}

Grid parse_grid(const json& j) {
  check_keys(j, "grid", {"n", "length", "bc"});
  if (!j.contains("n") || !j["n"].is_array())
    fail("grid.n", "expected an array of point counts");
  const auto& n = j["n"];
  const int dims = int(n.size());
  if (dims != 2 && dims != 3) fail("grid.n", "must have 2 or 3 entries");

  Grid g;
  g.dims = dims;
  for (int a = 0; a < dims; ++a) {
    if (!n[a].is_number_integer()) fail("grid.n", "expected integers");
    g.n[a] = n[a].get<int>();
  }
  if (j.contains("length")) {
    const auto& len = j["length"];
    if (!len.is_array() || int(len.size()) != dims)
      fail("grid.length", "must match the length of grid.n");
    for (int a = 0; a < dims; ++a) g.length[a] = len[a].get<double>();
  } else {
    for (int a = 0; a < dims; ++a) g.length[a] = two_pi;
  }
  if (j.contains("bc")) {
    const auto& bc = j["bc"];
    if (!bc.is_array() || int(bc.size()) != dims)
      fail("grid.bc", "must match the length of grid.n");
    for (int a = 0; a < dims; ++a) {
      const std::string s = bc[a].get<std::string>();
      if (s == "periodic") g.bc[a] = Bc::Periodic;
      else if (s == "noflux") g.bc[a] = Bc::NoFlux;
      else fail("grid.bc", "expected \"periodic\" or \"noflux\", got " + s);
    }
  }
  try {
    g.validate();
  } catch (const std::exception& e) {
    fail("grid", e.what());
  }
  return g;
}

Params parse_params(const json& j) {
  check_keys(j, "params",
             {"eps", "eps4", "m", "lambda", "K", "D", "tau", "s1", "s2", "B",
              "dt", "eta", "p_choice", "latent_variant", "dealias"});
  Params p;
  p.eps = get_num(j, "params", "eps");
  p.eps4 = get_num_or(j, "params", "eps4", 0.05);
  p.m = int(get_int_or(j, "params", "m", 4));
  p.lambda = get_num(j, "params", "lambda");
  p.bigK = get_num(j, "params", "K");
  p.diffD = get_num(j, "params", "D");
  p.tau = get_num(j, "params", "tau");
  p.s1 = get_num_or(j, "params", "s1", 4.0);
  p.s2 = get_num_or(j, "params", "s2", 4.0);
  p.bigB = get_num_or(j, "params", "B", 5.0e4);
  p.dt = get_num(j, "params", "dt");
  p.eta = get_num_or(j, "params", "eta", 1.0e-12);
  p.dealias = get_bool_or(j, "params", "dealias", false);

  const std::string pc = get_str_or(j, "params", "p_choice", "quintic");
  if (pc == "quintic") p.p_choice = LatentChoice::Quintic;
  else if (pc == "cubic") p.p_choice = LatentChoice::Cubic;
  else fail("params.p_choice", "expected \"quintic\" or \"cubic\"");

  const std::string lv =
      get_str_or(j, "params", "latent_variant", "consistent");
  if (lv == "consistent") p.latent_variant = LatentVariant::Consistent;
  else if (lv == "unit_derivative")
    p.latent_variant = LatentVariant::UnitDerivative;
  else fail("params.latent_variant",
            "expected \"consistent\" or \"unit_derivative\"");

  try {
    p.validate();
  } catch (const std::exception& e) {
    fail("params", e.what());
  }
  return p;
}

InitialCondition parse_ic(const json& j, const Grid& g) {
  check_keys(j, "initial_condition",
             {"type", "center", "r0", "eps0", "u0", "phi_value", "u_value"});
  InitialCondition ic;
  const std::string type = get_str_or(j, "initial_condition", "type", "");
  if (type == "circle") ic.type = IcType::Circle;
  else if (type == "nucleus") ic.type = IcType::Nucleus;
  else if (type == "mms") ic.type = IcType::Mms;
  else if (type == "constant") ic.type = IcType::Constant;
  else fail("initial_condition.type",
            "expected circle | nucleus | mms | constant");

  if (j.contains("center")) {
    const auto& c = j["center"];
    if (!c.is_array() || int(c.size()) != g.dims)
      fail("initial_condition.center", "must have one entry per axis");
    for (int a = 0; a < g.dims; ++a) ic.center[a] = c[a].get<double>();
  } else {
    for (int a = 0; a < g.dims; ++a) ic.center[a] = 0.5 * g.length[a];
  }
  ic.r0 = get_num_or(j, "initial_condition", "r0", ic.r0);
  ic.eps0 = get_num_or(j, "initial_condition", "eps0", ic.eps0);
  ic.u0 = get_num_or(j, "initial_condition", "u0", ic.u0);
  ic.phi_value = get_num_or(j, "initial_condition", "phi_value", ic.phi_value);
  ic.u_value = get_num_or(j, "initial_condition", "u_value", ic.u_value);
  return ic;
}

RunConfig parse_config(const json& j) {
  check_keys(j, "<root>",
             {"grid", "params", "scheme", "t_final", "sample_every",
              "initial_condition", "outputs", "output_dir", "seed"});
  RunConfig cfg;
  if (!j.contains("grid")) fail("grid", "missing section");
  cfg.grid = parse_grid(j["grid"]);
  if (!j.contains("params")) fail("params", "missing section");
  cfg.params = parse_params(j["params"]);

  const std::string sch = get_str_or(j, "<root>", "scheme", "sieq");
  if (auto k = scheme_from_name(sch)) cfg.scheme = *k;
  else fail("scheme", "expected ls | sls | ieq | sieq, got " + sch);

  cfg.t_final = get_num(j, "<root>", "t_final");
  cfg.sample_every = get_int_or(j, "<root>", "sample_every", 1);
  if (!j.contains("initial_condition"))
    fail("initial_condition", "missing section");
  cfg.ic = parse_ic(j["initial_condition"], cfg.grid);

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, "outputs", {"csv", "fields", "images", "render_every"});
    cfg.outputs.csv = get_bool_or(o, "outputs", "csv", true);
    cfg.outputs.fields = get_bool_or(o, "outputs", "fields", false);
    cfg.outputs.images = get_bool_or(o, "outputs", "images", false);
    cfg.outputs.render_every =
        get_int_or(o, "outputs", "render_every", 100);
  }
  cfg.output_dir = get_str_or(j, "<root>", "output_dir", "out");
  cfg.seed = get_int_or(j, "<root>", "seed", 0);
  cfg.validate();
  return cfg;
}

} // namespace

void RunConfig::validate() const {
  grid.validate();
  params.validate();
  if (!(t_final > 0.0)) throw ConfigError("config: t_final must be positive");
  if (sample_every < 1)
    throw ConfigError("config: sample_every must be >= 1");
  if (outputs.render_every < 1)
    throw ConfigError("config: outputs.render_every must be >= 1");
  if (ic.type == IcType::Circle || ic.type == IcType::Nucleus) {
    for (int a = 0; a < grid.dims; ++a)
      if (ic.center[a] < 0.0 || ic.center[a] > grid.length[a])
        throw ConfigError(
            "config: initial_condition.center lies outside the domain");
    if (!(ic.r0 > 0.0) || !(ic.eps0 > 0.0))
      throw ConfigError("config: initial_condition r0/eps0 must be positive");
  }
  if (ic.type == IcType::Mms) {
    if (grid.dims != 2 || grid.has_noflux())
      throw ConfigError(
          "config: mms initial condition needs a 2D periodic grid");
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

std::string config_to_json_text(const RunConfig& cfg) {
  json j;
  json grid;
  for (int a = 0; a < cfg.grid.dims; ++a) {
    grid["n"].push_back(cfg.grid.n[a]);
    grid["length"].push_back(cfg.grid.length[a]);
    grid["bc"].push_back(cfg.grid.bc[a] == Bc::NoFlux ? "noflux" : "periodic");
  }
  j["grid"] = grid;

  json p;
  p["eps"] = cfg.params.eps;
  p["eps4"] = cfg.params.eps4;
  p["m"] = cfg.params.m;
  p["lambda"] = cfg.params.lambda;
  p["K"] = cfg.params.bigK;
  p["D"] = cfg.params.diffD;
  p["tau"] = cfg.params.tau;
  p["s1"] = cfg.params.s1;
  p["s2"] = cfg.params.s2;
  p["B"] = cfg.params.bigB;
  p["dt"] = cfg.params.dt;
  p["eta"] = cfg.params.eta;
  p["p_choice"] =
      cfg.params.p_choice == LatentChoice::Quintic ? "quintic" : "cubic";
  p["latent_variant"] =
      cfg.params.latent_variant == LatentVariant::Consistent
          ? "consistent"
          : "unit_derivative";
  p["dealias"] = cfg.params.dealias;
  j["params"] = p;

  j["scheme"] = scheme_name(cfg.scheme);
  j["t_final"] = cfg.t_final;
  j["sample_every"] = cfg.sample_every;

  json ic;
  switch (cfg.ic.type) {
    case IcType::Circle: ic["type"] = "circle"; break;
    case IcType::Nucleus: ic["type"] = "nucleus"; break;
    case IcType::Mms: ic["type"] = "mms"; break;
    case IcType::Constant: ic["type"] = "constant"; break;
  }
  if (cfg.ic.type == IcType::Circle || cfg.ic.type == IcType::Nucleus) {
    for (int a = 0; a < cfg.grid.dims; ++a)
      ic["center"].push_back(cfg.ic.center[a]);
    ic["r0"] = cfg.ic.r0;
    ic["eps0"] = cfg.ic.eps0;
    ic["u0"] = cfg.ic.u0;
  }
  if (cfg.ic.type == IcType::Constant) {
    ic["phi_value"] = cfg.ic.phi_value;
    ic["u_value"] = cfg.ic.u_value;
  }
  j["initial_condition"] = ic;

  json o;
  o["csv"] = cfg.outputs.csv;
  o["fields"] = cfg.outputs.fields;
  o["images"] = cfg.outputs.images;
  o["render_every"] = cfg.outputs.render_every;
  j["outputs"] = o;
  j["output_dir"] = cfg.output_dir;
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

std::pair<ScalarField, ScalarField> build_initial(const InitialCondition& ic,
                                                  const Grid& g) {
  if (ic.type == IcType::Mms) return {mms_phi(g, 0.0), mms_u(g, 0.0)};

  ScalarField phi(g), u(g);
  if (ic.type == IcType::Constant) {
    for (std::size_t i = 0; i < phi.size(); ++i) {
      phi[i] = ic.phi_value;
      u[i] = ic.u_value;
    }
    return {std::move(phi), std::move(u)};
  }

  for (int z = 0; z < g.n[2]; ++z)
    for (int y = 0; y < g.n[1]; ++y)
      for (int x = 0; x < g.n[0]; ++x) {
        double r2 = 0.0;
        const int idx[3] = {x, y, z};
        for (int a = 0; a < g.dims; ++a) {
          const double d = g.coord(a, idx[a]) - ic.center[a];
          r2 += d * d;
        }
        const double v = std::tanh((ic.r0 - std::sqrt(r2)) / ic.eps0);
        const std::size_t i = phi.index(x, y, z);
        phi[i] = v;
        u[i] = ic.type == IcType::Circle ? ic.u0 : (v > 0.0 ? 0.0 : ic.u0);
      }
  return {std::move(phi), std::move(u)};
}

namespace {

RunConfig base_2d_accuracy() {
  RunConfig cfg;
  cfg.grid = Grid::make_2d(128, 128, two_pi, two_pi);
  cfg.params = Params{};
  cfg.params.eps = 0.06;
  cfg.params.eps4 = 0.05;
  cfg.params.m = 4;
  cfg.params.lambda = 1.0;
  cfg.params.bigK = 1.0;
  cfg.params.diffD = 1.0;
  cfg.params.tau = 100.0;
  cfg.params.s1 = 4.0;
  cfg.params.s2 = 4.0;
  cfg.params.dt = 1.0e-2;
  cfg.scheme = SchemeKind::SIEQ;
  cfg.t_final = 1.0;
  cfg.ic.type = IcType::Mms;
  return cfg;
}

RunConfig base_circle(SchemeKind kind) {
  RunConfig cfg = base_2d_accuracy();
  cfg.params.eps4 = 0.25;
  cfg.scheme = kind;
  cfg.t_final = 20.0;
  cfg.ic.type = IcType::Circle;
  cfg.ic.center = {std::numbers::pi, std::numbers::pi, 0.0};
  cfg.ic.r0 = 1.5;
  cfg.ic.eps0 = 0.072;
  cfg.ic.u0 = -0.55;
  return cfg;
}

RunConfig base_dendrite_2d(double K, int m, double t_final, bool full_scale) {
  RunConfig cfg;
  const int n = full_scale ? 512 : 256;
  cfg.grid = Grid::make_2d(n, n, two_pi, two_pi);
  cfg.params.tau = 4.4e3;
  cfg.params.eps = 1.12e-2;
  cfg.params.eps4 = 0.05;
  cfg.params.m = m;
  cfg.params.diffD = 2.25e-4;
  cfg.params.bigK = K;
  cfg.params.lambda = 380.0;
  cfg.params.s1 = 4.0;
  cfg.params.s2 = 4.0;
  cfg.params.dt = 1.0e-2;
  cfg.scheme = SchemeKind::SIEQ;
  cfg.t_final = t_final;
  cfg.sample_every = 10;
  cfg.ic.type = IcType::Nucleus;
  cfg.ic.center = {std::numbers::pi, std::numbers::pi, 0.0};
  cfg.ic.r0 = 0.02;
  cfg.ic.eps0 = 0.072;
  cfg.ic.u0 = -0.55;
  cfg.outputs.render_every = 1000;
  return cfg;
}

RunConfig base_dendrite_3d(double K, double t_final, bool full_scale) {
  RunConfig cfg;
  const int n = full_scale ? 128 : 64;
  cfg.grid = Grid::make_3d(n, n, n, two_pi, two_pi, two_pi);
  cfg.params.tau = 2.5e4;
  cfg.params.eps = 3.0e-2;
  cfg.params.eps4 = 0.05;
  cfg.params.m = 4;
  cfg.params.diffD = 2.0e-4;
  cfg.params.bigK = K;
  cfg.params.lambda = 260.0;
  cfg.params.s1 = 4.0;
  cfg.params.s2 = 4.0;
  cfg.params.dt = 1.0e-1;
  cfg.scheme = SchemeKind::SIEQ;
  cfg.t_final = t_final;
  cfg.sample_every = 10;
  cfg.ic.type = IcType::Nucleus;
  cfg.ic.center = {std::numbers::pi, std::numbers::pi, std::numbers::pi};
  cfg.ic.r0 = 0.02;
  cfg.ic.eps0 = 0.072;
  cfg.ic.u0 = -0.55;
  cfg.outputs.render_every = 1000;
  return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
  return {"accuracy-2d",
          "circle-ls",
          "circle-sls",
          "circle-ieq",
          "circle-sieq",
          "dendrite-2d-k05",
          "dendrite-2d-k06",
          "dendrite-2d-k07",
          "dendrite-2d-k08",
          "dendrite-2d-m6-k06",
          "dendrite-2d-m6-k07",
          "dendrite-2d-m6-k075",
          "dendrite-2d-m6-k08",
          "dendrite-2d-m5",
          "dendrite-2d-m7",
          "dendrite-halfplane",
          "dendrite-3d-k05",
          "dendrite-3d-k1",
          "dendrite-3d-k15",
          "dendrite-3d-k2"};
}

bool is_preset(const std::string& name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

RunConfig preset(const std::string& name, bool full_scale) {
  if (name == "accuracy-2d") return base_2d_accuracy();
  if (name == "circle-ls") return base_circle(SchemeKind::LS);
  if (name == "circle-sls") return base_circle(SchemeKind::SLS);
  if (name == "circle-ieq") return base_circle(SchemeKind::IEQ);
  if (name == "circle-sieq") return base_circle(SchemeKind::SIEQ);

  if (name == "dendrite-2d-k05")
    return base_dendrite_2d(0.5, 4, 100.0, full_scale);
  if (name == "dendrite-2d-k06")
    return base_dendrite_2d(0.6, 4, 120.0, full_scale);
  if (name == "dendrite-2d-k07")
    return base_dendrite_2d(0.7, 4, 160.0, full_scale);
  if (name == "dendrite-2d-k08")
    return base_dendrite_2d(0.8, 4, 200.0, full_scale);

  if (name == "dendrite-2d-m6-k06")
    return base_dendrite_2d(0.6, 6, 130.0, full_scale);
  if (name == "dendrite-2d-m6-k07")
    return base_dendrite_2d(0.7, 6, 140.0, full_scale);
  if (name == "dendrite-2d-m6-k075")
    return base_dendrite_2d(0.75, 6, 180.0, full_scale);
  if (name == "dendrite-2d-m6-k08")
    return base_dendrite_2d(0.8, 6, 180.0, full_scale);
  if (name == "dendrite-2d-m5")
    return base_dendrite_2d(0.5, 5, 170.0, full_scale);
  if (name == "dendrite-2d-m7")
    return base_dendrite_2d(0.5, 7, 200.0, full_scale);

  if (name == "dendrite-halfplane") {
    RunConfig cfg = base_dendrite_2d(0.75, 4, 150.0, full_scale);
    const int nx = full_scale ? 512 : 256;
    cfg.grid = Grid::make_2d(nx, nx / 2, two_pi, 3.0, Bc::Periodic, Bc::NoFlux);
    cfg.ic.center = {std::numbers::pi, 0.0, 0.0};
    return cfg;
  }

  if (name == "dendrite-3d-k05") return base_dendrite_3d(0.5, 900.0, full_scale);
  if (name == "dendrite-3d-k1") return base_dendrite_3d(1.0, 1500.0, full_scale);
  if (name == "dendrite-3d-k15")
    return base_dendrite_3d(1.5, 2100.0, full_scale);
  if (name == "dendrite-3d-k2") return base_dendrite_3d(2.0, 2700.0, full_scale);

  throw ConfigError("config: unknown preset \"" + name + "\"");
}

} // namespace dendrite

#include "qwalk/config.hpp"

#include <fstream>

namespace qwalk {

namespace {

double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ConfigError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

}  // namespace

Json profile_to_json(const AngleProfile& profile) {
  Json j;
  if (const auto* u = std::get_if<UniformAngle>(&profile)) {
    j["kind"] = "uniform";
    j["theta"] = u->theta;
  } else if (const auto* t = std::get_if<TanhStepAngle>(&profile)) {
    j["kind"] = "tanh_step";
    j["theta_minus"] = t->theta_minus;
    j["theta_plus"] = t->theta_plus;
    j["width"] = t->width;
  } else if (const auto* p = std::get_if<PiecewiseAngle>(&profile)) {
    j["kind"] = "piecewise";
    j["theta_minus"] = p->theta_minus;
    j["theta_plus"] = p->theta_plus;
    j["boundary"] = p->boundary;
  } else {
    const auto& table = std::get<TableAngle>(profile);
    j["kind"] = "table";
    j["theta"] = table.theta;
  }
  return j;
}

AngleProfile profile_from_json(const Json& j) {
  if (j.is_number()) return UniformAngle{j.get<double>()};
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("angle profile must be a number or an object with 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") return UniformAngle{require_number(j, "theta")};
  if (kind == "tanh_step") {
    TanhStepAngle t{require_number(j, "theta_minus"), require_number(j, "theta_plus")};
    if (j.contains("width")) t.width = j["width"].get<double>();
    return t;
  }
  if (kind == "piecewise") {
    PiecewiseAngle p{require_number(j, "theta_minus"), require_number(j, "theta_plus")};
    if (j.contains("boundary")) p.boundary = j["boundary"].get<int>();
    return p;
  }
  if (kind == "table") {
    if (!j.contains("theta") || !j["theta"].is_array())
      throw ConfigError("table profile needs a 'theta' array");
    return TableAngle{j["theta"].get<std::vector<double>>()};
  }
  throw ConfigError("unknown angle profile kind '" + kind + "'");
}

Json family_to_json(const ProtocolFamily& family) {
  Json j;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Conventional1D>) {
          j["name"] = "conventional_1d";
          j["theta"] = profile_to_json(f.theta);
        } else if constexpr (std::is_same_v<F, Reflecting1D>) {
          j["name"] = "reflecting_1d";
          j["theta"] = f.theta;
          j["phi"] = f.phi;
        } else {
          if constexpr (std::is_same_v<F, SplitStep1D>) j["name"] = "split_step_1d";
          if constexpr (std::is_same_v<F, TimeShiftedSplitStep1D>)
            j["name"] = "time_shifted_split_step_1d";
          if constexpr (std::is_same_v<F, TwoDSixOp>) j["name"] = "two_d_six_op";
          if constexpr (std::is_same_v<F, TwoDSimple>) j["name"] = "two_d_simple";
          j["theta1"] = profile_to_json(f.theta1);
          j["theta2"] = profile_to_json(f.theta2);
        }
      },
      family);
  return j;
}

ProtocolFamily family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("name"))
    throw ConfigError("family must be an object with 'name'");
  const std::string name = j["name"].get<std::string>();
  if (name == "conventional_1d") return Conventional1D{profile_from_json(j.at("theta"))};
  if (name == "reflecting_1d")
    return Reflecting1D{require_number(j, "theta"), require_number(j, "phi")};
  if (name == "split_step_1d")
    return SplitStep1D{profile_from_json(j.at("theta1")), profile_from_json(j.at("theta2"))};
  if (name == "time_shifted_split_step_1d")
    return TimeShiftedSplitStep1D{profile_from_json(j.at("theta1")),
                                  profile_from_json(j.at("theta2"))};
  if (name == "two_d_six_op")
    return TwoDSixOp{profile_from_json(j.at("theta1")), profile_from_json(j.at("theta2"))};
  if (name == "two_d_simple")
    return TwoDSimple{profile_from_json(j.at("theta1")), profile_from_json(j.at("theta2"))};
  throw ConfigError("unknown family '" + name + "'");
}

Json geometry_to_json(const Geometry& geometry) {
  Json j;
  if (const auto* line = std::get_if<Line>(&geometry)) {
    j["kind"] = line->orientation == -1 ? "reflecting_line" : "line";
    j["length"] = line->length;
  } else {
    const auto& t = std::get<Torus2D>(geometry);
    j["kind"] = "torus";
    j["lx"] = t.lx;
    j["ly"] = t.ly;
  }
  return j;
}

Geometry geometry_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("geometry must be an object with 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "line") return Line::centered(require_int(j, "length"));
  if (kind == "reflecting_line") return Line::reflecting(require_int(j, "length"));
  if (kind == "torus") return Torus2D::centered(require_int(j, "lx"), require_int(j, "ly"));
  throw ConfigError("unknown geometry kind '" + kind + "'");
}

Json config_to_json(const ExperimentConfig& config) {
  Json j;
  j["experiment"] = config.experiment;
  if (!config.paper_figure.empty()) j["paper_figure"] = config.paper_figure;
  if (config.family) j["family"] = family_to_json(*config.family);
  if (config.geometry) j["geometry"] = geometry_to_json(*config.geometry);
  j["steps"] = config.steps;
  j["initial"] = Json{{"x", config.initial.x},
                      {"y", config.initial.y},
                      {"spin", Json::array({Json::array({config.initial.spin[0].real(),
                                                         config.initial.spin[0].imag()}),
                                            Json::array({config.initial.spin[1].real(),
                                                         config.initial.spin[1].imag()})})}};
  j["window"] = Json{{"center", config.window.center}, {"radius", config.window.radius}};
  j["grid"] = Json{{"theta_points", config.grid.theta_points},
                   {"k_points", config.grid.k_points},
                   {"k_points_2d", config.grid.k_points_2d},
                   {"kx_points", config.grid.kx_points},
                   {"bins", config.grid.bins}};
  j["tolerances"] = Json{{"gapless", config.tolerances.gapless},
                         {"charge_window", config.tolerances.charge_window}};
  if (config.boundstate)
    j["boundstate"] = Json{{"theta", config.boundstate->theta},
                           {"phi", config.boundstate->phi},
                           {"sites", config.boundstate->sites}};
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  ExperimentConfig config;
  if (!j.contains("experiment"))
    throw ConfigError("config needs an 'experiment' field");
  config.experiment = j["experiment"].get<std::string>();
  if (j.contains("paper_figure")) config.paper_figure = j["paper_figure"].get<std::string>();
  if (j.contains("family")) config.family = family_from_json(j["family"]);
  if (j.contains("geometry")) config.geometry = geometry_from_json(j["geometry"]);
  if (j.contains("steps")) config.steps = j["steps"].get<int>();
  if (j.contains("initial")) {
    const Json& init = j["initial"];
    if (init.contains("x")) config.initial.x = init["x"].get<int>();
    if (init.contains("y")) config.initial.y = init["y"].get<int>();
    if (init.contains("spin")) {
      const Json& spin = init["spin"];
      if (!spin.is_array() || spin.size() != 2)
        throw ConfigError("initial.spin must be [[re,im],[re,im]]");
      for (int s = 0; s < 2; ++s) {
        if (spin[s].is_number()) {
          config.initial.spin[s] = Complex(spin[s].get<double>(), 0.0);
        } else if (spin[s].is_array() && spin[s].size() == 2) {
          config.initial.spin[s] =
              Complex(spin[s][0].get<double>(), spin[s][1].get<double>());
        } else {
          throw ConfigError("initial.spin entries must be numbers or [re, im]");
        }
      }
    }
  }
  if (j.contains("window")) {
    if (j["window"].contains("center")) config.window.center = j["window"]["center"].get<int>();
    if (j["window"].contains("radius")) config.window.radius = j["window"]["radius"].get<int>();
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    if (g.contains("theta_points")) config.grid.theta_points = g["theta_points"].get<int>();
    if (g.contains("k_points")) config.grid.k_points = g["k_points"].get<int>();
    if (g.contains("k_points_2d")) config.grid.k_points_2d = g["k_points_2d"].get<int>();
    if (g.contains("kx_points")) config.grid.kx_points = g["kx_points"].get<int>();
    if (g.contains("bins")) config.grid.bins = g["bins"].get<int>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (t.contains("gapless")) config.tolerances.gapless = t["gapless"].get<double>();
    if (t.contains("charge_window"))
      config.tolerances.charge_window = t["charge_window"].get<double>();
  }
  if (j.contains("boundstate")) {
    const Json& b = j["boundstate"];
    config.boundstate = BoundStateSpec{require_number(b, "theta"), require_number(b, "phi"),
                                       require_int(b, "sites")};
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace qwalk

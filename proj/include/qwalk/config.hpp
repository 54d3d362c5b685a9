#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qwalk/protocol.hpp"

namespace qwalk {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InitialState {
  int x = 0;
  int y = 0;  // ignored in 1D
  std::array<Complex, 2> spin = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
};

struct WindowSpec {
  int center = 0;
  int radius = 5;
};

struct GridSpec {
  int theta_points = 60;    // phase-diagram resolution per axis
  int k_points = 1024;      // 1D momentum grid
  int k_points_2d = 256;    // 2D momentum grid per axis
  int kx_points = 101;      // strip momentum samples
  int bins = 512;           // asymptotic-distribution bins
};

struct ToleranceSpec {
  double gapless = 1e-6;        // min-gap threshold for critical cells
  double charge_window = 1e-6;  // energy window for the 0/pi subspaces
};

struct BoundStateSpec {
  double theta = 0.5 * M_PI;
  double phi = 0.0;
  int sites = 60;
};

struct ExperimentConfig {
  std::string experiment;  // walk1d, phase1d, phase2d, edge2d, boundstate,
                           // asymptotic, spectrum
  std::string paper_figure;
  std::optional<ProtocolFamily> family;
  std::optional<Geometry> geometry;
  int steps = 0;
  InitialState initial;
  WindowSpec window;
  GridSpec grid;
  ToleranceSpec tolerances;
  std::optional<BoundStateSpec> boundstate;
};

Json profile_to_json(const AngleProfile& profile);
AngleProfile profile_from_json(const Json& j);

Json family_to_json(const ProtocolFamily& family);
ProtocolFamily family_from_json(const Json& j);

Json geometry_to_json(const Geometry& geometry);
Geometry geometry_from_json(const Json& j);

Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);

ExperimentConfig load_config(const std::string& path);

}  // namespace qwalk

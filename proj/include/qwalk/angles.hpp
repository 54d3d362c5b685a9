#pragma once

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace qwalk {

struct UniformAngle {
  double theta = 0.0;
};

// theta(x) = (theta_minus + theta_plus)/2 + (theta_plus - theta_minus)/2 * tanh(x/width)
struct TanhStepAngle {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  double width = 3.0;
};

// theta_minus for x <= boundary, theta_plus for x > boundary
struct PiecewiseAngle {
  double theta_minus = 0.0;
  double theta_plus = 0.0;
  int boundary = 0;
};

// Arbitrary per-site angles, indexed by storage site.
struct TableAngle {
  std::vector<double> theta;
};

using AngleProfile = std::variant<UniformAngle, TanhStepAngle, PiecewiseAngle, TableAngle>;

// coord is the physical coordinate the profile varies along (x in 1D, y for
// the half-plane constructions in 2D); site is the storage index, used only
// by TableAngle.
inline double angle_at(const AngleProfile& profile, double coord, int site) {
  if (const auto* u = std::get_if<UniformAngle>(&profile)) return u->theta;
  if (const auto* t = std::get_if<TanhStepAngle>(&profile)) {
    return 0.5 * (t->theta_minus + t->theta_plus) +
           0.5 * (t->theta_plus - t->theta_minus) * std::tanh(coord / t->width);
  }
  if (const auto* p = std::get_if<PiecewiseAngle>(&profile)) {
    return coord <= p->boundary ? p->theta_minus : p->theta_plus;
  }
  const auto& table = std::get<TableAngle>(profile);
  if (site < 0 || site >= static_cast<int>(table.theta.size()))
    throw std::out_of_range("TableAngle: site outside table");
  return table.theta[site];
}

inline bool is_uniform(const AngleProfile& profile) {
  return std::holds_alternative<UniformAngle>(profile);
}

inline double uniform_angle(const AngleProfile& profile) {
  if (const auto* u = std::get_if<UniformAngle>(&profile)) return u->theta;
  throw std::invalid_argument("angle profile is not uniform");
}

}  // namespace qwalk

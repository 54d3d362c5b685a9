#include "qwalk/state.hpp"

#include <cmath>

namespace qwalk {

SpinorState SpinorState::localized(const Geometry& geometry, int site,
                                   std::array<Complex, 2> spinor) {
  const int n = num_sites(geometry);
  if (site < 0 || site >= n) throw std::out_of_range("localized: site outside geometry");
  const double nrm = std::sqrt(std::norm(spinor[0]) + std::norm(spinor[1]));
  if (nrm == 0.0) throw std::invalid_argument("localized: zero-norm spinor");
  SpinorState state(geometry);
  state.amp(site, kSpinUp) = spinor[0] / nrm;
  state.amp(site, kSpinDown) = spinor[1] / nrm;
  return state;
}

SpinorState SpinorState::localized2d(const Torus2D& torus, int x, int y,
                                     std::array<Complex, 2> spinor) {
  return localized(Geometry{torus}, torus.site_of(x, y), spinor);
}

Eigen::VectorXd SpinorState::position_distribution() const {
  const int n = sites();
  Eigen::VectorXd p(n);
  for (int s = 0; s < n; ++s)
    p[s] = std::norm(amp(s, kSpinUp)) + std::norm(amp(s, kSpinDown));
  return p;
}

double SpinorState::probability_in_window(int center_site, int radius) const {
  if (radius < 0) throw std::invalid_argument("probability_in_window: radius < 0");
  const Eigen::VectorXd p = position_distribution();
  double total = 0.0;
  if (const auto* line = std::get_if<Line>(&geometry_)) {
    const int xc = line->coord(center_site);
    for (int s = 0; s < line->length; ++s)
      if (std::abs(line->coord(s) - xc) <= radius) total += p[s];
  } else {
    const auto& t = std::get<Torus2D>(geometry_);
    const int xc = t.coord_x(center_site), yc = t.coord_y(center_site);
    for (int s = 0; s < sites(); ++s) {
      const int dx = std::abs(t.coord_x(s) - xc), dy = std::abs(t.coord_y(s) - yc);
      if (std::max(dx, dy) <= radius) total += p[s];
    }
  }
  return total;
}

double SpinorState::position_expectation() const {
  const Eigen::VectorXd p = position_distribution();
  double mean = 0.0;
  if (const auto* line = std::get_if<Line>(&geometry_)) {
    for (int s = 0; s < line->length; ++s) mean += p[s] * line->coord(s);
  } else {
    const auto& t = std::get<Torus2D>(geometry_);
    for (int s = 0; s < sites(); ++s) mean += p[s] * t.coord_x(s);
  }
  return mean;
}

double SpinorState::participation_ratio() const {
  const Eigen::VectorXd p = position_distribution();
  const double sum_sq = p.array().square().sum();
  return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

double SpinorState::mean_abs_y() const {
  const auto& t = std::get<Torus2D>(geometry_);
  const Eigen::VectorXd p = position_distribution();
  double mean = 0.0;
  for (int s = 0; s < sites(); ++s) mean += p[s] * std::abs(t.coord_y(s));
  return mean;
}

namespace {

// R_y(theta) = exp(-i theta sigma_y / 2) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
inline void rotate_spinor(Complex& up, Complex& down, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const Complex u = c * up - s * down;
  const Complex d = s * up + c * down;
  up = u;
  down = d;
}

double profile_coord(const Geometry& g, int site) {
  if (const auto* line = std::get_if<Line>(&g)) return line->coord(site);
  return std::get<Torus2D>(g).coord_y(site);
}

}  // namespace

SpinorState apply_rotation(const SpinorState& state, const AngleProfile& profile) {
  SpinorState out = state;
  const int n = state.sites();
  for (int s = 0; s < n; ++s) {
    const double theta = angle_at(profile, profile_coord(state.geometry(), s), s);
    rotate_spinor(out.amp(s, kSpinUp), out.amp(s, kSpinDown), theta);
  }
  return out;
}

SpinorState apply_rotation_z(const SpinorState& state, const AngleProfile& profile) {
  SpinorState out = state;
  const int n = state.sites();
  for (int s = 0; s < n; ++s) {
    const double theta = angle_at(profile, profile_coord(state.geometry(), s), s);
    const Complex phase(std::cos(0.5 * theta), -std::sin(0.5 * theta));
    out.amp(s, kSpinUp) *= phase;
    out.amp(s, kSpinDown) *= std::conj(phase);
  }
  return out;
}

namespace {

// Shift one spin component of a 1D state by `dx` physical units.
void shift_line(const SpinorState& in, SpinorState& out, const Line& line, int spin,
                int dx) {
  const int step = dx * line.orientation;  // site-index increment
  for (int s = 0; s < line.length; ++s)
    out.amp(wrap_index(s + step, line.length), spin) += in.amp(s, spin);
}

SpinorState translate_1d(const SpinorState& state, const Line& line, int dx_up,
                         int dx_down, const BoundaryCondition& boundary) {
  SpinorState out(state.geometry());
  if (std::holds_alternative<Periodic>(boundary)) {
    shift_line(state, out, line, kSpinUp, dx_up);
    shift_line(state, out, line, kSpinDown, dx_down);
    return out;
  }
  const auto& edge = std::get<ReflectingEdge>(boundary);
  if (!(dx_up == 1 && dx_down == -1))
    throw std::invalid_argument("ReflectingEdge requires the two-sided translation");
  if (line.orientation != -1 || line.origin != 0)
    throw std::invalid_argument("ReflectingEdge requires a reflecting Line geometry");
  const Complex edge_phase = std::polar(1.0, edge.phi);
  const int last = line.length - 1;
  // Spin up advances toward the edge at site 0 (x = -site), spin down away.
  // The truncated far end reflects down into up with the same phase; the
  // down->up reflector carries the mirrored bound-state case table, so equal
  // phases put the two edge states at opposite special energies.
  for (int s = 1; s <= last; ++s) out.amp(s - 1, kSpinUp) += state.amp(s, kSpinUp);
  out.amp(0, kSpinDown) += edge_phase * state.amp(0, kSpinUp);
  for (int s = 0; s < last; ++s) out.amp(s + 1, kSpinDown) += state.amp(s, kSpinDown);
  out.amp(last, kSpinUp) += edge_phase * state.amp(last, kSpinDown);
  return out;
}

SpinorState translate_2d(const SpinorState& state, const Torus2D& torus, int dx,
                         int dy) {
  SpinorState out(state.geometry());
  for (int sx = 0; sx < torus.lx; ++sx) {
    for (int sy = 0; sy < torus.ly; ++sy) {
      const int src = torus.site(sx, sy);
      const int up_dst = torus.site(wrap_index(sx + dx, torus.lx), wrap_index(sy + dy, torus.ly));
      const int dn_dst = torus.site(wrap_index(sx - dx, torus.lx), wrap_index(sy - dy, torus.ly));
      out.amp(up_dst, kSpinUp) += state.amp(src, kSpinUp);
      out.amp(dn_dst, kSpinDown) += state.amp(src, kSpinDown);
    }
  }
  return out;
}

}  // namespace

SpinorState apply_translation(const SpinorState& state, const TranslationRule& rule,
                              const BoundaryCondition& boundary) {
  if (const auto* line = std::get_if<Line>(&state.geometry())) {
    int dx_up = 0, dx_down = 0;
    if (std::holds_alternative<BothOpposite>(rule)) {
      dx_up = 1;
      dx_down = -1;
    } else if (std::holds_alternative<UpOnly>(rule)) {
      dx_up = 1;
    } else if (std::holds_alternative<DownOnly>(rule)) {
      dx_down = -1;
    } else {
      throw std::invalid_argument("Axis2D translation on a 1D geometry");
    }
    return translate_1d(state, *line, dx_up, dx_down, boundary);
  }
  const auto& torus = std::get<Torus2D>(state.geometry());
  if (!std::holds_alternative<Periodic>(boundary))
    throw std::invalid_argument("2D translations support periodic boundaries only");
  const auto* axis = std::get_if<Axis2D>(&rule);
  if (!axis) throw std::invalid_argument("2D geometry requires an Axis2D rule");
  return translate_2d(state, torus, axis->dx, axis->dy);
}

}  // namespace qwalk

#include "qwalk/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

inline double clamp_unit(double x) { return std::max(-1.0, std::min(1.0, x)); }

BandPoint make_point(double cos_e, double nx_raw, double ny_raw, double nz_raw) {
  BandPoint p;
  p.energy = std::acos(clamp_unit(cos_e));
  const double sin_e = std::sin(p.energy);
  if (sin_e < kGaplessTol) {
    p.gapless = true;
    return p;
  }
  p.axis = Eigen::Vector3d(nx_raw / sin_e, ny_raw / sin_e, nz_raw / sin_e);
  return p;
}

}  // namespace

BandPoint band_conventional(double theta, double k) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  return make_point(c * std::cos(k), s * std::sin(k), s * std::cos(k), -c * std::sin(k));
}

BandPoint band_splitstep(double theta1, double theta2, double k) {
  const double c1 = std::cos(0.5 * theta1), s1 = std::sin(0.5 * theta1);
  const double c2 = std::cos(0.5 * theta2), s2 = std::sin(0.5 * theta2);
  return make_point(c1 * c2 * std::cos(k) - s1 * s2,
                    c2 * s1 * std::sin(k),
                    s2 * c1 + c2 * s1 * std::cos(k),
                    -c1 * c2 * std::sin(k));
}

BandPoint band_from_matrix(const Eigen::Matrix2cd& u) {
  BandPoint p;
  p.energy = std::acos(clamp_unit(0.5 * u.trace().real()));
  const double sin_e = std::sin(p.energy);
  if (sin_e < kGaplessTol) {
    p.gapless = true;
    return p;
  }
  const double nx = -(u(0, 1).imag() + u(1, 0).imag()) / (2.0 * sin_e);
  const double ny = (u(1, 0).real() - u(0, 1).real()) / (2.0 * sin_e);
  const double nz = (u(1, 1).imag() - u(0, 0).imag()) / (2.0 * sin_e);
  p.axis = Eigen::Vector3d(nx, ny, nz);
  return p;
}

BandPoint band_2d_sixop(double theta1, double theta2, double kx, double ky) {
  const double c2 = std::cos(0.5 * theta2), s2 = std::sin(0.5 * theta2);
  const double cos_e = std::cos(kx) * std::cos(kx + 2.0 * ky) * std::cos(theta1) * c2 -
                       std::sin(kx) * std::sin(kx + 2.0 * ky) * c2 -
                       std::cos(kx) * std::cos(kx) * std::sin(theta1) * s2;
  BandPoint p = band_from_matrix(
      momentum_step_matrix(TwoDSixOp{UniformAngle{theta1}, UniformAngle{theta2}}, kx, ky));
  p.energy = std::acos(clamp_unit(cos_e));
  if (std::sin(p.energy) < kGaplessTol) {
    p.gapless = true;
    p.axis.setZero();
  }
  return p;
}

BandPoint band_2d_simple(double theta1, double theta2, double kx, double ky) {
  const double c1 = std::cos(0.5 * theta1), s1 = std::sin(0.5 * theta1);
  const double c2 = std::cos(0.5 * theta2), s2 = std::sin(0.5 * theta2);
  const double cos_e = std::cos(kx + ky) * c1 * c2 - std::cos(kx - ky) * s1 * s2;
  BandPoint p = band_from_matrix(
      momentum_step_matrix(TwoDSimple{UniformAngle{theta1}, UniformAngle{theta2}}, kx, ky));
  p.energy = std::acos(clamp_unit(cos_e));
  if (std::sin(p.energy) < kGaplessTol) {
    p.gapless = true;
    p.axis.setZero();
  }
  return p;
}

BandPoint band_point(const ProtocolFamily& family, double kx, double ky) {
  if (const auto* c = std::get_if<Conventional1D>(&family))
    return band_conventional(uniform_angle(c->theta), kx);
  if (const auto* s = std::get_if<SplitStep1D>(&family))
    return band_splitstep(uniform_angle(s->theta1), uniform_angle(s->theta2), kx);
  if (std::holds_alternative<TimeShiftedSplitStep1D>(family))
    return band_from_matrix(momentum_step_matrix(family, kx));
  if (const auto* six = std::get_if<TwoDSixOp>(&family))
    return band_2d_sixop(uniform_angle(six->theta1), uniform_angle(six->theta2), kx, ky);
  if (const auto* simple = std::get_if<TwoDSimple>(&family))
    return band_2d_simple(uniform_angle(simple->theta1), uniform_angle(simple->theta2), kx, ky);
  throw std::invalid_argument("band_point: family has no translation-invariant band");
}

double brillouin_halfwidth(const ProtocolFamily& family) {
  return std::holds_alternative<TwoDSixOp>(family) ? 0.5 * M_PI : M_PI;
}

bool BlochBand1D::any_gapless() const {
  return std::any_of(gapless.begin(), gapless.end(), [](char f) { return f != 0; });
}

bool BlochBand2D::any_gapless() const {
  return std::any_of(gapless.begin(), gapless.end(), [](char f) { return f != 0; });
}

BlochBand1D compute_band(const ProtocolFamily& family, int resolution) {
  if (resolution < 2) throw std::invalid_argument("compute_band: resolution too small");
  const double half = brillouin_halfwidth(family);
  BlochBand1D band;
  band.k.resize(resolution);
  band.energy.resize(resolution);
  band.axis.resize(resolution);
  band.gapless.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double k = -half + 2.0 * half * i / resolution;
    const BandPoint p = band_point(family, k);
    band.k[i] = k;
    band.energy[i] = p.energy;
    band.axis[i] = p.axis;
    band.gapless[i] = p.gapless ? 1 : 0;
  }
  return band;
}

BlochBand2D compute_band_2d(const ProtocolFamily& family, int resolution) {
  if (resolution < 2) throw std::invalid_argument("compute_band_2d: resolution too small");
  const double half = brillouin_halfwidth(family);
  BlochBand2D band;
  band.kx.resize(resolution);
  band.ky.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    band.kx[i] = -half + 2.0 * half * i / resolution;
    band.ky[i] = band.kx[i];
  }
  band.energy.resize(resolution * resolution);
  band.axis.resize(resolution * resolution);
  band.gapless.resize(resolution * resolution);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const BandPoint p = band_point(family, band.kx[i], band.ky[j]);
      const int idx = i * resolution + j;
      band.energy[idx] = p.energy;
      band.axis[idx] = p.axis;
      band.gapless[idx] = p.gapless ? 1 : 0;
    }
  }
  return band;
}

std::vector<double> group_velocity(const BlochBand1D& band) {
  const int n = static_cast<int>(band.k.size());
  const double dk = band.k[1] - band.k[0];
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double ep = band.energy[(i + 1) % n];
    const double em = band.energy[(i - 1 + n) % n];
    v[i] = (ep - em) / (2.0 * dk);
  }
  return v;
}

double group_velocity_conventional(double theta, double k) {
  const double c = std::cos(0.5 * theta);
  const double e = std::acos(clamp_unit(c * std::cos(k)));
  const double sin_e = std::sin(e);
  if (sin_e < kGaplessTol) throw NumericalError("group velocity at a gapless point");
  return c * std::sin(k) / sin_e;
}

double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

QuasiEnergySpectrum diagonalize(const Eigen::MatrixXcd& u, const Geometry& geometry,
                                double unitarity_tol) {
  if (u.rows() != u.cols() || u.rows() != 2 * num_sites(geometry))
    throw std::invalid_argument("diagonalize: matrix/geometry size mismatch");
  const double defect = unitarity_defect(u);
  if (defect > unitarity_tol)
    throw NumericalError("diagonalize: input is not unitary, defect = " +
                         std::to_string(defect));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("diagonalize: eigensolver failed");

  const int dim = static_cast<int>(u.rows());
  std::vector<double> phases(dim);
  for (int i = 0; i < dim; ++i) {
    double e = -std::arg(solver.eigenvalues()[i]);
    if (e <= -M_PI) e += 2.0 * M_PI;  // branch (-pi, pi]
    phases[i] = e;
  }
  std::vector<int> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return phases[a] < phases[b]; });

  QuasiEnergySpectrum spec;
  spec.phases.resize(dim);
  spec.vectors.resize(dim, dim);
  spec.position_mean.resize(dim);
  spec.participation.resize(dim);
  const bool two_d = !is_1d(geometry);
  if (two_d) spec.mean_abs_y.resize(dim);
  SpinorState probe(geometry);
  for (int i = 0; i < dim; ++i) {
    spec.phases[i] = phases[order[i]];
    spec.vectors.col(i) = solver.eigenvectors().col(order[i]);
    probe.amplitudes() = spec.vectors.col(i);
    spec.position_mean[i] = probe.position_expectation();
    spec.participation[i] = probe.participation_ratio();
    if (two_d) spec.mean_abs_y[i] = probe.mean_abs_y();
  }
  return spec;
}

namespace {

double circ_dist_sites(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

void collect_boundaries(const AngleProfile& profile, const Torus2D& torus,
                        std::vector<double>& out) {
  const double y_min = -torus.origin_y;
  const double y_max = y_min + torus.ly - 1;
  if (std::holds_alternative<PiecewiseAngle>(profile)) {
    // Scan for actual jumps between circularly adjacent rows.
    for (int sy = 0; sy < torus.ly; ++sy) {
      const double y = y_min + sy;
      const double y_next = y_min + (sy + 1) % torus.ly;
      if (std::abs(angle_at(profile, y, sy) - angle_at(profile, y_next, 0)) > 1e-12)
        out.push_back(y + 0.5);
    }
  } else if (const auto* t = std::get_if<TanhStepAngle>(&profile)) {
    if (t->theta_minus == t->theta_plus) return;
    out.push_back(0.0);        // wall center
    out.push_back(y_max + 0.5);  // wrap seam
  }
}

}  // namespace

std::vector<double> profile_boundaries(const ProtocolFamily& family, const Torus2D& torus) {
  std::vector<double> out;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, TwoDSixOp> || std::is_same_v<F, TwoDSimple>) {
          collect_boundaries(f.theta1, torus, out);
          collect_boundaries(f.theta2, torus, out);
        }
      },
      family);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-9; }),
            out.end());
  return out;
}

Eigen::MatrixXcd strip_step_matrix(const ProtocolFamily& family, double kx,
                                   const Torus2D& torus) {
  if (!family_is_2d(family))
    throw std::invalid_argument("strip_step_matrix: 2D family required");
  const WalkProtocol protocol = build_protocol(family, Geometry{torus});
  const int ly = torus.ly;
  const int dim = 2 * ly;

  auto apply = [&](const Eigen::VectorXcd& in, const ProtocolStep& step) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    if (const auto* rot = std::get_if<RotateStep>(&step)) {
      for (int sy = 0; sy < ly; ++sy) {
        const double theta = angle_at(rot->profile, sy - torus.origin_y, sy);
        const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
        out[2 * sy + kSpinUp] = c * in[2 * sy + kSpinUp] - s * in[2 * sy + kSpinDown];
        out[2 * sy + kSpinDown] = s * in[2 * sy + kSpinUp] + c * in[2 * sy + kSpinDown];
      }
    } else if (const auto* rz = std::get_if<RotateZStep>(&step)) {
      for (int sy = 0; sy < ly; ++sy) {
        const double theta = angle_at(rz->profile, sy - torus.origin_y, sy);
        const Complex phase = std::polar(1.0, -0.5 * theta);
        out[2 * sy + kSpinUp] = phase * in[2 * sy + kSpinUp];
        out[2 * sy + kSpinDown] = std::conj(phase) * in[2 * sy + kSpinDown];
      }
    } else {
      const auto& tr = std::get<TranslateStep>(step);
      const auto& axis = std::get<Axis2D>(tr.rule);
      const Complex up_phase = std::polar(1.0, -kx * axis.dx);
      const Complex dn_phase = std::conj(up_phase);
      for (int sy = 0; sy < ly; ++sy) {
        out[2 * wrap_index(sy + axis.dy, ly) + kSpinUp] += up_phase * in[2 * sy + kSpinUp];
        out[2 * wrap_index(sy - axis.dy, ly) + kSpinDown] += dn_phase * in[2 * sy + kSpinDown];
      }
    }
    return out;
  };

  Eigen::MatrixXcd u(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXcd column = Eigen::VectorXcd::Zero(dim);
    column[j] = 1.0;
    for (const auto& step : protocol.steps) column = apply(column, step);
    u.col(j) = column;
  }
  return u;
}

StripSpectrum strip_spectrum(const ProtocolFamily& family, const std::vector<double>& kx,
                             const Torus2D& torus, EdgeTagParams tags, int max_dim,
                             int workers) {
  if (2 * torus.ly > max_dim)
    throw std::invalid_argument("strip_spectrum: geometry exceeds dense cap");
  StripSpectrum result;
  result.kx = kx;
  result.boundaries = profile_boundaries(family, torus);
  result.states.resize(kx.size());

  const int ly = torus.ly;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  parallel_for_index(static_cast<int>(kx.size()), workers, [&](int ik_int) {
    const std::size_t ik = ik_int;
    try {
    const Eigen::MatrixXcd u = strip_step_matrix(family, kx[ik], torus);
    const double defect = unitarity_defect(u);
    if (defect > 1e-8)
      throw NumericalError("strip_spectrum: non-unitary strip operator");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, true);
    if (solver.info() != Eigen::Success)
      throw NumericalError("strip_spectrum: eigensolver failed");

    std::vector<StripState> states(2 * ly);
    for (int i = 0; i < 2 * ly; ++i) {
      StripState st;
      double e = -std::arg(solver.eigenvalues()[i]);
      if (e <= -M_PI) e += 2.0 * M_PI;
      st.energy = e;

      Eigen::VectorXd p(ly);
      for (int sy = 0; sy < ly; ++sy)
        p[sy] = std::norm(solver.eigenvectors()(2 * sy + kSpinUp, i)) +
                std::norm(solver.eigenvectors()(2 * sy + kSpinDown, i));
      double mean_y = 0.0;
      for (int sy = 0; sy < ly; ++sy) mean_y += p[sy] * (sy - torus.origin_y);
      st.mean_y = mean_y;
      const double sum_sq = p.array().square().sum();
      st.participation = sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;

      if (!result.boundaries.empty()) {
        double best = std::numeric_limits<double>::max();
        int best_b = -1;
        for (std::size_t b = 0; b < result.boundaries.size(); ++b) {
          double mean_d = 0.0;
          for (int sy = 0; sy < ly; ++sy)
            mean_d += p[sy] * circ_dist_sites(sy - torus.origin_y, result.boundaries[b],
                                              static_cast<double>(ly));
          if (mean_d < best) {
            best = mean_d;
            best_b = static_cast<int>(b);
          }
        }
        st.edge_distance = best;
        st.nearest_boundary = best_b;
        st.edge = st.participation < tags.participation_fraction * ly ||
                  st.edge_distance < tags.boundary_distance;
      }
      states[i] = st;
    }
    std::sort(states.begin(), states.end(),
              [](const StripState& a, const StripState& b) { return a.energy < b.energy; });
    result.states[ik] = std::move(states);
    } catch (...) {
      std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace qwalk

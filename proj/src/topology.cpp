#include "qwalk/topology.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qwalk {

ChiralFrame chiral_frame(double theta1) {
  ChiralFrame frame;
  frame.axis = Eigen::Vector3d(std::cos(0.5 * theta1), 0.0, std::sin(0.5 * theta1));
  const Complex mi(0.0, -1.0);
  Eigen::Matrix2cd a_sigma;
  a_sigma << frame.axis.z(), frame.axis.x(), frame.axis.x(), -frame.axis.z();
  frame.gamma = mi * a_sigma;
  return frame;
}

Eigen::MatrixXcd lift_onsite(const Eigen::Matrix2cd& op, int sites) {
  Eigen::MatrixXcd lifted = Eigen::MatrixXcd::Zero(2 * sites, 2 * sites);
  for (int s = 0; s < sites; ++s) lifted.block<2, 2>(2 * s, 2 * s) = op;
  return lifted;
}

double chiral_symmetry_residual(const Eigen::MatrixXcd& u, const ChiralFrame& frame) {
  const int sites = static_cast<int>(u.rows()) / 2;
  const Eigen::MatrixXcd g = lift_onsite(frame.gamma, sites);
  const Eigen::MatrixXcd lhs = g.adjoint() * u * g;
  return (lhs - u.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

double accumulate_winding(const std::vector<double>& phases) {
  double total = 0.0;
  const int n = static_cast<int>(phases.size());
  double max_step = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = phases[(i + 1) % n] - phases[i];
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d <= -M_PI) d += 2.0 * M_PI;
    max_step = std::max(max_step, std::abs(d));
    total += d;
  }
  if (max_step > 0.5 * M_PI)
    throw NumericalError("winding_number: consecutive samples subtend > pi/2");
  return total / (2.0 * M_PI);
}

}  // namespace

int winding_number(const BlochBand1D& band, const ChiralFrame& frame,
                   double planarity_tol) {
  if (band.any_gapless()) throw NumericalError("winding_number: gapless band");
  // In-plane frame: e1 = (-sin(t/2), 0, cos(t/2)) = A rotated by pi/2, e2 = y.
  const Eigen::Vector3d e1(-frame.axis.z(), 0.0, frame.axis.x());
  const Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();
  const int n = static_cast<int>(band.k.size());
  std::vector<double> phases(n);
  double planarity = 0.0;
  for (int i = 0; i < n; ++i) {
    planarity = std::max(planarity, std::abs(band.axis[i].dot(frame.axis)));
    phases[i] = std::atan2(band.axis[i].dot(e2), band.axis[i].dot(e1));
  }
  if (planarity > planarity_tol)
    throw NumericalError("winding_number: axis field not perpendicular to A");
  const double w = accumulate_winding(phases);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-6)
    throw NumericalError("winding_number: accumulated angle not an integer multiple");
  // The sign of the accumulated angle flips with the handedness of the
  // (e1, e2) frame relative to A (e.g. under theta1 -> -theta1); the phase
  // label is the orientation-free count of equator loops.
  return static_cast<int>(std::abs(rounded));
}

WindingClass winding_closed_form(double theta1, double theta2) {
  // compare |tan(theta2/2)| with |tan(theta1/2)| without poles:
  // |s2 c1| vs |s1 c2|
  const double lhs = std::abs(std::sin(0.5 * theta2) * std::cos(0.5 * theta1));
  const double rhs = std::abs(std::sin(0.5 * theta1) * std::cos(0.5 * theta2));
  if (std::abs(lhs - rhs) < 1e-12) return WindingClass::OnCriticalLine;
  return lhs < rhs ? WindingClass::One : WindingClass::Zero;
}

namespace {

double spherical_triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                               const Eigen::Vector3d& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

}  // namespace

int chern_number_solid_angle(const BlochBand2D& band, double* deviation) {
  if (band.any_gapless()) throw NumericalError("chern_number_solid_angle: gapless band");
  const int nx = static_cast<int>(band.kx.size());
  const int ny = static_cast<int>(band.ky.size());
  auto n_at = [&](int i, int j) -> const Eigen::Vector3d& {
    return band.axis[wrap_index(i, nx) * ny + wrap_index(j, ny)];
  };
  double total = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const Eigen::Vector3d& n00 = n_at(i, j);
      const Eigen::Vector3d& n10 = n_at(i + 1, j);
      const Eigen::Vector3d& n11 = n_at(i + 1, j + 1);
      const Eigen::Vector3d& n01 = n_at(i, j + 1);
      total += spherical_triangle_area(n00, n10, n11);
      total += spherical_triangle_area(n00, n11, n01);
    }
  }
  const double c = total / (4.0 * M_PI);
  const double rounded = std::round(c);
  if (deviation) *deviation = std::abs(c - rounded);
  if (std::abs(c - rounded) > 1e-3)
    throw NumericalError("chern_number_solid_angle: sum is not close to an integer");
  return static_cast<int>(rounded);
}

int chern_number_berry_plaquette(const std::vector<Eigen::Vector2cd>& field, int nkx,
                                 int nky, double* deviation) {
  if (static_cast<int>(field.size()) != nkx * nky)
    throw std::invalid_argument("chern_number_berry_plaquette: field size mismatch");
  auto link = [&](int i0, int j0, int i1, int j1) {
    const Complex overlap = field[wrap_index(i0, nkx) * nky + wrap_index(j0, nky)]
                                .dot(field[wrap_index(i1, nkx) * nky + wrap_index(j1, nky)]);
    const double mag = std::abs(overlap);
    if (mag < 1e-14)
      throw NumericalError("chern_number_berry_plaquette: vanishing link overlap");
    return overlap / mag;
  };
  double total = 0.0;
  for (int i = 0; i < nkx; ++i) {
    for (int j = 0; j < nky; ++j) {
      const Complex loop = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) *
                           link(i + 1, j + 1, i, j + 1) * link(i, j + 1, i, j);
      total += std::arg(loop);
    }
  }
  const double c = total / (2.0 * M_PI);
  const double rounded = std::round(c);
  if (deviation) *deviation = std::abs(c - rounded);
  return static_cast<int>(rounded);
}

std::vector<Eigen::Vector2cd> band_eigenvector_field(const ProtocolFamily& family,
                                                     int resolution, bool lower) {
  const double half = brillouin_halfwidth(family);
  std::vector<Eigen::Vector2cd> field(resolution * resolution);
  for (int i = 0; i < resolution; ++i) {
    const double kx = -half + 2.0 * half * i / resolution;
    for (int j = 0; j < resolution; ++j) {
      const double ky = -half + 2.0 * half * j / resolution;
      const BandPoint p = band_point(family, kx, ky);
      if (p.gapless) throw NumericalError("band_eigenvector_field: gapless point on grid");
      // Eigenvector of n.sigma with eigenvalue -1 (lower) or +1 (upper);
      // gauge switched at n_z = 0 to stay away from the poles.
      const Eigen::Vector3d n = lower ? p.axis : Eigen::Vector3d(-p.axis);
      Eigen::Vector2cd v;
      if (n.z() > 0.0) {
        v << Complex(-n.x(), n.y()), Complex(1.0 + n.z(), 0.0);
      } else {
        v << Complex(1.0 - n.z(), 0.0), Complex(-n.x(), -n.y());
      }
      field[i * resolution + j] = v.normalized();
    }
  }
  return field;
}

std::vector<Eigen::Vector2cd> lower_band_field(const ProtocolFamily& family,
                                               int resolution) {
  return band_eigenvector_field(family, resolution, true);
}

int chern_number_berry_plaquette(const ProtocolFamily& family, int resolution,
                                 double* deviation) {
  // The upper-band lattice field strength matches the orientation of the
  // solid-angle formula (the lower band carries the opposite sign).
  return chern_number_berry_plaquette(band_eigenvector_field(family, resolution, false),
                                      resolution, resolution, deviation);
}

namespace {

bool near_multiple(double value, double period, double tol) {
  const double r = std::remainder(value, period);
  return std::abs(r) < tol;
}

}  // namespace

GaplessClassification gapless_lines_sixop(double theta1, double theta2, double tol) {
  GaplessClassification c;
  const double sum = theta1 + 0.5 * theta2;
  const double diff = theta1 - 0.5 * theta2;
  if (near_multiple(sum, 2.0 * M_PI, tol)) {
    c.at_zero = true;
    c.families.push_back("theta1+theta2/2 = 2pi n (E=0)");
  }
  if (near_multiple(diff - M_PI, 2.0 * M_PI, tol)) {
    c.at_zero = true;
    c.families.push_back("theta1-theta2/2 = (2n+1) pi (E=0)");
  }
  if (near_multiple(sum - M_PI, 2.0 * M_PI, tol)) {
    c.at_pi = true;
    c.families.push_back("theta1+theta2/2 = (2n+1) pi (E=pi)");
  }
  if (near_multiple(diff, 2.0 * M_PI, tol)) {
    c.at_pi = true;
    c.families.push_back("theta1-theta2/2 = 2pi n (E=pi)");
  }
  if (near_multiple(theta2, 2.0 * M_PI, tol)) {
    c.at_zero = true;
    c.at_pi = true;
    c.families.push_back("theta2 = 2pi n (E=0 and E=pi)");
  }
  return c;
}

namespace {

double gap_at(const ProtocolFamily& family, double e_target, double kx, double ky) {
  const BandPoint p = band_point(family, kx, ky);
  return std::min(circle_distance(p.energy, e_target),
                  circle_distance(-p.energy, e_target));
}

}  // namespace

double min_gap(const ProtocolFamily& family, double e_target, int resolution) {
  const double half = brillouin_halfwidth(family);
  const bool two_d = family_is_2d(family);
  double best = std::numeric_limits<double>::max();
  double best_kx = 0.0, best_ky = 0.0;
  const int nky = two_d ? resolution : 1;
  for (int i = 0; i < resolution; ++i) {
    const double kx = -half + 2.0 * half * i / resolution;
    for (int j = 0; j < nky; ++j) {
      const double ky = two_d ? -half + 2.0 * half * j / resolution : 0.0;
      const double gap = gap_at(family, e_target, kx, ky);
      if (gap < best) {
        best = gap;
        best_kx = kx;
        best_ky = ky;
      }
    }
  }
  // One refinement pass around the coarse minimizer.
  const double dk = 2.0 * half / resolution;
  const int refine = 20;
  for (int i = -refine; i <= refine; ++i) {
    for (int j = two_d ? -refine : 0; j <= (two_d ? refine : 0); ++j) {
      const double kx = best_kx + dk * i / refine;
      const double ky = two_d ? best_ky + dk * j / refine : 0.0;
      best = std::min(best, gap_at(family, e_target, kx, ky));
    }
  }
  return best;
}

namespace {

struct SubspaceCharges {
  std::vector<double> values;
  std::vector<double> positions;
};

SubspaceCharges subspace_charges(const QuasiEnergySpectrum& spectrum,
                                 const std::vector<int>& indices,
                                 const Eigen::MatrixXcd& charge_op,
                                 const Geometry& geometry, double invariance_tol) {
  SubspaceCharges out;
  if (indices.empty()) return out;
  const int dim = static_cast<int>(spectrum.vectors.rows());
  const int m = static_cast<int>(indices.size());
  Eigen::MatrixXcd v(dim, m);
  for (int i = 0; i < m; ++i) v.col(i) = spectrum.vectors.col(indices[i]);
  // Orthonormalize (degenerate eigenvectors need not come back orthogonal).
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, m);

  const Eigen::MatrixXcd cv = charge_op * q;
  const Eigen::MatrixXcd small = q.adjoint() * cv;
  const double closure = (cv - q * small).cwiseAbs().maxCoeff();
  if (closure > invariance_tol)
    throw NumericalError("bound_state_charges: subspace is not Gamma-invariant "
                         "(chiral symmetry broken), residual = " +
                         std::to_string(closure));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(small);
  SpinorState probe(geometry);
  for (int i = 0; i < m; ++i) {
    out.values.push_back(solver.eigenvalues()[i]);
    probe.amplitudes() = q * solver.eigenvectors().col(i);
    out.positions.push_back(probe.position_expectation());
  }
  return out;
}

}  // namespace

BoundStateCharges bound_state_charges(const QuasiEnergySpectrum& spectrum,
                                      const ChiralFrame& frame, const Geometry& geometry,
                                      double window, double invariance_tol) {
  const int sites = num_sites(geometry);
  // Charge operator i Gamma = A.sigma, Hermitian with eigenvalues +-1.
  const Eigen::MatrixXcd charge_op =
      lift_onsite((Complex(0.0, 1.0) * frame.gamma).eval(), sites);

  std::vector<int> zero_idx, pi_idx;
  for (int i = 0; i < static_cast<int>(spectrum.phases.size()); ++i) {
    if (circle_distance(spectrum.phases[i], 0.0) <= window) zero_idx.push_back(i);
    if (circle_distance(spectrum.phases[i], M_PI) <= window) pi_idx.push_back(i);
  }

  BoundStateCharges charges;
  const SubspaceCharges zero =
      subspace_charges(spectrum, zero_idx, charge_op, geometry, invariance_tol);
  const SubspaceCharges pi =
      subspace_charges(spectrum, pi_idx, charge_op, geometry, invariance_tol);
  double q0 = 0.0, qpi = 0.0;
  for (double v : zero.values) q0 += v;
  for (double v : pi.values) qpi += v;
  charges.q0 = static_cast<int>(std::llround(q0));
  charges.qpi = static_cast<int>(std::llround(qpi));
  charges.q0_values = zero.values;
  charges.q0_positions = zero.positions;
  charges.qpi_values = pi.values;
  charges.qpi_positions = pi.positions;
  return charges;
}

}  // namespace qwalk

#include "qwalk/analytics.hpp"

#include <cmath>

namespace qwalk {

namespace {

double spin_overlap(const Eigen::Vector3d& n, const std::array<Complex, 2>& spin) {
  // <s| n.sigma |s> for a unit spinor s
  const Complex up = spin[0], dn = spin[1];
  const double sz = std::norm(up) - std::norm(dn);
  const Complex cross = std::conj(up) * dn;
  return n.x() * 2.0 * cross.real() + n.y() * 2.0 * cross.imag() + n.z() * sz;
}

std::array<Complex, 2> normalized_spin(std::array<Complex, 2> spin) {
  const double nrm = std::sqrt(std::norm(spin[0]) + std::norm(spin[1]));
  if (nrm == 0.0) throw std::invalid_argument("zero-norm spinor");
  return {spin[0] / nrm, spin[1] / nrm};
}

}  // namespace

AsymptoticDistribution asymptotic_distribution(const ProtocolFamily& family,
                                               std::array<Complex, 2> spin, int bins,
                                               int k_samples) {
  if (family_is_2d(family))
    throw std::invalid_argument("asymptotic_distribution: 1D families only");
  if (!family_is_uniform(family))
    throw std::invalid_argument("asymptotic_distribution: translation-invariant family required");
  spin = normalized_spin(spin);

  AsymptoticDistribution dist;
  dist.x.resize(bins);
  dist.density.assign(bins, 0.0);
  const double dx = 2.0 / bins;
  for (int b = 0; b < bins; ++b) dist.x[b] = -1.0 + (b + 0.5) * dx;

  // E(k) on a fine grid; v by central differences so non-monotonic and
  // piecewise-smooth (gapless) dispersions need no special casing.
  std::vector<double> energy(k_samples);
  std::vector<Eigen::Vector3d> axis(k_samples);
  std::vector<char> gapless(k_samples);
  const double dk = 2.0 * M_PI / k_samples;
  for (int i = 0; i < k_samples; ++i) {
    const BandPoint p = band_point(family, -M_PI + i * dk);
    energy[i] = p.energy;
    axis[i] = p.axis;
    gapless[i] = p.gapless ? 1 : 0;
  }

  // Cloud-in-cell deposition: each sample is split linearly between the two
  // nearest bin centers, which removes the integer-count jitter of nearest-bin
  // binning (the k grid is deterministic, so that jitter does not average out).
  auto deposit = [&](double x, double weight) {
    const double u = (x + 1.0) / dx - 0.5;
    int b = static_cast<int>(std::floor(u));
    const double frac = u - b;
    b = std::max(-1, std::min(bins - 1, b));
    if (b >= 0) dist.density[b] += weight * (1.0 - frac) / dx;
    if (b + 1 < bins) dist.density[b + 1] += weight * frac / dx;
  };

  const double sample_weight = 1.0 / k_samples;  // dk / 2pi
  for (int i = 0; i < k_samples; ++i) {
    const double ep = energy[(i + 1) % k_samples];
    const double em = energy[(i - 1 + k_samples) % k_samples];
    const double v = (ep - em) / (2.0 * dk);
    dist.v_max = std::max(dist.v_max, std::abs(v));
    const double overlap = gapless[i] ? 0.0 : spin_overlap(axis[i], spin);
    deposit(-v, 0.5 * (1.0 + overlap) * sample_weight);
    deposit(+v, 0.5 * (1.0 - overlap) * sample_weight);
  }
  return dist;
}

double closed_form_theta_half(double x) {
  const double edge = 1.0 / std::sqrt(2.0);
  if (std::abs(x) > edge) return 0.0;
  const double arg = 1.0 - 2.0 * x * x;
  if (arg <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (M_PI * (1.0 - x) * std::sqrt(arg));
}

Eigen::Matrix2cd reflecting_transfer_matrix(double theta, double e_b) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  if (std::abs(c) < 1e-14)
    throw std::invalid_argument("transfer matrix singular at theta = pi (mod 2 pi)");
  const Complex phase = std::polar(1.0, e_b);
  const Complex phase2 = std::polar(1.0, -2.0 * e_b);
  Eigen::Matrix2cd k;
  k << (s * s + phase2) / c, s, s, c;
  return phase * k;
}

ReflectingBoundState reflecting_bound_state(double theta, double phi) {
  const double theta_mod = theta - 4.0 * M_PI * std::floor(theta / (4.0 * M_PI));
  if (std::min(std::abs(std::remainder(phi, 2.0 * M_PI)),
               std::abs(std::remainder(phi - M_PI, 2.0 * M_PI))) > 1e-12)
    throw std::invalid_argument(
        "reflecting_bound_state: phi must be 0 or pi (chiral symmetry)");
  if (std::abs(std::remainder(theta, 2.0 * M_PI)) < 1e-12)
    throw NoBoundState("decay length diverges at theta = 0 (mod 2 pi)");
  const bool phi_zero = std::abs(std::remainder(phi, 2.0 * M_PI)) < 1e-12;
  const bool first_branch = theta_mod < 2.0 * M_PI;  // theta in (0, 2 pi)

  ReflectingBoundState bound;
  bound.theta = theta;
  bound.phi = phi_zero ? 0.0 : M_PI;
  // Case table: phi = 0 gives E_b = pi on (0, 2pi) and 0 on (2pi, 4pi);
  // phi = pi swaps them.
  bound.energy = (phi_zero == first_branch) ? M_PI : 0.0;

  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double cos_e = std::cos(bound.energy);  // +-1
  const double root = std::sqrt(std::max(0.0, cos_e * cos_e - c * c));  // = |s|
  bound.lambda_plus = (cos_e + root) / c;
  bound.lambda_minus = (cos_e - root) / c;

  // v_pm from the App. C eigenvector formula; at sin(theta) = 0 the edge
  // spinor degenerates to a basis spinor (theta = pi: exactly |down>).
  const double sin_t = std::sin(theta);
  const Complex e_m = std::polar(1.0, -bound.energy);
  const Complex e_m2 = std::polar(1.0, -2.0 * bound.energy);
  const Complex e_p2 = std::polar(1.0, 2.0 * bound.energy);
  const Complex disc = std::sqrt(e_m2 + e_p2 - 2.0 * std::cos(theta));
  if (std::abs(sin_t) > 1e-12) {
    Eigen::Vector2cd vp, vm;
    vp << (e_m2 - std::cos(theta) + e_m * disc) / sin_t, Complex(1.0, 0.0);
    vm << (e_m2 - std::cos(theta) - e_m * disc) / sin_t, Complex(1.0, 0.0);
    bound.v_plus = vp.normalized();
    bound.v_minus = vm.normalized();
  } else {
    bound.v_plus = Eigen::Vector2cd(0.0, 1.0);
    bound.v_minus = Eigen::Vector2cd(1.0, 0.0);
  }

  // Normalizability: |lambda_plus| <= 1 when cos(E_b) <= 0.
  const bool pick_plus = cos_e <= 0.0;
  bound.lambda_selected = pick_plus ? bound.lambda_plus : bound.lambda_minus;
  bound.edge_spinor = pick_plus ? bound.v_plus : bound.v_minus;
  if (std::abs(bound.lambda_selected) >= 1.0 - 1e-12)
    throw NoBoundState("no normalizable bound state");
  bound.decay_length =
      std::abs(bound.lambda_selected) > 0.0
          ? -1.0 / std::log(std::abs(bound.lambda_selected))
          : 0.0;
  return bound;
}

SpinorState embed_bound_state(const ReflectingBoundState& bound, int length) {
  SpinorState state(Geometry{Line::reflecting(length)});
  Complex factor(1.0, 0.0);
  for (int j = 0; j < length; ++j) {
    state.amp(j, kSpinUp) = factor * bound.edge_spinor[0];
    state.amp(j, kSpinDown) = factor * bound.edge_spinor[1];
    factor *= bound.lambda_selected;
  }
  state.amplitudes().normalize();
  return state;
}

ProtocolFamily zero_pi_family() {
  return SplitStep1D{UniformAngle{0.0}, PiecewiseAngle{-M_PI, M_PI, 0}};
}

ZeroPiPair zero_pi_pair_analytic(int length) {
  const Geometry geometry{Line::centered(length)};
  WalkProtocol protocol = build_protocol(zero_pi_family(), geometry);
  const int origin = std::get<Line>(geometry).site_of(0);
  const double r = 1.0 / std::sqrt(2.0);
  ZeroPiPair pair{SpinorState::localized(geometry, origin, {r, r}),
                  SpinorState::localized(geometry, origin, {r, -r}),
                  std::move(protocol)};
  return pair;
}

Complex empirical_characteristic_function(const SpinorState& initial,
                                          const WalkProtocol& protocol, int steps,
                                          double s) {
  const SpinorState final_state = evolve(initial, protocol, steps);
  const auto& line = std::get<Line>(final_state.geometry());
  const Eigen::VectorXd p = final_state.position_distribution();
  Complex total(0.0, 0.0);
  for (int site = 0; site < line.length; ++site)
    total += p[site] * std::polar(1.0, -s * line.coord(site) / steps);
  return total;
}

Complex characteristic_function_prediction(const ProtocolFamily& family,
                                           std::array<Complex, 2> spin, double s,
                                           int k_samples) {
  spin = normalized_spin(spin);
  const double dk = 2.0 * M_PI / k_samples;
  std::vector<double> energy(k_samples);
  for (int i = 0; i < k_samples; ++i)
    energy[i] = band_point(family, -M_PI + i * dk).energy;
  Complex total(0.0, 0.0);
  for (int i = 0; i < k_samples; ++i) {
    const BandPoint p = band_point(family, -M_PI + i * dk);
    const double ep = energy[(i + 1) % k_samples];
    const double em = energy[(i - 1 + k_samples) % k_samples];
    const double v = (ep - em) / (2.0 * dk);
    const double overlap = p.gapless ? 0.0 : spin_overlap(p.axis, spin);
    // band at X = -v carries weight (1+overlap)/2
    total += 0.5 * (1.0 + overlap) * std::polar(1.0, s * v) / double(k_samples);
    total += 0.5 * (1.0 - overlap) * std::polar(1.0, -s * v) / double(k_samples);
  }
  return total;
}

}  // namespace qwalk

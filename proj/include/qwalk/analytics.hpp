#pragma once

#include "qwalk/spectral.hpp"

namespace qwalk {

// Weak-limit density of the rescaled position X = x/N.
struct AsymptoticDistribution {
  std::vector<double> x;        // bin centers, uniform over [-1, 1]
  std::vector<double> density;  // P(X), trapezoid-normalized to 1
  double v_max = 0.0;           // support bound max_k |v_k|
};

// Assembles P(X) by depositing the two band contributions of each momentum
// sample. The spin-parallel band (weight (1 + <n.sigma>)/2) propagates with
// velocity -dE/dk in the convention of the band formulas, so its weight lands
// at X = -v_k and the antiparallel one at X = +v_k.
AsymptoticDistribution asymptotic_distribution(const ProtocolFamily& family,
                                               std::array<Complex, 2> spin,
                                               int bins = 512, int k_samples = 1 << 16);

// Closed form for theta = pi/2 and spin up:
// P(X) = (1/pi) / ((1 - X) sqrt(1 - 2 X^2)) on |X| <= 1/sqrt(2).
// Returns +inf at the support edges and 0 outside.
double closed_form_theta_half(double x);

struct NoBoundState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Analytic bound state of the reflecting-edge conventional walk.
struct ReflectingBoundState {
  double theta = 0.0;
  double phi = 0.0;
  double energy = 0.0;                     // 0 or pi
  Eigen::Vector2cd edge_spinor;            // (c_up, c_down) at x = 0, unit norm
  double decay_length = 0.0;               // 1 / |log|lambda_selected||
  Complex lambda_plus, lambda_minus;       // transfer eigenvalues, product 1
  Eigen::Vector2cd v_plus, v_minus;        // transfer eigenvectors, unit norm
  Complex lambda_selected;                 // the normalizable one
};

ReflectingBoundState reflecting_bound_state(double theta, double phi);

// Transfer matrix relating (c_j) to (c_{j+1}) for the reflecting-edge
// eigenproblem at quasi-energy e_b.
Eigen::Matrix2cd reflecting_transfer_matrix(double theta, double e_b);

// The bound state embedded on a reflecting chain of the given length,
// normalized; amplitude at site j (x = -j) is lambda_selected^j * spinor.
SpinorState embed_bound_state(const ReflectingBoundState& bound, int length);

// The exact quasi-energy 0 and pi pair of the theta2 = -/+ pi walk
// U = T_down R_y(theta2(x)) T_up (split-step order with theta1 = 0):
// |0> (|up> + |down>)/sqrt(2) at E = 0 and |0> (|up> - |down>)/sqrt(2) at
// E = pi.
struct ZeroPiPair {
  SpinorState zero_state;
  SpinorState pi_state;
  WalkProtocol protocol;
};

ZeroPiPair zero_pi_pair_analytic(int length = 41);
ProtocolFamily zero_pi_family();

// <e^{-i s x/N}> after evolving `steps` walk periods from the given state.
Complex empirical_characteristic_function(const SpinorState& initial,
                                          const WalkProtocol& protocol, int steps,
                                          double s);
// Stationary-phase prediction: integral dk/2pi of the two band contributions
// e^{-i s X_band} with X_band = -/+ v_k.
Complex characteristic_function_prediction(const ProtocolFamily& family,
                                           std::array<Complex, 2> spin, double s,
                                           int k_samples = 1 << 14);

}  // namespace qwalk

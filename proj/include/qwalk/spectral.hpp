#pragma once

#include <optional>
#include <vector>

#include "qwalk/protocol.hpp"

namespace qwalk {

// Numerical failure distinct from bad input; the CLI maps it to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kGaplessTol = 1e-9;  // on |sin E|

// Upper-band sample at one quasi-momentum: E in [0, pi] and the Bloch vector
// n with H(k) = E n.sigma. n is meaningless where gapless is set.
struct BandPoint {
  double energy = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  bool gapless = false;
};

BandPoint band_conventional(double theta, double k);
BandPoint band_splitstep(double theta1, double theta2, double k);
BandPoint band_2d_sixop(double theta1, double theta2, double kx, double ky);
BandPoint band_2d_simple(double theta1, double theta2, double kx, double ky);

// (E, n) from a 2x2 Bloch unitary U = e^{-i E n.sigma} (traceless effective
// Hamiltonian; the trace of U must be real up to roundoff).
BandPoint band_from_matrix(const Eigen::Matrix2cd& u);

// Evaluates the family's dispersion at one momentum (second component ignored
// in 1D).
BandPoint band_point(const ProtocolFamily& family, double kx, double ky = 0.0);

// Half of the x-side of the family's Brillouin zone: pi, except pi/2 for the
// six-operation walk whose effective lattice constant is 2.
double brillouin_halfwidth(const ProtocolFamily& family);

struct BlochBand1D {
  std::vector<double> k;
  std::vector<double> energy;
  std::vector<Eigen::Vector3d> axis;
  std::vector<char> gapless;
  bool any_gapless() const;
};

struct BlochBand2D {
  std::vector<double> kx, ky;  // grid axes, endpoint excluded
  // row-major [ikx * nky + iky]
  std::vector<double> energy;
  std::vector<Eigen::Vector3d> axis;
  std::vector<char> gapless;
  bool any_gapless() const;
};

BlochBand1D compute_band(const ProtocolFamily& family, int resolution = 1024);
BlochBand2D compute_band_2d(const ProtocolFamily& family, int resolution = 256);

// dE/dk on the 1D band grid by central differences; for the conventional walk
// the closed form cos(theta/2) sin k / sin E is also available.
std::vector<double> group_velocity(const BlochBand1D& band);
double group_velocity_conventional(double theta, double k);

struct QuasiEnergySpectrum {
  std::vector<double> phases;  // sorted ascending in (-pi, pi]
  Eigen::MatrixXcd vectors;    // column i belongs to phases[i]
  std::vector<double> position_mean;
  std::vector<double> participation;
  std::vector<double> mean_abs_y;  // empty for 1D geometries
};

QuasiEnergySpectrum diagonalize(const Eigen::MatrixXcd& u, const Geometry& geometry,
                                double unitarity_tol = 1e-8);

// Distance of two phases on the quasi-energy circle.
double circle_distance(double a, double b);

struct EdgeTagParams {
  double participation_fraction = 0.2;  // edge if PR < fraction * Ly
  double boundary_distance = 5.0;       // or mean distance to a boundary < this
};

struct StripState {
  double energy = 0.0;
  double mean_y = 0.0;            // physical y expectation
  double participation = 0.0;     // in units of sites
  double edge_distance = 0.0;     // mean circular distance to nearest boundary
  int nearest_boundary = -1;      // index into StripSpectrum::boundaries
  bool edge = false;
};

struct StripSpectrum {
  std::vector<double> kx;
  std::vector<std::vector<StripState>> states;  // [ikx][alpha], sorted by energy
  std::vector<double> boundaries;               // physical y of profile jumps
};

// Mixed-representation spectrum of a 2D family uniform in x: Fourier in x,
// dense in y. The 2*Ly dimensional unitary at fixed kx is diagonalized per
// grid point; a shift of the walker by +1 in x multiplies its amplitude by
// e^{-i kx}. Per-kx diagonalizations are independent; `workers` threads are
// merged by kx index, so the result is deterministic.
StripSpectrum strip_spectrum(const ProtocolFamily& family, const std::vector<double>& kx,
                             const Torus2D& torus, EdgeTagParams tags = {},
                             int max_dim = kDefaultDenseCap, int workers = 1);

Eigen::MatrixXcd strip_step_matrix(const ProtocolFamily& family, double kx,
                                   const Torus2D& torus);

// y positions (physical) of the jumps of a y-dependent profile on the torus.
std::vector<double> profile_boundaries(const ProtocolFamily& family, const Torus2D& torus);

}  // namespace qwalk

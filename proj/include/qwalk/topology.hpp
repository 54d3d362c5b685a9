#pragma once

#include "qwalk/spectral.hpp"

namespace qwalk {

// Chiral axis A(theta1) = (cos(theta1/2), 0, sin(theta1/2)) and the symmetry
// operator Gamma = exp(-i pi A.sigma / 2) = -i A.sigma. Gamma^2 = -1 in this
// phase convention; the charge operator used for the bound-state invariants is
// i Gamma = A.sigma, which squares to +1 and has real eigenvalues +-1.
struct ChiralFrame {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
};

ChiralFrame chiral_frame(double theta1);

// max-entry residual of Gamma^-1 U Gamma - U^dag with Gamma lifted site-wise.
double chiral_symmetry_residual(const Eigen::MatrixXcd& u, const ChiralFrame& frame);

Eigen::MatrixXcd lift_onsite(const Eigen::Matrix2cd& op, int sites);

// Winding of n(k) in the plane perpendicular to the chiral axis, accumulated
// as angle increments around the Brillouin circle; returned orientation-free
// (loop count), matching the {0, 1} phase labels of the split-step diagram.
int winding_number(const BlochBand1D& band, const ChiralFrame& frame,
                   double planarity_tol = 1e-6);

enum class WindingClass { Zero, One, OnCriticalLine };
// W = 1 iff |tan(theta2/2) / tan(theta1/2)| < 1.
WindingClass winding_closed_form(double theta1, double theta2);

// Degree of n: BZ torus -> sphere as a sum of signed spherical-triangle areas
// over the triangulated grid, divided by 4 pi. `deviation` (optional out)
// reports the pre-rounding distance from the nearest integer.
int chern_number_solid_angle(const BlochBand2D& band, double* deviation = nullptr);

// Lattice field strength: plaquette sums of link-overlap phases of the band
// eigenvector field (integer by construction). The field must be row-major
// [ikx * nky + iky] over an endpoint-excluded periodic grid.
int chern_number_berry_plaquette(const std::vector<Eigen::Vector2cd>& field, int nkx,
                                 int nky, double* deviation = nullptr);

// Band eigenvector field of a 2D family (lower band: quasi-energy -E(k)).
std::vector<Eigen::Vector2cd> band_eigenvector_field(const ProtocolFamily& family,
                                                     int resolution, bool lower);
std::vector<Eigen::Vector2cd> lower_band_field(const ProtocolFamily& family,
                                               int resolution);
// Family overload evaluates the upper-band field, whose lattice field
// strength carries the same orientation as the solid-angle route.
int chern_number_berry_plaquette(const ProtocolFamily& family, int resolution = 256,
                                 double* deviation = nullptr);

struct GaplessClassification {
  bool at_zero = false;
  bool at_pi = false;
  // matched analytic families, e.g. "theta1+theta2/2=2pi n"
  std::vector<std::string> families;
  bool gapped() const { return !at_zero && !at_pi; }
};

// Analytic gapless lines of the six-operation walk. The E=0 families are
// theta1 + theta2/2 = 2 pi n and theta1 - theta2/2 = (2n+1) pi; E=pi swaps
// the two right-hand sides; theta2 = 2 pi n is gapless at both.
GaplessClassification gapless_lines_sixop(double theta1, double theta2,
                                          double tol = 1e-9);

// Minimum over the Brillouin zone of the circle distance of {+-E(k)} to
// e_target (0 or pi), with one local grid-refinement pass around the minimum.
double min_gap(const ProtocolFamily& family, double e_target, int resolution = 256);

struct BoundStateCharges {
  int q0 = 0;
  int qpi = 0;
  // Per-state charge eigenvalues and the position expectation of the
  // charge-diagonal combinations they belong to.
  std::vector<double> q0_values, q0_positions;
  std::vector<double> qpi_values, qpi_positions;
};

// Charges of the E ~ 0 and E ~ pi subspaces: eigenvalues of i Gamma restricted
// to each subspace. Throws NumericalError if a subspace is not Gamma-invariant
// (chiral symmetry broken).
BoundStateCharges bound_state_charges(const QuasiEnergySpectrum& spectrum,
                                      const ChiralFrame& frame, const Geometry& geometry,
                                      double window = 1e-6,
                                      double invariance_tol = 1e-6);

}  // namespace qwalk

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <variant>

#include "qwalk/angles.hpp"
#include "qwalk/geometry.hpp"

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr int kSpinUp = 0;
inline constexpr int kSpinDown = 1;

// Spin-dependent translation rules. Axis2D moves spin up by (+dx, +dy) and
// spin down by (-dx, -dy).
struct BothOpposite {};
struct UpOnly {};
struct DownOnly {};
struct Axis2D {
  int dx = 0;
  int dy = 0;
};
using TranslationRule = std::variant<BothOpposite, UpOnly, DownOnly, Axis2D>;

struct Periodic {};
// Terminal site at x = 0: spin up there is flipped to spin down with phase
// e^{i phi} instead of leaving the lattice. The truncated far end reflects
// down into up with the same phase, which puts its bound state at the
// opposite special energy so it cannot shadow the x = 0 one.
struct ReflectingEdge {
  double phi = 0.0;
};
using BoundaryCondition = std::variant<Periodic, ReflectingEdge>;

// Wavefunction of a single spin-1/2 walker. Amplitude layout: 2*site + spin.
class SpinorState {
 public:
  explicit SpinorState(Geometry geometry)
      : geometry_(std::move(geometry)),
        amplitudes_(Eigen::VectorXcd::Zero(2 * num_sites(geometry_))) {}

  static SpinorState localized(const Geometry& geometry, int site,
                               std::array<Complex, 2> spinor);
  static SpinorState localized2d(const Torus2D& torus, int x, int y,
                                 std::array<Complex, 2> spinor);

  const Geometry& geometry() const { return geometry_; }
  int sites() const { return static_cast<int>(amplitudes_.size()) / 2; }

  Complex amp(int site, int spin) const { return amplitudes_[2 * site + spin]; }
  Complex& amp(int site, int spin) { return amplitudes_[2 * site + spin]; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }

  double norm_sq() const { return amplitudes_.squaredNorm(); }

  Eigen::VectorXd position_distribution() const;
  // Probability within Chebyshev distance `radius` of the given site.
  double probability_in_window(int center_site, int radius) const;

  // Mean physical coordinate (x in 1D; x of the row-major site in 2D).
  double position_expectation() const;
  double participation_ratio() const;  // 1 / sum p_site^2
  double mean_abs_y() const;           // 2D only

 private:
  Geometry geometry_;
  Eigen::VectorXcd amplitudes_;
};

SpinorState apply_rotation(const SpinorState& state, const AngleProfile& profile);
// Rotation about z: diag(e^{-i theta/2}, e^{+i theta/2}); used only as a
// symmetry-breaking perturbation.
SpinorState apply_rotation_z(const SpinorState& state, const AngleProfile& profile);
SpinorState apply_translation(const SpinorState& state, const TranslationRule& rule,
                              const BoundaryCondition& boundary);

}  // namespace qwalk

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

struct RotateStep {
  AngleProfile profile;
};
struct RotateZStep {
  AngleProfile profile;
};
struct TranslateStep {
  TranslationRule rule;
  BoundaryCondition boundary;
};
using ProtocolStep = std::variant<RotateStep, RotateZStep, TranslateStep>;

// One period of a walk: `steps` are applied front to back (the paper writes
// the same operators right to left as a product).
struct WalkProtocol {
  Geometry geometry;
  std::vector<ProtocolStep> steps;
  std::string label;
};

// U = T R_y(theta)
struct Conventional1D {
  AngleProfile theta;
};
// U = T_down R_y(theta2) T_up R_y(theta1); chiral frame depends on theta1 only
struct SplitStep1D {
  AngleProfile theta1;
  AngleProfile theta2;
};
// U' = T_up R_y(theta1) T_down R_y(theta2); chiral frame depends on theta2 only
struct TimeShiftedSplitStep1D {
  AngleProfile theta1;
  AngleProfile theta2;
};
// Conventional walk terminated at x = 0 by the reflecting edge with phase phi.
struct Reflecting1D {
  double theta = 0.0;
  double phi = 0.0;
};
// U = T3 R_y(theta1) T2 R_y(theta2) T1 R_y(theta1) with T1 = (+1,+1)/(-1,-1),
// T2 = (0,+1)/(0,-1), T3 = (+1,0)/(-1,0); effective lattice constant 2.
struct TwoDSixOp {
  AngleProfile theta1;
  AngleProfile theta2;
};
// U = T2 R_y(theta2) T1 R_y(theta1) with T1 = (+1,0)/(-1,0), T2 = (0,+1)/(0,-1).
struct TwoDSimple {
  AngleProfile theta1;
  AngleProfile theta2;
};

using ProtocolFamily = std::variant<Conventional1D, SplitStep1D, TimeShiftedSplitStep1D,
                                    Reflecting1D, TwoDSixOp, TwoDSimple>;

bool family_is_2d(const ProtocolFamily& family);
bool family_is_uniform(const ProtocolFamily& family);

WalkProtocol build_protocol(const ProtocolFamily& family, const Geometry& geometry);

SpinorState apply_step(const SpinorState& state, const ProtocolStep& step);
SpinorState evolve(SpinorState state, const WalkProtocol& protocol, int n_steps);

// Dense one-period unitary; column j is the protocol applied to basis state j.
inline constexpr int kDefaultDenseCap = 20000;
Eigen::MatrixXcd one_step_unitary(const WalkProtocol& protocol,
                                  int max_dim = kDefaultDenseCap);

double unitarity_defect(const Eigen::MatrixXcd& u);  // max |U^dag U - I|

// 2x2 Bloch unitary of a translation-invariant family; eigenphases are -E(k)
// and +E(k). 1D overload takes k, 2D overload (kx, ky).
Eigen::Matrix2cd momentum_step_matrix(const ProtocolFamily& family, double k);
Eigen::Matrix2cd momentum_step_matrix(const ProtocolFamily& family, double kx, double ky);

Eigen::Matrix2cd rotation_y(double theta);

}  // namespace qwalk

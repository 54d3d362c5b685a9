#include "qwalk/protocol.hpp"

#include <cmath>

namespace qwalk {

bool family_is_2d(const ProtocolFamily& family) {
  return std::holds_alternative<TwoDSixOp>(family) ||
         std::holds_alternative<TwoDSimple>(family);
}

bool family_is_uniform(const ProtocolFamily& family) {
  return std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Conventional1D>) {
          return is_uniform(f.theta);
        } else if constexpr (std::is_same_v<F, Reflecting1D>) {
          return false;  // the edge breaks translation invariance
        } else {
          return is_uniform(f.theta1) && is_uniform(f.theta2);
        }
      },
      family);
}

WalkProtocol build_protocol(const ProtocolFamily& family, const Geometry& geometry) {
  if (family_is_2d(family) == is_1d(geometry))
    throw std::invalid_argument("build_protocol: family/geometry mismatch");

  WalkProtocol protocol;
  protocol.geometry = geometry;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Conventional1D>) {
          protocol.label = "conventional_1d";
          protocol.steps = {RotateStep{f.theta},
                            TranslateStep{BothOpposite{}, Periodic{}}};
        } else if constexpr (std::is_same_v<F, SplitStep1D>) {
          protocol.label = "split_step_1d";
          protocol.steps = {RotateStep{f.theta1}, TranslateStep{UpOnly{}, Periodic{}},
                            RotateStep{f.theta2}, TranslateStep{DownOnly{}, Periodic{}}};
        } else if constexpr (std::is_same_v<F, TimeShiftedSplitStep1D>) {
          protocol.label = "time_shifted_split_step_1d";
          protocol.steps = {RotateStep{f.theta2}, TranslateStep{DownOnly{}, Periodic{}},
                            RotateStep{f.theta1}, TranslateStep{UpOnly{}, Periodic{}}};
        } else if constexpr (std::is_same_v<F, Reflecting1D>) {
          protocol.label = "reflecting_1d";
          const auto& line = std::get<Line>(geometry);
          if (line.orientation != -1 || line.origin != 0)
            throw std::invalid_argument(
                "Reflecting1D requires Line::reflecting geometry");
          protocol.steps = {RotateStep{UniformAngle{f.theta}},
                            TranslateStep{BothOpposite{}, ReflectingEdge{f.phi}}};
        } else if constexpr (std::is_same_v<F, TwoDSixOp>) {
          protocol.label = "two_d_six_op";
          protocol.steps = {RotateStep{f.theta1}, TranslateStep{Axis2D{1, 1}, Periodic{}},
                            RotateStep{f.theta2}, TranslateStep{Axis2D{0, 1}, Periodic{}},
                            RotateStep{f.theta1}, TranslateStep{Axis2D{1, 0}, Periodic{}}};
        } else if constexpr (std::is_same_v<F, TwoDSimple>) {
          protocol.label = "two_d_simple";
          protocol.steps = {RotateStep{f.theta1}, TranslateStep{Axis2D{1, 0}, Periodic{}},
                            RotateStep{f.theta2}, TranslateStep{Axis2D{0, 1}, Periodic{}}};
        }
      },
      family);
  return protocol;
}

SpinorState apply_step(const SpinorState& state, const ProtocolStep& step) {
  if (const auto* rot = std::get_if<RotateStep>(&step))
    return apply_rotation(state, rot->profile);
  if (const auto* rz = std::get_if<RotateZStep>(&step))
    return apply_rotation_z(state, rz->profile);
  const auto& tr = std::get<TranslateStep>(step);
  return apply_translation(state, tr.rule, tr.boundary);
}

SpinorState evolve(SpinorState state, const WalkProtocol& protocol, int n_steps) {
  if (!same_geometry(state.geometry(), protocol.geometry))
    throw std::invalid_argument("evolve: state/protocol geometry mismatch");
  if (n_steps < 0) throw std::invalid_argument("evolve: negative step count");
  for (int n = 0; n < n_steps; ++n)
    for (const auto& step : protocol.steps) state = apply_step(state, step);
  return state;
}

Eigen::MatrixXcd one_step_unitary(const WalkProtocol& protocol, int max_dim) {
  const int dim = 2 * num_sites(protocol.geometry);
  if (dim > max_dim)
    throw std::invalid_argument("one_step_unitary: geometry exceeds dense cap");
  Eigen::MatrixXcd u(dim, dim);
  SpinorState basis(protocol.geometry);
  for (int j = 0; j < dim; ++j) {
    basis.amplitudes().setZero();
    basis.amplitudes()[j] = 1.0;
    SpinorState column = basis;
    for (const auto& step : protocol.steps) column = apply_step(column, step);
    u.col(j) = column.amplitudes();
  }
  return u;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const int n = static_cast<int>(u.cols());
  return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Eigen::Matrix2cd rotation_y(double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  return r;
}

namespace {

// exp(i k sigma_z); a shift of the walker by +1 site multiplies the spin-up
// amplitude of |k> by e^{+ik} in the convention of the band formulas.
Eigen::Matrix2cd phase_z(double k) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(0, 0) = std::polar(1.0, k);
  p(1, 1) = std::polar(1.0, -k);
  return p;
}

Eigen::Matrix2cd shift_up(double k) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
  p(0, 0) = std::polar(1.0, k);
  return p;
}

Eigen::Matrix2cd shift_down(double k) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
  p(1, 1) = std::polar(1.0, -k);
  return p;
}

}  // namespace

Eigen::Matrix2cd momentum_step_matrix(const ProtocolFamily& family, double k) {
  if (!family_is_uniform(family))
    throw std::invalid_argument("momentum_step_matrix: non-uniform profile");
  if (const auto* c = std::get_if<Conventional1D>(&family))
    return phase_z(k) * rotation_y(uniform_angle(c->theta));
  if (const auto* s = std::get_if<SplitStep1D>(&family))
    return shift_down(k) * rotation_y(uniform_angle(s->theta2)) * shift_up(k) *
           rotation_y(uniform_angle(s->theta1));
  if (const auto* t = std::get_if<TimeShiftedSplitStep1D>(&family))
    return shift_up(k) * rotation_y(uniform_angle(t->theta1)) * shift_down(k) *
           rotation_y(uniform_angle(t->theta2));
  throw std::invalid_argument("momentum_step_matrix: not a 1D translation-invariant family");
}

Eigen::Matrix2cd momentum_step_matrix(const ProtocolFamily& family, double kx, double ky) {
  if (!family_is_uniform(family))
    throw std::invalid_argument("momentum_step_matrix: non-uniform profile");
  if (const auto* six = std::get_if<TwoDSixOp>(&family)) {
    const double t1 = uniform_angle(six->theta1), t2 = uniform_angle(six->theta2);
    return phase_z(kx) * rotation_y(t1) * phase_z(ky) * rotation_y(t2) *
           phase_z(kx + ky) * rotation_y(t1);
  }
  if (const auto* simple = std::get_if<TwoDSimple>(&family)) {
    const double t1 = uniform_angle(simple->theta1), t2 = uniform_angle(simple->theta2);
    return phase_z(ky) * rotation_y(t2) * phase_z(kx) * rotation_y(t1);
  }
  throw std::invalid_argument("momentum_step_matrix: not a 2D family");
}

}  // namespace qwalk

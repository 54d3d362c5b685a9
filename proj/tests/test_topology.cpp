#include "doctest.h"
#include "qwalk/analytics.hpp"
#include "qwalk/topology.hpp"
#include "test_util.hpp"

using namespace qwalk;

TEST_CASE("chiral frame") {
  const auto frame0 = chiral_frame(0.0);
  CHECK((frame0.axis - Eigen::Vector3d::UnitX()).norm() < 1e-15);
  // Gamma(0) = -i sigma_x; the charge operator i Gamma is sigma_x itself
  CHECK(std::abs(frame0.gamma(0, 1) - Complex(0.0, -1.0)) < 1e-15);

  const auto frame_pi = chiral_frame(M_PI);
  CHECK((frame_pi.axis - Eigen::Vector3d::UnitZ()).norm() < 1e-15);

  for (double theta : {0.3, -1.2, 2.8}) {
    const auto frame = chiral_frame(theta);
    CHECK(frame.axis.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // Gamma^2 = -1 in this convention, (i Gamma)^2 = +1
    const Eigen::Matrix2cd g2 = frame.gamma * frame.gamma;
    CHECK((g2 + Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("chiral symmetry residuals") {
  const Geometry line{Line::centered(21)};
  // inhomogeneous theta2 keeps the Gamma(theta1) symmetry
  std::vector<double> table(21);
  for (int s = 0; s < 21; ++s) table[s] = testutil::uniform(-M_PI, M_PI);
  const auto u = one_step_unitary(
      build_protocol(SplitStep1D{UniformAngle{0.7}, TableAngle{table}}, line));
  CHECK(chiral_symmetry_residual(u, chiral_frame(0.7)) < 1e-12);

  // reflecting chain with phi in {0, pi}
  const Geometry chain{Line::reflecting(30)};
  for (double phi : {0.0, M_PI}) {
    const auto ur = one_step_unitary(build_protocol(Reflecting1D{1.1, phi}, chain)) ;
    CHECK(chiral_symmetry_residual(ur, chiral_frame(1.1)) < 1e-12);
  }
  // broken for phi = pi/3
  const auto broken = one_step_unitary(build_protocol(Reflecting1D{M_PI / 2, M_PI / 3}, chain));
  CHECK(chiral_symmetry_residual(broken, chiral_frame(M_PI / 2)) > 1e-3);
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(compute_band(Conventional1D{UniformAngle{M_PI / 2}}, 1024),
                       chiral_frame(M_PI / 2)) == 1);
  CHECK(winding_number(compute_band(SplitStep1D{UniformAngle{-M_PI / 2}, UniformAngle{M_PI / 4}}, 1024),
                       chiral_frame(-M_PI / 2)) == 1);
  CHECK(winding_number(compute_band(SplitStep1D{UniformAngle{-M_PI / 2}, UniformAngle{3 * M_PI / 4}}, 1024),
                       chiral_frame(-M_PI / 2)) == 0);

  CHECK_THROWS_AS(winding_number(compute_band(Conventional1D{UniformAngle{0.0}}, 256),
                                 chiral_frame(0.0)),
                  NumericalError);
  // wrong frame: the axis field is not planar
  CHECK_THROWS_AS(winding_number(compute_band(SplitStep1D{UniformAngle{1.0}, UniformAngle{0.2}}, 256),
                                 chiral_frame(2.4)),
                  NumericalError);
}

TEST_CASE("winding closed form") {
  CHECK(winding_closed_form(-M_PI / 2, M_PI / 4) == WindingClass::One);
  CHECK(winding_closed_form(-M_PI / 2, 3 * M_PI / 4) == WindingClass::Zero);
  CHECK(winding_closed_form(0.9, 0.9) == WindingClass::OnCriticalLine);
  CHECK(winding_closed_form(0.9, -0.9) == WindingClass::OnCriticalLine);
  CHECK(winding_closed_form(0.9, 2 * M_PI - 0.9) == WindingClass::OnCriticalLine);
}

TEST_CASE("winding number equals the closed form on a grid") {
  int total = 0;
  for (int i = 0; i < 14; ++i) {
    for (int j = 0; j < 14; ++j) {
      const double t1 = -2 * M_PI + (i + 0.5) * 4 * M_PI / 14;
      const double t2 = -2 * M_PI + (j + 0.5) * 4 * M_PI / 14;
      const auto closed = winding_closed_form(t1, t2);
      if (closed == WindingClass::OnCriticalLine) continue;
      const double margin = std::abs(std::abs(std::sin(0.5 * t2) * std::cos(0.5 * t1)) -
                                     std::abs(std::sin(0.5 * t1) * std::cos(0.5 * t2)));
      if (margin < 1e-3) continue;
      ++total;
      const int w = winding_number(
          compute_band(SplitStep1D{UniformAngle{t1}, UniformAngle{t2}}, 1024),
          chiral_frame(t1));
      CHECK(w == (closed == WindingClass::One ? 1 : 0));
    }
  }
  CHECK(total > 150);
}

TEST_CASE("Chern numbers: routes agree, integers, sum rule") {
  // regression values fixed by the solid-angle oracle at 256^2:
  // (7pi/6, 7pi/6) is the trivial cell, (3pi/2, 3pi/2) carries |C| = 1
  const ProtocolFamily a = TwoDSixOp{UniformAngle{7 * M_PI / 6}, UniformAngle{7 * M_PI / 6}};
  const ProtocolFamily b = TwoDSixOp{UniformAngle{1.5 * M_PI}, UniformAngle{1.5 * M_PI}};
  double dev_a = 1.0, dev_b = 1.0;
  const int ca = chern_number_solid_angle(compute_band_2d(a, 256), &dev_a);
  const int cb = chern_number_solid_angle(compute_band_2d(b, 256), &dev_b);
  CHECK(ca == 0);
  CHECK(cb == 1);
  CHECK(dev_a < 1e-3);
  CHECK(dev_b < 1e-3);
  CHECK(chern_number_berry_plaquette(a, 256) == ca);
  CHECK(chern_number_berry_plaquette(b, 256) == cb);

  // cross-method agreement on random gapped cells
  int cells = 0;
  while (cells < 20) {
    const double t1 = testutil::uniform(0.0, 2 * M_PI);
    const double t2 = testutil::uniform(0.0, 2 * M_PI);
    const ProtocolFamily f = TwoDSixOp{UniformAngle{t1}, UniformAngle{t2}};
    if (min_gap(f, 0.0, 64) < 0.05 || min_gap(f, M_PI, 64) < 0.05) continue;
    ++cells;
    double dev = 1.0;
    const int plaquette = chern_number_berry_plaquette(f, 128, &dev);
    CHECK(plaquette == chern_number_solid_angle(compute_band_2d(f, 128)));
    CHECK(dev < 1e-6);
    CHECK(plaquette >= -1);
    CHECK(plaquette <= 1);
    // stability under grid refinement
    CHECK(plaquette == chern_number_berry_plaquette(f, 64));
  }

  // upper and lower band Chern numbers cancel
  const int upper = chern_number_berry_plaquette(band_eigenvector_field(b, 128, false), 128, 128);
  const int lower = chern_number_berry_plaquette(band_eigenvector_field(b, 128, true), 128, 128);
  CHECK(upper + lower == 0);

  // constant field has zero lattice field strength
  std::vector<Eigen::Vector2cd> constant(32 * 32, Eigen::Vector2cd(1.0, 0.0));
  CHECK(chern_number_berry_plaquette(constant, 32, 32) == 0);

  // the simple 2D family is trivial everywhere gapped
  const ProtocolFamily simple = TwoDSimple{UniformAngle{1.0}, UniformAngle{2.2}};
  CHECK(chern_number_berry_plaquette(simple, 128) == 0);
  CHECK(chern_number_solid_angle(compute_band_2d(simple, 128)) == 0);

  CHECK_THROWS_AS(chern_number_solid_angle(compute_band_2d(
                      TwoDSixOp{UniformAngle{1.0}, UniformAngle{0.0}}, 64)),
                  NumericalError);
}

TEST_CASE("six-op gapless line classification") {
  const auto on_zero = gapless_lines_sixop(1.9, 2.0 * (2.0 * M_PI - 1.9));
  CHECK(on_zero.at_zero);
  CHECK_FALSE(on_zero.at_pi);

  const auto on_pi = gapless_lines_sixop(1.3, 2.0 * 1.3);
  CHECK(on_pi.at_pi);
  CHECK_FALSE(on_pi.at_zero);

  const auto both = gapless_lines_sixop(0.77, 2.0 * M_PI);
  CHECK(both.at_zero);
  CHECK(both.at_pi);

  const auto gapped = gapless_lines_sixop(7 * M_PI / 6, 7 * M_PI / 6);
  CHECK(gapped.gapped());
  // min-gap oracle confirms the classification at that point
  const ProtocolFamily f = TwoDSixOp{UniformAngle{7 * M_PI / 6}, UniformAngle{7 * M_PI / 6}};
  CHECK(min_gap(f, 0.0, 512) > 0.1);
  CHECK(min_gap(f, M_PI, 512) > 0.1);

  // theta2 = odd pi is NOT a gapless line away from the +- families: the
  // dispersion there is cos E = -cos^2(kx) sin(theta1)
  const ProtocolFamily odd = TwoDSixOp{UniformAngle{0.7}, UniformAngle{M_PI}};
  CHECK(gapless_lines_sixop(0.7, M_PI).gapped());
  CHECK(min_gap(odd, 0.0, 256) > 0.5);
  CHECK(min_gap(odd, M_PI, 256) > 0.5);
  // but theta2 = pi with theta1 = 3pi/2 lies on the E=0 family and closes
  CHECK(gapless_lines_sixop(1.5 * M_PI, M_PI).at_zero);
  CHECK(min_gap(TwoDSixOp{UniformAngle{1.5 * M_PI}, UniformAngle{M_PI}}, 0.0, 256) < 1e-6);
}

TEST_CASE("gapless lines match the min-gap oracle along the families") {
  for (double t1 : {0.5, 1.7, 2.9}) {
    const double t2_zero = 2.0 * (2.0 * M_PI - t1);  // theta1 + theta2/2 = 2pi
    CHECK(min_gap(TwoDSixOp{UniformAngle{t1}, UniformAngle{t2_zero}}, 0.0, 256) < 1e-6);
    const double t2_pi = 2.0 * t1;  // theta1 - theta2/2 = 0
    CHECK(min_gap(TwoDSixOp{UniformAngle{t1}, UniformAngle{t2_pi}}, M_PI, 256) < 1e-6);
  }
}

TEST_CASE("split-step min gaps close on the critical lines") {
  // theta2 = +theta1 closes at E = pi, theta2 = -theta1 at E = 0
  for (double t : {0.6, 1.9}) {
    CHECK(min_gap(SplitStep1D{UniformAngle{t}, UniformAngle{t}}, M_PI, 512) < 1e-8);
    CHECK(min_gap(SplitStep1D{UniformAngle{t}, UniformAngle{-t}}, 0.0, 512) < 1e-8);
    CHECK(min_gap(SplitStep1D{UniformAngle{t}, UniformAngle{2 * M_PI - t}}, M_PI, 512) < 1e-8);
    CHECK(min_gap(SplitStep1D{UniformAngle{t}, UniformAngle{2 * M_PI + t}}, 0.0, 512) < 1e-8);
    CHECK(min_gap(SplitStep1D{UniformAngle{t}, UniformAngle{t}}, 0.0, 512) > 0.05);
  }
  // conventional theta = pi/2: the E=0 gap is pi/4 at k = 0
  CHECK(min_gap(Conventional1D{UniformAngle{M_PI / 2}}, 0.0, 2048) ==
        doctest::Approx(M_PI / 4).epsilon(1e-6));
}

TEST_CASE("bound-state charges of the 0/pi coexistence walk") {
  const Geometry ring{Line::centered(40)};
  const auto protocol = build_protocol(zero_pi_family(), ring);
  const auto spec = diagonalize(one_step_unitary(protocol), ring);
  const auto frame = chiral_frame(0.0);
  const auto charges = bound_state_charges(spec, frame, ring);

  // two walls on the ring: the primary one at x = 0 carries (+1, -1), the
  // compensating wrap wall the opposite pair, so the window sums vanish
  CHECK(charges.q0 == 0);
  CHECK(charges.qpi == 0);
  REQUIRE(charges.q0_values.size() == 2);
  REQUIRE(charges.qpi_values.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const bool primary = std::abs(charges.q0_positions[i]) < 5.0;
    CHECK(std::abs(charges.q0_values[i] - (primary ? 1.0 : -1.0)) < 1e-10);
    const bool primary_pi = std::abs(charges.qpi_positions[i]) < 5.0;
    CHECK(std::abs(charges.qpi_values[i] - (primary_pi ? -1.0 : 1.0)) < 1e-10);
  }

  // empty subspaces give zero charges
  const auto empty = bound_state_charges(
      diagonalize(one_step_unitary(build_protocol(
                      Conventional1D{UniformAngle{M_PI / 2}}, Geometry{Line::centered(10)})),
                  Geometry{Line::centered(10)}),
      chiral_frame(M_PI / 2), Geometry{Line::centered(10)});
  CHECK(empty.q0 == 0);
  CHECK(empty.qpi == 0);
  CHECK(empty.q0_values.empty());
}

TEST_CASE("Fig. 5a wall carries one zero mode with unit charge") {
  // smooth tanh wall on a ring large enough that the wrap wall decouples
  const Geometry ring{Line::centered(101)};
  const ProtocolFamily family =
      SplitStep1D{UniformAngle{-M_PI / 2}, TanhStepAngle{3 * M_PI / 4, M_PI / 4, 3.0}};
  const auto spec = diagonalize(one_step_unitary(build_protocol(family, ring)), ring);
  const auto charges =
      bound_state_charges(spec, chiral_frame(-M_PI / 2), ring, 1e-6);
  int primary_zero = 0;
  double primary_charge = 0.0;
  for (std::size_t i = 0; i < charges.q0_values.size(); ++i) {
    if (std::abs(charges.q0_positions[i]) < 15.0) {
      ++primary_zero;
      primary_charge = charges.q0_values[i];
    }
  }
  CHECK(primary_zero == 1);
  CHECK(std::abs(std::abs(primary_charge) - 1.0) < 1e-8);
  // no protected pi states for this wall (the gap closes at E = 0 between
  // these phases), so of (Q0, Qpi) exactly one wall charge is nonzero
  for (std::size_t i = 0; i < charges.qpi_values.size(); ++i)
    CHECK(std::abs(charges.qpi_positions[i]) > 15.0);
}

TEST_CASE("charge robustness under chiral-preserving disorder") {
  std::mt19937 gen(314159);
  std::uniform_real_distribution<double> pert(-0.2, 0.2);
  const Geometry ring{Line::centered(40)};
  const auto& line = std::get<Line>(ring);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> table(40);
    for (int s = 0; s < 40; ++s)
      table[s] = (line.coord(s) <= 0 ? -M_PI : M_PI) + pert(gen);
    const auto protocol = build_protocol(SplitStep1D{UniformAngle{0.0}, TableAngle{table}}, ring);
    const auto u = one_step_unitary(protocol);
    CHECK(chiral_symmetry_residual(u, chiral_frame(0.0)) < 1e-12);
    const auto spec = diagonalize(u, ring);
    const auto charges = bound_state_charges(spec, chiral_frame(0.0), ring, 1e-6);
    int q0_wall = 0, qpi_wall = 0;
    for (std::size_t i = 0; i < charges.q0_values.size(); ++i)
      if (std::abs(charges.q0_positions[i]) < 5.0)
        q0_wall += static_cast<int>(std::llround(charges.q0_values[i]));
    for (std::size_t i = 0; i < charges.qpi_values.size(); ++i)
      if (std::abs(charges.qpi_positions[i]) < 5.0)
        qpi_wall += static_cast<int>(std::llround(charges.qpi_values[i]));
    CHECK(q0_wall == 1);
    CHECK(qpi_wall == -1);
  }
}

TEST_CASE("sublattice-symmetry breaking moves the bound state off zero") {
  const Geometry chain{Line::reflecting(60)};
  auto protocol = build_protocol(Reflecting1D{M_PI / 2, M_PI}, chain);
  protocol.steps.push_back(RotateZStep{UniformAngle{0.1}});
  const auto u = one_step_unitary(protocol);
  CHECK(chiral_symmetry_residual(u, chiral_frame(M_PI / 2)) > 1e-3);
  const auto spec = diagonalize(u, chain);
  double nearest = 1e9;
  double pr = 0.0;
  for (int i = 0; i < (int)spec.phases.size(); ++i) {
    if (std::abs(spec.phases[i]) < nearest) {
      nearest = std::abs(spec.phases[i]);
      pr = spec.participation[i];
    }
  }
  CHECK(nearest > 1e-6);      // off the symmetric value by more than the window
  CHECK(nearest < M_PI / 4);  // still inside the bulk gap
  CHECK(pr < 12.0);           // still localized
}

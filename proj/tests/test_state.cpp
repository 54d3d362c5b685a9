#include <algorithm>

#include "doctest.h"
#include "qwalk/state.hpp"
#include "test_util.hpp"

using namespace qwalk;
using testutil::random_state;

TEST_CASE("localized states") {
  const Geometry line{Line::centered(201)};
  const int origin = std::get<Line>(line).site_of(0);

  const auto up = SpinorState::localized(line, origin, {1.0, 0.0});
  CHECK(up.amp(origin, kSpinUp) == Complex(1.0, 0.0));
  CHECK(up.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));

  const auto both = SpinorState::localized(line, origin, {1.0, 1.0});
  CHECK(std::abs(both.amp(origin, kSpinUp) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(both.amp(origin, kSpinDown) - 1.0 / std::sqrt(2.0)) < 1e-15);

  const Torus2D torus = Torus2D::centered(100, 100);
  const auto down = SpinorState::localized2d(torus, 0, 0, {0.0, 1.0});
  CHECK(down.amp(torus.site_of(0, 0), kSpinDown) == Complex(1.0, 0.0));
  CHECK(down.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(SpinorState::localized(line, -1, {1.0, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(SpinorState::localized(line, 500, {1.0, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(SpinorState::localized(line, 0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("rotation action on basis spinors") {
  const Geometry line{Line::centered(5)};
  const int s = 2;

  auto up = SpinorState::localized(line, s, {1.0, 0.0});
  const auto same = apply_rotation(up, UniformAngle{0.0});
  CHECK((same.amplitudes() - up.amplitudes()).norm() == 0.0);

  // theta = pi turns |up> -> |down> and |down> -> -|up>
  const auto flipped = apply_rotation(up, UniformAngle{M_PI});
  CHECK(std::abs(flipped.amp(s, kSpinDown) - 1.0) < 1e-15);
  CHECK(std::abs(flipped.amp(s, kSpinUp)) < 1e-15);

  auto down = SpinorState::localized(line, s, {0.0, 1.0});
  const auto minus_up = apply_rotation(down, UniformAngle{M_PI});
  CHECK(std::abs(minus_up.amp(s, kSpinUp) + 1.0) < 1e-15);
  CHECK(std::abs(minus_up.amp(s, kSpinDown)) < 1e-15);
}

TEST_CASE("rotation composition: R(a) R(b) = R(a+b)") {
  const Geometry line{Line::centered(17)};
  for (int trial = 0; trial < 10; ++trial) {
    const double a = testutil::uniform(-2.0 * M_PI, 2.0 * M_PI);
    const double b = testutil::uniform(-2.0 * M_PI, 2.0 * M_PI);
    const auto state = random_state(line);
    const auto two = apply_rotation(apply_rotation(state, UniformAngle{a}), UniformAngle{b});
    const auto one = apply_rotation(state, UniformAngle{a + b});
    CHECK((two.amplitudes() - one.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("tanh profile matches the x/3 wall") {
  const TanhStepAngle profile{3.0 * M_PI / 4.0, M_PI / 4.0, 3.0};
  for (double x : {-12.0, -3.0, 0.0, 1.0, 7.5}) {
    const double expected = 0.5 * (profile.theta_minus + profile.theta_plus) +
                            0.5 * (profile.theta_plus - profile.theta_minus) *
                                std::tanh(x / 3.0);
    CHECK(angle_at(AngleProfile{profile}, x, 0) == doctest::Approx(expected).epsilon(1e-15));
  }
  CHECK(angle_at(AngleProfile{profile}, 0.0, 0) ==
        doctest::Approx(0.5 * (profile.theta_minus + profile.theta_plus)));
}

TEST_CASE("translation moves spin components oppositely") {
  const Geometry line{Line::centered(9)};
  const auto& geom = std::get<Line>(line);
  auto up = SpinorState::localized(line, geom.site_of(0), {1.0, 0.0});
  const auto moved = apply_translation(up, BothOpposite{}, Periodic{});
  CHECK(std::abs(moved.amp(geom.site_of(1), kSpinUp) - 1.0) < 1e-15);

  auto down = SpinorState::localized(line, geom.site_of(0), {0.0, 1.0});
  const auto stay = apply_translation(down, UpOnly{}, Periodic{});
  CHECK((stay.amplitudes() - down.amplitudes()).norm() == 0.0);
}

TEST_CASE("periodic translation is an amplitude permutation (bit exact)") {
  for (const Geometry& geometry :
       {Geometry{Line::centered(12)}, Geometry{Torus2D::centered(6, 8)}}) {
    const auto state = random_state(geometry);
    std::vector<TranslationRule> rules;
    if (is_1d(geometry))
      rules = {BothOpposite{}, UpOnly{}, DownOnly{}};
    else
      rules = {Axis2D{1, 1}, Axis2D{0, 1}, Axis2D{1, 0}};
    for (const auto& rule : rules) {
      const auto moved = apply_translation(state, rule, Periodic{});
      auto before = std::vector<std::pair<double, double>>();
      auto after = before;
      for (int i = 0; i < 2 * num_sites(geometry); ++i) {
        before.emplace_back(state.amplitudes()[i].real(), state.amplitudes()[i].imag());
        after.emplace_back(moved.amplitudes()[i].real(), moved.amplitudes()[i].imag());
      }
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      CHECK(before == after);
    }
  }
}

TEST_CASE("reflecting edge step is unitary and matches the theta = pi chain") {
  const Geometry chain{Line::reflecting(24)};
  // inner products preserved across the edge step
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_state(chain);
    const auto b = random_state(chain);
    const Complex before = a.amplitudes().dot(b.amplitudes());
    const auto ta = apply_translation(a, BothOpposite{}, ReflectingEdge{0.7});
    const auto tb = apply_translation(b, BothOpposite{}, ReflectingEdge{0.7});
    const Complex after = ta.amplitudes().dot(tb.amplitudes());
    CHECK(std::abs(before - after) < 1e-12);
  }

  // R_y(pi) then the phi=0 edge maps |0, down> to -|0, down>
  auto down = SpinorState::localized(chain, 0, {0.0, 1.0});
  auto stepped = apply_rotation(down, UniformAngle{M_PI});
  stepped = apply_translation(stepped, BothOpposite{}, ReflectingEdge{0.0});
  CHECK((stepped.amplitudes() + down.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(apply_translation(down, UpOnly{}, ReflectingEdge{0.0}),
                  std::invalid_argument);
  const auto centered = random_state(Geometry{Line::centered(8)});
  CHECK_THROWS_AS(apply_translation(centered, BothOpposite{}, ReflectingEdge{0.0}),
                  std::invalid_argument);
}

TEST_CASE("norm conserved through long random step sequences") {
  const Geometry line{Line::centered(31)};
  auto state = random_state(line);
  for (int step = 0; step < 60; ++step) {
    switch (step % 4) {
      case 0: state = apply_rotation(state, UniformAngle{testutil::uniform(-3, 3)}); break;
      case 1: state = apply_translation(state, UpOnly{}, Periodic{}); break;
      case 2:
        state = apply_rotation(state, TanhStepAngle{testutil::uniform(-3, 3),
                                                    testutil::uniform(-3, 3), 3.0});
        break;
      default: state = apply_translation(state, DownOnly{}, Periodic{}); break;
    }
  }
  CHECK(std::abs(state.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("window probabilities") {
  const Geometry line{Line::centered(41)};
  const auto& geom = std::get<Line>(line);
  const auto at_zero = SpinorState::localized(line, geom.site_of(0), {1.0, 0.0});
  CHECK(at_zero.probability_in_window(geom.site_of(0), 0) == doctest::Approx(1.0));
  const auto at_ten = SpinorState::localized(line, geom.site_of(10), {1.0, 0.0});
  CHECK(at_ten.probability_in_window(geom.site_of(0), 5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(at_ten.probability_in_window(geom.site_of(0), -1), std::invalid_argument);

  // Chebyshev window in 2D
  const Torus2D torus = Torus2D::centered(20, 20);
  const auto corner = SpinorState::localized2d(torus, 3, 3, {1.0, 0.0});
  CHECK(corner.probability_in_window(torus.site_of(0, 0), 3) == doctest::Approx(1.0));
  CHECK(corner.probability_in_window(torus.site_of(0, 0), 2) == doctest::Approx(0.0));
}

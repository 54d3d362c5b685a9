#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "qwalk/spectral.hpp"
#include "test_util.hpp"

using namespace qwalk;

namespace {

// Independent eigenphase oracle for a 2x2 Bloch matrix.
std::pair<double, double> eigenphases_2x2(const Eigen::Matrix2cd& u) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(u);
  double a = -std::arg(solver.eigenvalues()[0]);
  double b = -std::arg(solver.eigenvalues()[1]);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

TEST_CASE("conventional band formula against the 2x2 oracle") {
  // E(pi/2, 0) = arccos(sqrt(2)/2) = pi/4
  const auto p0 = band_conventional(M_PI / 2, 0.0);
  CHECK(p0.energy == doctest::Approx(M_PI / 4).epsilon(1e-14));
  const auto [lo, hi] = eigenphases_2x2(momentum_step_matrix(Conventional1D{UniformAngle{M_PI / 2}}, 0.0));
  CHECK(hi == doctest::Approx(p0.energy).epsilon(1e-12));
  CHECK(lo == doctest::Approx(-p0.energy).epsilon(1e-12));

  // theta = 0: gapless at k in {0, pi}; elsewhere E = |k| (H_eff = k sigma_z)
  CHECK(band_conventional(0.0, 0.0).gapless);
  CHECK(band_conventional(0.0, M_PI).gapless);
  for (double k : {0.4, -1.2, 2.2}) {
    const auto p = band_conventional(0.0, k);
    CHECK_FALSE(p.gapless);
    CHECK(p.energy == doctest::Approx(std::abs(k)).epsilon(1e-13));
    CHECK(std::abs(std::abs(p.axis.z()) - 1.0) < 1e-12);
  }

  // n(pi/2, pi/2) = (sqrt2/2, 0, -sqrt2/2)
  const auto p1 = band_conventional(M_PI / 2, M_PI / 2);
  CHECK(p1.energy == doctest::Approx(M_PI / 2).epsilon(1e-14));
  CHECK(p1.axis.x() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  CHECK(p1.axis.y() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(p1.axis.z() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-13));
  CHECK(p1.axis.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("split-step band formula") {
  // theta2 = 0 reduces to the conventional band
  for (double k : {0.0, 0.7, -2.1}) {
    const auto a = band_splitstep(0.9, 0.0, k);
    const auto b = band_conventional(0.9, k);
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-14));
    CHECK((a.axis - b.axis).norm() < 1e-13);
  }

  // gapless when theta2 = -theta1 (E=0 touch at k=0)
  CHECK(band_splitstep(1.1, -1.1, 0.0).gapless);

  // (-pi/2, 3pi/4): formula vs 2x2 eigenphases, gap at E = 0 positive
  const ProtocolFamily f = SplitStep1D{UniformAngle{-M_PI / 2}, UniformAngle{3 * M_PI / 4}};
  double min_e = M_PI;
  for (int i = 0; i < 64; ++i) {
    const double k = -M_PI + 2 * M_PI * i / 64;
    const auto p = band_splitstep(-M_PI / 2, 3 * M_PI / 4, k);
    const auto [lo, hi] = eigenphases_2x2(momentum_step_matrix(f, k));
    CHECK(hi == doctest::Approx(p.energy).epsilon(1e-12));
    min_e = std::min(min_e, p.energy);
  }
  CHECK(min_e > 0.1);

  // the axis is perpendicular to A(theta1) for all k
  const Eigen::Vector3d a_axis(std::cos(-M_PI / 4), 0.0, std::sin(-M_PI / 4));
  for (int i = 0; i < 64; ++i) {
    const auto p = band_splitstep(-M_PI / 2, 3 * M_PI / 4, -M_PI + 2 * M_PI * i / 64);
    CHECK(std::abs(p.axis.dot(a_axis)) < 1e-10);
    CHECK(p.axis.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("2D band formulas") {
  // six-op: closed-form energy equals the matrix extraction everywhere probed
  for (int i = 0; i < 10; ++i) {
    const double t1 = testutil::uniform(0, 2 * M_PI), t2 = testutil::uniform(0, 2 * M_PI);
    const double kx = testutil::uniform(-M_PI / 2, M_PI / 2);
    const double ky = testutil::uniform(-M_PI / 2, M_PI / 2);
    const auto p = band_2d_sixop(t1, t2, kx, ky);
    const auto m = momentum_step_matrix(TwoDSixOp{UniformAngle{t1}, UniformAngle{t2}}, kx, ky);
    CHECK(std::abs(2.0 * std::cos(p.energy) - m.trace().real()) < 1e-12);
    if (!p.gapless) CHECK(p.axis.norm() == doctest::Approx(1.0).epsilon(1e-10));
  }

  // six-op gapless on the analytic E=0 line theta1 + theta2/2 = 2 pi
  {
    const double t1 = 1.9, t2 = 2.0 * (2.0 * M_PI - t1);
    double best = M_PI;
    for (int i = 0; i < 128; ++i)
      for (int j = 0; j < 128; ++j)
        best = std::min(best, band_2d_sixop(t1, t2, -M_PI / 2 + M_PI * i / 128,
                                            -M_PI / 2 + M_PI * j / 128)
                                  .energy);
    CHECK(best < 1e-3);
  }

  // simple: (pi/2, pi/2) at k = 0 has cos E = cos^2(pi/4) - sin^2(pi/4) = 0
  CHECK(band_2d_simple(M_PI / 2, M_PI / 2, 0.0, 0.0).energy ==
        doctest::Approx(M_PI / 2).epsilon(1e-14));
  // symmetry under kx <-> ky
  for (int i = 0; i < 8; ++i) {
    const double kx = testutil::uniform(-M_PI, M_PI), ky = testutil::uniform(-M_PI, M_PI);
    CHECK(band_2d_simple(0.7, 1.9, kx, ky).energy ==
          doctest::Approx(band_2d_simple(0.7, 1.9, ky, kx).energy).epsilon(1e-13));
  }
}

TEST_CASE("group velocity: closed form vs finite differences") {
  CHECK(group_velocity_conventional(M_PI / 2, 0.0) == doctest::Approx(0.0));
  const ProtocolFamily f = Conventional1D{UniformAngle{M_PI / 2}};
  const auto band = compute_band(f, 4096);
  const auto v = group_velocity(band);
  for (std::size_t i = 0; i < band.k.size(); i += 17) {
    if (band.gapless[i]) continue;
    CHECK(std::abs(v[i] - group_velocity_conventional(M_PI / 2, band.k[i])) < 1e-6);
  }
  // theta = 0: |v| = 1 wherever defined
  const auto flat = compute_band(Conventional1D{UniformAngle{0.0}}, 4096);
  const auto v0 = group_velocity(flat);
  for (std::size_t i = 40; i < flat.k.size(); i += 97) {
    if (flat.gapless[i] || flat.gapless[i - 1] || flat.gapless[i + 1]) continue;
    if (std::abs(std::abs(flat.k[i]) - M_PI) < 0.01 || std::abs(flat.k[i]) < 0.01) continue;
    CHECK(std::abs(std::abs(v0[i]) - 1.0) < 1e-9);
  }
}

TEST_CASE("diagonalize: a 2-site theta = 0 ring has phases {0, pi}") {
  const Geometry ring{Line::centered(2)};
  const auto u = one_step_unitary(build_protocol(Conventional1D{UniformAngle{0.0}}, ring));
  const auto spec = diagonalize(u, ring);
  // T on two sites swaps them in each spin lane: eigenvalues +-1 per lane
  const std::vector<double> expected = {0.0, 0.0, M_PI, M_PI};
  auto got = spec.phases;
  std::sort(got.begin(), got.end(), [](double a, double b) {
    return circle_distance(a, 0.0) < circle_distance(b, 0.0);
  });
  for (int i = 0; i < 4; ++i) CHECK(circle_distance(got[i], expected[i]) < 1e-12);
}

TEST_CASE("diagonalize: residuals, sorting, non-unitary rejection") {
  const Geometry ring{Line::centered(20)};
  const auto u = one_step_unitary(
      build_protocol(SplitStep1D{UniformAngle{-M_PI / 2}, UniformAngle{3 * M_PI / 4}}, ring));
  const auto spec = diagonalize(u, ring);
  CHECK(std::is_sorted(spec.phases.begin(), spec.phases.end()));
  CHECK(static_cast<int>(spec.phases.size()) == 40);
  for (int i = 0; i < 40; ++i) {
    const Complex lambda = std::polar(1.0, -spec.phases[i]);
    CHECK((u * spec.vectors.col(i) - lambda * spec.vectors.col(i)).norm() < 1e-8);
  }
  // chiral pairing E <-> -E
  for (double e : spec.phases) {
    double best = 1e9;
    for (double f : spec.phases) best = std::min(best, circle_distance(e, -f));
    CHECK(best < 1e-8);
  }

  Eigen::MatrixXcd bad = u;
  bad(0, 0) += 0.5;
  CHECK_THROWS_AS(diagonalize(bad, ring), NumericalError);
}

TEST_CASE("reflecting chain spectrum has the pi edge state") {
  const Geometry chain{Line::reflecting(40)};
  const auto spec = diagonalize(
      one_step_unitary(build_protocol(Reflecting1D{M_PI / 2, 0.0}, chain)), chain);
  int found = -1;
  for (int i = 0; i < (int)spec.phases.size(); ++i)
    if (circle_distance(spec.phases[i], M_PI) < 1e-10 && spec.position_mean[i] > -20.0)
      found = i;
  REQUIRE(found >= 0);
  CHECK(spec.participation[found] < 4.0);  // tightly localized at the edge
}

TEST_CASE("ring eigenphases match the band over the momentum grid") {
  // 1D families
  for (const ProtocolFamily& family :
       {ProtocolFamily{Conventional1D{UniformAngle{1.0}}},
        ProtocolFamily{SplitStep1D{UniformAngle{-0.8}, UniformAngle{1.7}}}}) {
    const int l = 16;
    const Geometry ring{Line::centered(l)};
    const auto spec = diagonalize(one_step_unitary(build_protocol(family, ring)), ring);
    std::vector<double> expected;
    for (int m = 0; m < l; ++m) {
      const double e = band_point(family, -M_PI + 2.0 * M_PI * m / l).energy;
      expected.push_back(e);
      expected.push_back(e == M_PI ? M_PI : -e);
    }
    std::sort(expected.begin(), expected.end());
    const auto got = testutil::sorted_phases(spec.phases);
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(circle_distance(got[i], expected[i]) < 1e-8);
  }

  // six-op walk on an 8x8 torus: four decoupled sublattices, each carrying
  // the doubled-cell momenta k = -pi/2 + pi m / 4
  {
    const ProtocolFamily family = TwoDSixOp{UniformAngle{2.1}, UniformAngle{0.9}};
    const Geometry torus{Torus2D::centered(8, 8)};
    const auto spec = diagonalize(one_step_unitary(build_protocol(family, torus)), torus);
    std::vector<double> expected;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        const double e =
            band_point(family, -M_PI / 2 + M_PI * m / 4, -M_PI / 2 + M_PI * n / 4).energy;
        for (int copy = 0; copy < 4; ++copy) {
          expected.push_back(e);
          expected.push_back(-e);
        }
      }
    }
    std::sort(expected.begin(), expected.end());
    const auto got = testutil::sorted_phases(spec.phases);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(circle_distance(got[i], expected[i]) < 1e-8);
  }
}

TEST_CASE("strip spectrum: uniform profile reproduces the bulk band") {
  const ProtocolFamily family = TwoDSimple{UniformAngle{0.6}, UniformAngle{1.4}};
  const Torus2D torus = Torus2D::centered(12, 12);
  const auto strip = strip_spectrum(family, {0.35}, torus);
  CHECK(strip.boundaries.empty());
  std::vector<double> expected;
  for (int n = 0; n < 12; ++n) {
    const double e = band_point(family, 0.35, -M_PI + 2 * M_PI * n / 12).energy;
    expected.push_back(e);
    expected.push_back(-e);
  }
  std::sort(expected.begin(), expected.end());
  std::vector<double> got;
  for (const auto& st : strip.states[0]) {
    got.push_back(st.energy);
    CHECK_FALSE(st.edge);
  }
  std::sort(got.begin(), got.end());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(circle_distance(got[i], expected[i]) < 1e-8);
}

TEST_CASE("strip spectrum: edge branches carry constant-sign slopes") {
  const Torus2D torus = Torus2D::centered(60, 60);
  const ProtocolFamily family =
      TwoDSixOp{PiecewiseAngle{1.5 * M_PI, 7.0 * M_PI / 6.0, -1},
                PiecewiseAngle{1.5 * M_PI, 7.0 * M_PI / 6.0, -1}};
  std::vector<double> kxs;
  for (int i = 0; i < 25; ++i) kxs.push_back(-0.36 + 0.03 * i);
  const auto strip = strip_spectrum(family, kxs, torus);
  REQUIRE(strip.boundaries.size() == 2);

  const double gap0 = 0.45;  // inside the bulk E=0 gap of both phases
  // boundary -> per-kx mean in-gap energy (the two parity copies average)
  std::map<int, std::vector<double>> branch_mean;
  for (std::size_t ik = 0; ik < kxs.size(); ++ik) {
    std::map<int, std::pair<double, int>> acc;
    for (const auto& st : strip.states[ik])
      if (std::abs(st.energy) < gap0 && st.edge) {
        acc[st.nearest_boundary].first += st.energy;
        acc[st.nearest_boundary].second += 1;
      }
    REQUIRE(acc.size() == 2);
    for (auto& [b, sum] : acc) {
      CHECK(sum.second == 2);  // one state per parity block
      branch_mean[b].push_back(sum.first / sum.second);
    }
  }
  REQUIRE(branch_mean.size() == 2);
  std::map<int, int> signs;
  for (auto& [b, means] : branch_mean) {
    int sign = means[1] > means[0] ? 1 : -1;
    for (std::size_t i = 1; i < means.size(); ++i)
      CHECK((means[i] - means[i - 1]) * sign > 0.0);
    signs[b] = sign;
  }
  CHECK(signs.begin()->second * std::prev(signs.end())->second == -1);
}

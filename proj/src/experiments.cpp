#include "qwalk/experiments.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>

#include "qwalk/analytics.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& dir, const std::string& name,
                       std::vector<std::string>& files) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  files.push_back(path.string());
  return out;
}

void write_summary(const fs::path& dir, const Json& summary,
                   std::vector<std::string>& files) {
  fs::create_directories(dir);
  const fs::path path = dir / "summary.json";
  std::ofstream out(path);
  out << summary.dump(2) << "\n";
  files.push_back(path.string());
}

const ProtocolFamily& require_family(const ExperimentConfig& config) {
  if (!config.family) throw ConfigError(config.experiment + ": config needs 'family'");
  return *config.family;
}

Geometry geometry_or_default(const ExperimentConfig& config, int steps) {
  if (config.geometry) return *config.geometry;
  // no-wrap default: 2N+1 centered sites for N steps
  return Line::centered(2 * std::max(steps, 1) + 1);
}

SpinorState initial_state(const ExperimentConfig& config, const Geometry& geometry) {
  if (const auto* line = std::get_if<Line>(&geometry))
    return SpinorState::localized(geometry, line->site_of(config.initial.x),
                                  config.initial.spin);
  const auto& torus = std::get<Torus2D>(geometry);
  return SpinorState::localized(geometry, torus.site_of(config.initial.x, config.initial.y),
                                config.initial.spin);
}

// Frame angle of the family's chiral symmetry operator, when one applies.
std::optional<double> chiral_angle(const ProtocolFamily& family) {
  if (const auto* c = std::get_if<Conventional1D>(&family)) {
    if (is_uniform(c->theta)) return uniform_angle(c->theta);
    return std::nullopt;
  }
  if (const auto* s = std::get_if<SplitStep1D>(&family)) {
    if (is_uniform(s->theta1)) return uniform_angle(s->theta1);
    return std::nullopt;
  }
  if (const auto* t = std::get_if<TimeShiftedSplitStep1D>(&family)) {
    if (is_uniform(t->theta2)) return uniform_angle(t->theta2);
    return std::nullopt;
  }
  if (const auto* r = std::get_if<Reflecting1D>(&family)) return r->theta;
  return std::nullopt;
}

}  // namespace

ExperimentResult run_walk1d(const ExperimentConfig& config, const fs::path& out_dir) {
  ExperimentResult result;
  const Geometry geometry = geometry_or_default(config, config.steps);
  if (!is_1d(geometry)) throw ConfigError("walk1d: 1D geometry required");
  const WalkProtocol protocol = build_protocol(require_family(config), geometry);
  const auto& line = std::get<Line>(geometry);
  const int center_site = line.site_of(config.window.center);

  SpinorState state = initial_state(config, geometry);
  auto dist_out = open_out(out_dir, "distributions.csv", result.files);
  write_csv_header(dist_out, {"step", "site", "p"});
  auto window_out = open_out(out_dir, "window.csv", result.files);
  write_csv_header(window_out, {"step", "p_window"});

  std::vector<double> window_series;
  for (int n = 0; n <= config.steps; ++n) {
    if (n > 0) state = evolve(state, protocol, 1);
    const Eigen::VectorXd p = state.position_distribution();
    for (int s = 0; s < line.length; ++s)
      dist_out << n << "," << line.coord(s) << "," << format_double(p[s]) << "\n";
    const double pw = state.probability_in_window(center_site, config.window.radius);
    window_series.push_back(pw);
    window_out << n << "," << format_double(pw) << "\n";
  }

  auto final_out = open_out(out_dir, "final_state.csv", result.files);
  write_state_csv(final_out, state);

  result.summary["experiment"] = "walk1d";
  result.summary["steps"] = config.steps;
  result.summary["p_window_final"] = window_series.back();
  if (config.steps >= 10) result.summary["p_window_10"] = window_series[10];
  result.summary["norm_error"] = std::abs(state.norm_sq() - 1.0);
  write_summary(out_dir, result.summary, result.files);
  return result;
}

ExperimentResult run_phase1d(const ExperimentConfig& config, const fs::path& out_dir,
                             int workers) {
  ExperimentResult result;
  const int n = config.grid.theta_points;
  const double lo = -2.0 * M_PI, span = 4.0 * M_PI;
  std::vector<PhaseDiagramCell> cells(n * n);
  parallel_for_index(n * n, workers, [&](int idx) {
    const int i = idx / n, j = idx % n;
    PhaseDiagramCell cell;
    cell.theta1 = lo + (i + 0.5) * span / n;
    cell.theta2 = lo + (j + 0.5) * span / n;
    const ProtocolFamily family =
        SplitStep1D{UniformAngle{cell.theta1}, UniformAngle{cell.theta2}};
    cell.min_gap_0 = min_gap(family, 0.0, config.grid.k_points);
    cell.min_gap_pi = min_gap(family, M_PI, config.grid.k_points);
    const bool gapless = std::min(cell.min_gap_0, cell.min_gap_pi) < config.tolerances.gapless;
    const auto closed = winding_closed_form(cell.theta1, cell.theta2);
    if (gapless || closed == WindingClass::OnCriticalLine) {
      cell.critical = true;
    } else {
      cell.invariant = winding_number(compute_band(family, config.grid.k_points),
                                      chiral_frame(cell.theta1));
    }
    cells[idx] = cell;
  });
  auto out = open_out(out_dir, "phase1d.csv", result.files);
  write_phase_diagram_csv(out, cells);

  int mismatches = 0, critical = 0;
  for (const auto& cell : cells) {
    if (cell.critical) {
      ++critical;
      continue;
    }
    const auto closed = winding_closed_form(cell.theta1, cell.theta2);
    if ((cell.invariant == 1) != (closed == WindingClass::One)) ++mismatches;
  }
  result.summary["experiment"] = "phase1d";
  result.summary["cells"] = n * n;
  result.summary["critical_cells"] = critical;
  result.summary["closed_form_mismatches"] = mismatches;
  write_summary(out_dir, result.summary, result.files);
  if (mismatches > 0) throw NumericalError("phase1d: winding routes disagree");
  return result;
}

ExperimentResult run_phase2d(const ExperimentConfig& config, const fs::path& out_dir,
                             int workers) {
  ExperimentResult result;
  const bool six_op =
      config.family && std::holds_alternative<TwoDSixOp>(*config.family);
  const bool simple =
      config.family && std::holds_alternative<TwoDSimple>(*config.family);
  if (!six_op && !simple)
    throw ConfigError("phase2d: family must be two_d_six_op or two_d_simple");

  const int n = config.grid.theta_points;
  const double lo = 0.0, span = 2.0 * M_PI;
  std::vector<PhaseDiagramCell> cells(n * n);
  std::atomic<int> failures{0};
  parallel_for_index(n * n, workers, [&](int idx) {
    const int i = idx / n, j = idx % n;
    PhaseDiagramCell cell;
    cell.theta1 = lo + (i + 0.5) * span / n;
    cell.theta2 = lo + (j + 0.5) * span / n;
    const ProtocolFamily family =
        six_op ? ProtocolFamily{TwoDSixOp{UniformAngle{cell.theta1}, UniformAngle{cell.theta2}}}
               : ProtocolFamily{TwoDSimple{UniformAngle{cell.theta1}, UniformAngle{cell.theta2}}};
    cell.min_gap_0 = min_gap(family, 0.0, config.grid.k_points_2d / 2);
    cell.min_gap_pi = min_gap(family, M_PI, config.grid.k_points_2d / 2);
    const bool analytic_gapless =
        six_op && !gapless_lines_sixop(cell.theta1, cell.theta2, 1e-9).gapped();
    if (analytic_gapless ||
        std::min(cell.min_gap_0, cell.min_gap_pi) < config.tolerances.gapless) {
      cell.critical = true;
    } else {
      try {
        cell.invariant = chern_number_berry_plaquette(family, config.grid.k_points_2d);
      } catch (const NumericalError&) {
        cell.critical = true;
        ++failures;
      }
    }
    cells[idx] = cell;
  });
  auto out = open_out(out_dir, "phase2d.csv", result.files);
  write_phase_diagram_csv(out, cells);

  if (six_op) {
    // analytic gapless-line overlay, labeled segments in the swept window
    Json lines = Json::array();
    for (int m = 0; m <= 3; ++m) {
      lines.push_back(Json{{"family", "theta1+theta2/2 = 2pi n (E=0)"},
                           {"theta1_at_theta2_0", 2.0 * M_PI * m},
                           {"dtheta1_dtheta2", -0.5}});
      lines.push_back(Json{{"family", "theta1-theta2/2 = (2n+1) pi (E=0)"},
                           {"theta1_at_theta2_0", M_PI * (2 * m + 1)},
                           {"dtheta1_dtheta2", 0.5}});
      lines.push_back(Json{{"family", "theta1+theta2/2 = (2n+1) pi (E=pi)"},
                           {"theta1_at_theta2_0", M_PI * (2 * m + 1)},
                           {"dtheta1_dtheta2", -0.5}});
      lines.push_back(Json{{"family", "theta1-theta2/2 = 2pi n (E=pi)"},
                           {"theta1_at_theta2_0", 2.0 * M_PI * m},
                           {"dtheta1_dtheta2", 0.5}});
      lines.push_back(Json{{"family", "theta2 = 2pi n (E=0 and E=pi)"},
                           {"theta2", 2.0 * M_PI * m}});
    }
    auto lines_out = open_out(out_dir, "gapless_lines.json", result.files);
    lines_out << lines.dump(2) << "\n";
  }

  std::map<int, int> histogram;
  for (const auto& cell : cells)
    if (!cell.critical) histogram[cell.invariant]++;
  Json hist;
  for (auto [c, count] : histogram) hist[std::to_string(c)] = count;
  result.summary["experiment"] = "phase2d";
  result.summary["family"] = six_op ? "two_d_six_op" : "two_d_simple";
  result.summary["chern_histogram"] = hist;
  result.summary["eigensolver_failures"] = failures.load();
  write_summary(out_dir, result.summary, result.files);
  return result;
}

ExperimentResult run_edge2d(const ExperimentConfig& config, const fs::path& out_dir,
                            int workers) {
  ExperimentResult result;
  const ProtocolFamily& family = require_family(config);
  if (!family_is_2d(family)) throw ConfigError("edge2d: 2D family required");
  const Geometry geometry =
      config.geometry ? *config.geometry : Geometry{Torus2D::centered(100, 100)};
  const auto& torus = std::get<Torus2D>(geometry);

  const double half = brillouin_halfwidth(family);
  const int nk = config.grid.kx_points;
  std::vector<double> kxs(nk);
  for (int i = 0; i < nk; ++i) kxs[i] = -half + 2.0 * half * i / nk;

  const StripSpectrum strip =
      strip_spectrum(family, kxs, torus, {}, kDefaultDenseCap, workers);
  auto out = open_out(out_dir, "strip_spectrum.csv", result.files);
  write_strip_csv(out, strip);

  int edge_states = 0;
  for (const auto& states : strip.states)
    for (const auto& st : states) edge_states += st.edge ? 1 : 0;
  result.summary["experiment"] = "edge2d";
  result.summary["kx_points"] = nk;
  result.summary["boundaries"] = strip.boundaries;
  result.summary["edge_tagged_states"] = edge_states;
  write_summary(out_dir, result.summary, result.files);
  return result;
}

ExperimentResult run_boundstate(const ExperimentConfig& config, const fs::path& out_dir) {
  ExperimentResult result;
  if (!config.boundstate) throw ConfigError("boundstate: config needs 'boundstate'");
  const auto& spec = *config.boundstate;
  const Geometry geometry{Line::reflecting(spec.sites)};
  const auto protocol = build_protocol(Reflecting1D{spec.theta, spec.phi}, geometry);
  const Eigen::MatrixXcd u = one_step_unitary(protocol);
  const auto frame = chiral_frame(spec.theta);
  const double residual = chiral_symmetry_residual(u, frame);
  const QuasiEnergySpectrum numerical = diagonalize(u, geometry);

  result.summary["experiment"] = "boundstate";
  result.summary["theta"] = spec.theta;
  result.summary["phi"] = spec.phi;
  result.summary["sites"] = spec.sites;
  result.summary["chiral_residual"] = residual;

  const bool symmetric = std::min(std::abs(std::remainder(spec.phi, 2.0 * M_PI)),
                                  std::abs(std::remainder(spec.phi - M_PI, 2.0 * M_PI))) <
                         1e-12;
  if (!symmetric) result.summary["warning"] = "phi not in {0, pi}: chiral symmetry broken";

  // bulk bands of the conventional walk with this theta
  double e_lo = M_PI, e_hi = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double e = band_conventional(spec.theta, -M_PI + 2.0 * M_PI * i / 1024).energy;
    e_lo = std::min(e_lo, e);
    e_hi = std::max(e_hi, e);
  }
  result.summary["bulk_band"] = Json::array({e_lo, e_hi});

  Json in_gap = Json::array();
  for (int i = 0; i < static_cast<int>(numerical.phases.size()); ++i) {
    const double a = std::abs(numerical.phases[i]);
    const bool gap_state = a < e_lo - 0.02 || a > e_hi + 0.02;
    const bool localized = numerical.participation[i] < 0.2 * spec.sites;
    if (gap_state && localized)
      in_gap.push_back(Json{{"eigenphase", numerical.phases[i]},
                            {"position_mean", numerical.position_mean[i]},
                            {"participation", numerical.participation[i]}});
  }
  result.summary["in_gap_localized_states"] = in_gap;

  if (symmetric) {
    const ReflectingBoundState analytic = reflecting_bound_state(spec.theta, spec.phi);
    const SpinorState embedded = embed_bound_state(analytic, spec.sites);
    // fidelity against the subspace at the analytic energy near the main edge
    double fidelity = 0.0;
    int best = -1;
    for (int i = 0; i < static_cast<int>(numerical.phases.size()); ++i) {
      if (circle_distance(numerical.phases[i], analytic.energy) > 1e-8) continue;
      const double overlap = std::abs(embedded.amplitudes().dot(numerical.vectors.col(i)));
      if (overlap > fidelity) {
        fidelity = overlap;
        best = i;
      }
    }
    result.summary["analytic"] =
        Json{{"energy", analytic.energy},
             {"decay_length", analytic.decay_length},
             {"lambda", {analytic.lambda_selected.real(), analytic.lambda_selected.imag()}},
             {"edge_spinor",
              {{analytic.edge_spinor[0].real(), analytic.edge_spinor[0].imag()},
               {analytic.edge_spinor[1].real(), analytic.edge_spinor[1].imag()}}}};
    result.summary["fidelity"] = fidelity;
    if (best >= 0) result.summary["matched_eigenphase"] = numerical.phases[best];

    auto analytic_out = open_out(out_dir, "bound_state_analytic.csv", result.files);
    write_state_csv(analytic_out, embedded);
    if (best >= 0) {
      SpinorState numeric_state(geometry);
      numeric_state.amplitudes() = numerical.vectors.col(best);
      auto numeric_out = open_out(out_dir, "bound_state_numerical.csv", result.files);
      write_state_csv(numeric_out, numeric_state);
    }
  }

  auto spectrum_out = open_out(out_dir, "spectrum.csv", result.files);
  write_spectrum_csv(spectrum_out, numerical);
  write_summary(out_dir, result.summary, result.files);
  return result;
}

ExperimentResult run_asymptotic(const ExperimentConfig& config, const fs::path& out_dir) {
  ExperimentResult result;
  const ProtocolFamily& family = require_family(config);
  const AsymptoticDistribution dist =
      asymptotic_distribution(family, config.initial.spin, config.grid.bins);
  auto out = open_out(out_dir, "distribution.csv", result.files);
  write_distribution_csv(out, dist.x, dist.density);

  double mass = 0.0;
  for (double p : dist.density) mass += p * (2.0 / config.grid.bins);
  result.summary["experiment"] = "asymptotic";
  result.summary["mass"] = mass;
  result.summary["v_max"] = dist.v_max;

  // closed-form companion for the theta = pi/2, spin-up walk
  const auto* conventional = std::get_if<Conventional1D>(&family);
  const bool theta_half = conventional && is_uniform(conventional->theta) &&
                          std::abs(uniform_angle(conventional->theta) - 0.5 * M_PI) < 1e-12;
  const bool spin_up = std::abs(config.initial.spin[0] - Complex(1.0, 0.0)) < 1e-12 &&
                       std::abs(config.initial.spin[1]) < 1e-12;
  if (theta_half && spin_up) {
    std::vector<double> closed(dist.x.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < dist.x.size(); ++i) {
      closed[i] = closed_form_theta_half(dist.x[i]);
      if (std::abs(dist.x[i]) <= 0.65)
        worst = std::max(worst, std::abs(closed[i] - dist.density[i]));
    }
    auto closed_out = open_out(out_dir, "closed_form.csv", result.files);
    write_distribution_csv(closed_out, dist.x, closed);
    result.summary["closed_form_max_deviation_065"] = worst;
  }

  // empirical rescaled histogram after `steps` periods (coarse bins so the
  // single-site interference fringes average out)
  if (config.steps > 0) {
    const Geometry geometry = geometry_or_default(config, config.steps);
    const auto protocol = build_protocol(family, geometry);
    SpinorState state = initial_state(config, geometry);
    state = evolve(state, protocol, config.steps);
    const auto& line = std::get<Line>(geometry);
    const Eigen::VectorXd p = state.position_distribution();
    const int coarse = 21;
    std::vector<double> emp(coarse, 0.0), centers(coarse);
    const double dx = 2.0 / coarse;
    for (int b = 0; b < coarse; ++b) centers[b] = -1.0 + (b + 0.5) * dx;
    for (int s = 0; s < line.length; ++s) {
      const double x = static_cast<double>(line.coord(s)) / config.steps;
      const int b = std::max(0, std::min(coarse - 1, int(std::floor((x + 1.0) / dx))));
      emp[b] += p[s] / dx;
    }
    auto emp_out = open_out(out_dir, "empirical.csv", result.files);
    write_distribution_csv(emp_out, centers, emp);

    const AsymptoticDistribution coarse_dist =
        asymptotic_distribution(family, config.initial.spin, coarse);
    double sup = 0.0;
    for (int b = 0; b < coarse; ++b) {
      if (std::abs(centers[b]) > coarse_dist.v_max - 1.5 * dx) continue;
      sup = std::max(sup, std::abs(emp[b] - coarse_dist.density[b]));
    }
    result.summary["empirical_steps"] = config.steps;
    result.summary["empirical_sup_norm_interior"] = sup;
  }

  write_summary(out_dir, result.summary, result.files);
  return result;
}

ExperimentResult run_spectrum(const ExperimentConfig& config, const fs::path& out_dir) {
  ExperimentResult result;
  const ProtocolFamily& family = require_family(config);
  Geometry geometry = config.geometry ? *config.geometry : Geometry{Line::centered(41)};
  if (std::holds_alternative<Reflecting1D>(family) &&
      (!config.geometry || std::get<Line>(geometry).orientation != -1))
    geometry = Line::reflecting(num_sites(geometry));
  const auto protocol = build_protocol(family, geometry);
  const Eigen::MatrixXcd u = one_step_unitary(protocol);
  const QuasiEnergySpectrum spectrum = diagonalize(u, geometry);
  auto out = open_out(out_dir, "spectrum.csv", result.files);
  write_spectrum_csv(out, spectrum);

  result.summary["experiment"] = "spectrum";
  result.summary["dimension"] = static_cast<int>(spectrum.phases.size());
  result.summary["unitarity_defect"] = unitarity_defect(u);

  if (const auto angle = chiral_angle(family)) {
    const auto frame = chiral_frame(*angle);
    result.summary["chiral_residual"] = chiral_symmetry_residual(u, frame);
    try {
      const auto charges =
          bound_state_charges(spectrum, frame, geometry, config.tolerances.charge_window);
      result.summary["q0"] = charges.q0;
      result.summary["qpi"] = charges.qpi;
      result.summary["q0_states"] = charges.q0_values;
      result.summary["qpi_states"] = charges.qpi_values;
    } catch (const NumericalError& e) {
      result.summary["charge_warning"] = e.what();
    }
  }
  write_summary(out_dir, result.summary, result.files);
  return result;
}

namespace {

struct SelfTest {
  int failures = 0;
  void check(bool ok, const std::string& name) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", name.c_str());
    if (!ok) ++failures;
  }
};

void selftest_walk1d(SelfTest& t) {
  const Geometry g{Line::centered(61)};
  const auto protocol = build_protocol(
      SplitStep1D{UniformAngle{-M_PI / 2}, TanhStepAngle{3 * M_PI / 4, M_PI / 4, 3.0}}, g);
  auto st = SpinorState::localized(g, std::get<Line>(g).site_of(0), {1.0, 0.0});
  const auto echo = evolve(st, protocol, 0);
  t.check((echo.amplitudes() - st.amplitudes()).norm() == 0.0, "walk1d: 0 steps echoes");
  st = evolve(st, protocol, 30);
  t.check(std::abs(st.norm_sq() - 1.0) < 1e-10, "walk1d: norm conserved over 30 steps");
  t.check(st.probability_in_window(std::get<Line>(g).site_of(0), 5) > 0.1,
          "walk1d: bound-state weight stays near origin");
}

void selftest_phase1d(SelfTest& t) {
  int agree = 0, total = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double t1 = -2 * M_PI + (i + 0.5) * 4 * M_PI / 8;
      const double t2 = -2 * M_PI + (j + 0.5) * 4 * M_PI / 8;
      const auto closed = winding_closed_form(t1, t2);
      if (closed == WindingClass::OnCriticalLine) continue;
      ++total;
      const int w = winding_number(
          compute_band(SplitStep1D{UniformAngle{t1}, UniformAngle{t2}}, 512),
          chiral_frame(t1));
      if ((w == 1) == (closed == WindingClass::One)) ++agree;
    }
  }
  t.check(agree == total, "phase1d: winding routes agree on an 8x8 grid");
}

void selftest_phase2d(SelfTest& t) {
  const double t1 = 7.0 * M_PI / 6.0;
  const ProtocolFamily a = TwoDSixOp{UniformAngle{t1}, UniformAngle{t1}};
  const ProtocolFamily b = TwoDSixOp{UniformAngle{1.5 * M_PI}, UniformAngle{1.5 * M_PI}};
  const int ca = chern_number_berry_plaquette(a, 64);
  const int cb = chern_number_berry_plaquette(b, 64);
  t.check(ca == chern_number_solid_angle(compute_band_2d(a, 64)),
          "phase2d: methods agree at (7pi/6, 7pi/6)");
  t.check(cb == chern_number_solid_angle(compute_band_2d(b, 64)),
          "phase2d: methods agree at (3pi/2, 3pi/2)");
  t.check(ca != cb, "phase2d: phases differ across the gapless line");
  const int upper = chern_number_berry_plaquette(band_eigenvector_field(b, 64, false), 64, 64);
  const int lower = chern_number_berry_plaquette(band_eigenvector_field(b, 64, true), 64, 64);
  t.check(upper + lower == 0, "phase2d: band Chern numbers sum to zero");
}

void selftest_edge2d(SelfTest& t) {
  const Torus2D torus = Torus2D::centered(40, 40);
  const ProtocolFamily family =
      TwoDSimple{PiecewiseAngle{M_PI, 0.0, -1}, PiecewiseAngle{0.0, M_PI, -1}};
  std::vector<double> kxs = {-2.0, -1.0, 0.5, 1.5};
  const auto strip = strip_spectrum(family, kxs, torus);
  bool ok = true;
  for (std::size_t ik = 0; ik < kxs.size(); ++ik) {
    for (const auto& st : strip.states[ik]) {
      const double d =
          std::min({circle_distance(st.energy, M_PI / 2), circle_distance(st.energy, -M_PI / 2),
                    circle_distance(st.energy, kxs[ik] - M_PI / 2),
                    circle_distance(st.energy, kxs[ik] + M_PI / 2),
                    circle_distance(st.energy, -kxs[ik] - M_PI / 2),
                    circle_distance(st.energy, -kxs[ik] + M_PI / 2)});
      ok = ok && d < 1e-8;
    }
  }
  t.check(ok, "edge2d: exact-angle strip spectrum matches kx -+ pi/2 and bulk +-pi/2");
  const ProtocolFamily uniform = TwoDSimple{UniformAngle{1.0}, UniformAngle{2.0}};
  const auto flat = strip_spectrum(uniform, kxs, torus);
  int edges = 0;
  for (const auto& states : flat.states)
    for (const auto& st : states) edges += st.edge ? 1 : 0;
  t.check(edges == 0, "edge2d: uniform protocol has no edge-tagged states");
}

void selftest_boundstate(SelfTest& t) {
  const auto bound = reflecting_bound_state(M_PI / 2, 0.0);
  t.check(std::abs(bound.energy - M_PI) < 1e-15, "boundstate: (pi/2, 0) sits at E = pi");
  t.check(std::abs(bound.decay_length + 1.0 / std::log(std::sqrt(2.0) - 1.0)) < 1e-12,
          "boundstate: decay length matches -1/log(sqrt(2)-1)");
  const Geometry g{Line::reflecting(40)};
  const auto spec = diagonalize(
      one_step_unitary(build_protocol(Reflecting1D{M_PI / 2, 0.0}, g)), g);
  double fidelity = 0.0;
  const auto emb = embed_bound_state(bound, 40);
  for (int i = 0; i < (int)spec.phases.size(); ++i)
    if (circle_distance(spec.phases[i], M_PI) < 1e-9)
      fidelity = std::max(fidelity,
                          std::abs(emb.amplitudes().dot(spec.vectors.col(i))));
  t.check(fidelity > 1.0 - 1e-8, "boundstate: analytic/numeric fidelity on 40 sites");
}

void selftest_asymptotic(SelfTest& t) {
  const auto dist = asymptotic_distribution(Conventional1D{UniformAngle{M_PI / 2}},
                                            {1.0, 0.0}, 256, 1 << 14);
  double mass = 0.0;
  for (double p : dist.density) mass += p * (2.0 / 256);
  t.check(std::abs(mass - 1.0) < 1e-6, "asymptotic: density normalized");
  t.check(std::abs(dist.v_max - 1.0 / std::sqrt(2.0)) < 1e-3,
          "asymptotic: support bound at cos(theta/2)");
  t.check(std::abs(closed_form_theta_half(0.0) - 1.0 / M_PI) < 1e-15,
          "asymptotic: closed form at X = 0 is 1/pi");
}

void selftest_spectrum(SelfTest& t) {
  const Geometry g{Line::centered(12)};
  const ProtocolFamily fam = Conventional1D{UniformAngle{M_PI / 2}};
  const auto spec = diagonalize(one_step_unitary(build_protocol(fam, g)), g);
  std::vector<double> expected;
  for (int m = 0; m < 12; ++m) {
    const double e = band_point(fam, -M_PI + 2.0 * M_PI * m / 12).energy;
    expected.push_back(e);
    expected.push_back(-e);
  }
  std::sort(expected.begin(), expected.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    worst = std::max(worst, circle_distance(expected[i], spec.phases[i]));
  t.check(worst < 1e-8, "spectrum: ring eigenphases match the band");
  bool paired = true;
  for (double e : spec.phases) {
    double best = 1e9;
    for (double f : spec.phases) best = std::min(best, circle_distance(e, -f));
    paired = paired && best < 1e-8;
  }
  t.check(paired, "spectrum: chiral E <-> -E pairing");
}

}  // namespace

int selftest(const std::string& command) {
  SelfTest t;
  if (command == "walk1d") selftest_walk1d(t);
  else if (command == "phase1d") selftest_phase1d(t);
  else if (command == "phase2d") selftest_phase2d(t);
  else if (command == "edge2d") selftest_edge2d(t);
  else if (command == "boundstate") selftest_boundstate(t);
  else if (command == "asymptotic") selftest_asymptotic(t);
  else if (command == "spectrum") selftest_spectrum(t);
  else throw ConfigError("unknown selftest '" + command + "'");
  return t.failures;
}

}  // namespace qwalk

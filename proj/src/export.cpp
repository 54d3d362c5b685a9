#include "qwalk/export.hpp"

#include <cinttypes>
#include <cstdio>

namespace qwalk {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv_header(std::ostream& os, const std::vector<std::string>& columns) {
  os << kCsvHeader << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : "");
  os << "\n";
}

void write_state_csv(std::ostream& os, const SpinorState& state) {
  const bool two_d = !is_1d(state.geometry());
  if (two_d)
    write_csv_header(os, {"site", "site_y", "re_up", "im_up", "re_down", "im_down"});
  else
    write_csv_header(os, {"site", "re_up", "im_up", "re_down", "im_down"});
  for (int s = 0; s < state.sites(); ++s) {
    if (two_d) {
      const auto& t = std::get<Torus2D>(state.geometry());
      os << t.coord_x(s) << "," << t.coord_y(s);
    } else {
      os << std::get<Line>(state.geometry()).coord(s);
    }
    os << "," << format_double(state.amp(s, kSpinUp).real()) << ","
       << format_double(state.amp(s, kSpinUp).imag()) << ","
       << format_double(state.amp(s, kSpinDown).real()) << ","
       << format_double(state.amp(s, kSpinDown).imag()) << "\n";
  }
}

Json state_to_json(const SpinorState& state) {
  Json rows = Json::array();
  const bool two_d = !is_1d(state.geometry());
  for (int s = 0; s < state.sites(); ++s) {
    Json row;
    if (two_d) {
      const auto& t = std::get<Torus2D>(state.geometry());
      row["site"] = t.coord_x(s);
      row["site_y"] = t.coord_y(s);
    } else {
      row["site"] = std::get<Line>(state.geometry()).coord(s);
    }
    row["re_up"] = state.amp(s, kSpinUp).real();
    row["im_up"] = state.amp(s, kSpinUp).imag();
    row["re_down"] = state.amp(s, kSpinDown).real();
    row["im_down"] = state.amp(s, kSpinDown).imag();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_band_csv(std::ostream& os, const BlochBand1D& band) {
  write_csv_header(os, {"k", "E", "nx", "ny", "nz", "gapless"});
  for (std::size_t i = 0; i < band.k.size(); ++i) {
    os << format_double(band.k[i]) << "," << format_double(band.energy[i]) << ","
       << format_double(band.axis[i].x()) << "," << format_double(band.axis[i].y()) << ","
       << format_double(band.axis[i].z()) << "," << int(band.gapless[i]) << "\n";
  }
}

void write_band_csv(std::ostream& os, const BlochBand2D& band) {
  write_csv_header(os, {"kx", "ky", "E", "nx", "ny", "nz", "gapless"});
  const int ny = static_cast<int>(band.ky.size());
  for (std::size_t i = 0; i < band.kx.size(); ++i) {
    for (int j = 0; j < ny; ++j) {
      const std::size_t idx = i * ny + j;
      os << format_double(band.kx[i]) << "," << format_double(band.ky[j]) << ","
         << format_double(band.energy[idx]) << "," << format_double(band.axis[idx].x())
         << "," << format_double(band.axis[idx].y()) << ","
         << format_double(band.axis[idx].z()) << "," << int(band.gapless[idx]) << "\n";
    }
  }
}

void write_spectrum_csv(std::ostream& os, const QuasiEnergySpectrum& spectrum) {
  const bool two_d = !spectrum.mean_abs_y.empty();
  std::vector<std::string> cols = {"index", "eigenphase", "position_mean",
                                   "participation"};
  if (two_d) cols.push_back("mean_abs_y");
  write_csv_header(os, cols);
  for (std::size_t i = 0; i < spectrum.phases.size(); ++i) {
    os << i << "," << format_double(spectrum.phases[i]) << ","
       << format_double(spectrum.position_mean[i]) << ","
       << format_double(spectrum.participation[i]);
    if (two_d) os << "," << format_double(spectrum.mean_abs_y[i]);
    os << "\n";
  }
}

void write_strip_csv(std::ostream& os, const StripSpectrum& strip) {
  write_csv_header(os, {"kx", "eigenphase", "edge_tag", "mean_y", "participation",
                        "edge_distance", "nearest_boundary"});
  for (std::size_t ik = 0; ik < strip.kx.size(); ++ik) {
    for (const StripState& st : strip.states[ik]) {
      os << format_double(strip.kx[ik]) << "," << format_double(st.energy) << ","
         << int(st.edge) << "," << format_double(st.mean_y) << ","
         << format_double(st.participation) << "," << format_double(st.edge_distance)
         << "," << st.nearest_boundary << "\n";
    }
  }
}

void write_phase_diagram_csv(std::ostream& os, const std::vector<PhaseDiagramCell>& cells) {
  write_csv_header(os, {"theta1", "theta2", "invariant", "critical", "min_gap_0",
                        "min_gap_pi"});
  for (const auto& c : cells) {
    os << format_double(c.theta1) << "," << format_double(c.theta2) << "," << c.invariant
       << "," << int(c.critical) << "," << format_double(c.min_gap_0) << ","
       << format_double(c.min_gap_pi) << "\n";
  }
}

void write_distribution_csv(std::ostream& os, const std::vector<double>& x,
                            const std::vector<double>& density) {
  write_csv_header(os, {"X", "P"});
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_double(x[i]) << "," << format_double(density[i]) << "\n";
}

void write_series_csv(std::ostream& os, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  write_csv_header(os, columns);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

}  // namespace qwalk

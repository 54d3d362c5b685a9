#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qwalk/analytics.hpp"
#include "qwalk/config.hpp"
#include "qwalk/topology.hpp"

namespace qwalk {

inline constexpr const char* kCsvHeader = "# qwalk-topo v1";

// 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

void write_csv_header(std::ostream& os, const std::vector<std::string>& columns);

void write_state_csv(std::ostream& os, const SpinorState& state);
Json state_to_json(const SpinorState& state);

void write_band_csv(std::ostream& os, const BlochBand1D& band);
void write_band_csv(std::ostream& os, const BlochBand2D& band);

void write_spectrum_csv(std::ostream& os, const QuasiEnergySpectrum& spectrum);
void write_strip_csv(std::ostream& os, const StripSpectrum& strip);

struct PhaseDiagramCell {
  double theta1 = 0.0;
  double theta2 = 0.0;
  int invariant = 0;
  bool critical = false;
  double min_gap_0 = 0.0;
  double min_gap_pi = 0.0;
};
void write_phase_diagram_csv(std::ostream& os, const std::vector<PhaseDiagramCell>& cells);

void write_distribution_csv(std::ostream& os, const std::vector<double>& x,
                            const std::vector<double>& density);

void write_series_csv(std::ostream& os, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

}  // namespace qwalk

#pragma once

#include <random>

#include "qwalk/protocol.hpp"

namespace qwalk::testutil {

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline SpinorState random_state(const Geometry& geometry) {
  SpinorState state(geometry);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 2 * num_sites(geometry); ++i)
    state.amplitudes()[i] = Complex(gauss(rng()), gauss(rng()));
  state.amplitudes().normalize();
  return state;
}

inline std::vector<double> sorted_phases(std::vector<double> phases) {
  std::sort(phases.begin(), phases.end());
  return phases;
}

}  // namespace qwalk::testutil

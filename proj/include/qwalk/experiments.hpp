#pragma once

#include <filesystem>
#include <functional>

#include "qwalk/export.hpp"

namespace qwalk {

// Shared implementations behind the CLI subcommands. Each writes its data
// files under `out_dir` and returns the paths written.
struct ExperimentResult {
  std::vector<std::string> files;
  Json summary;
};

ExperimentResult run_walk1d(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);
ExperimentResult run_phase1d(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir, int workers);
ExperimentResult run_phase2d(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir, int workers);
ExperimentResult run_edge2d(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir, int workers);
ExperimentResult run_boundstate(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);
ExperimentResult run_asymptotic(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);
ExperimentResult run_spectrum(const ExperimentConfig& config,
                              const std::filesystem::path& out_dir);

// Small invariant suites behind --selftest; returns the number of failures
// and prints one line per check.
int selftest(const std::string& command);

}  // namespace qwalk

#pragma once

#include <string>
#include <vector>

#include "fitpa/competition.hpp"
#include "fitpa/config.hpp"
#include "fitpa/experiments.hpp"

namespace fitpa {

// Deterministic shortest round-trip double formatting shared by all writers,
// so identical runs produce byte-identical files.
std::string format_double(double v);

std::string trajectory_csv(const Trajectory& t);
std::string trajectory_json(const RunConfig& rc, const Trajectory& t);

std::string phase_scan_csv(const std::vector<PhaseScanPoint>& points);

// Analysis report: model echo, degeneracy, classified zeros, thresholds.
std::string analysis_report_json(const RunConfig& rc, const CompetitionFunction& cf,
                                 const ZeroReport& zr, const ThresholdReport& tr);

std::string ensemble_json(const RunConfig& rc, const EnsembleResult& er,
                          const DominationRule& rule, bool per_run_terminals);

std::string lyapunov_json(const LyapunovReport& rep);

// Static SVG plot of a competition function on [0,1] with classified zero
// markers (filled = stable, hollow = unstable, square = touchpoint).
std::string competition_svg(const CompetitionFunction& cf, const ZeroReport& zr,
                            const std::string& title);

struct OutputFile {
  std::string path;
  std::size_t bytes = 0;
  std::string digest;
};

// Writes content and records it for the manifest.
OutputFile write_output(const std::string& path, const std::string& content);

std::string manifest_json(const RunConfig& rc, const std::string& command,
                          const std::vector<OutputFile>& outputs);

}  // namespace fitpa

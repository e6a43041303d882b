#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "navsim/core/error.hpp"
#include "navsim/sim/plot.hpp"
#include "navsim/sim/trace.hpp"

namespace nav {

struct ScenarioConfig {
  std::string demo;
  std::uint64_t seed = 1;
  double dt = 0.1;
  double duration = 60.0;
  std::map<std::string, double> params;

  void validate() const;
};

struct DemoArtifacts {
  TraceTable trace;
  std::map<std::string, TraceTable> tables;  // auxiliary CSVs, keyed by suffix
  std::vector<PlotSeries> plot;
  std::string plot_title;
  std::optional<std::string> pgm;
  std::map<std::string, double> summary;
};

/// Raised when a demo's algorithm fails mid-run; carries whatever was
/// produced up to that point.
class DemoFailure : public Error {
 public:
  DemoFailure(const Error& cause, DemoArtifacts partial)
      : Error(cause.code(), cause.what(), Preformatted{}), partial_(std::move(partial)) {}

  const DemoArtifacts& partial() const { return partial_; }

 private:
  DemoArtifacts partial_;
};

struct DemoInfo {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, double>> params;  // overridable keys with defaults
};

const std::vector<DemoInfo>& demo_registry();
std::vector<std::string> list_demos();

/// Runs the named scenario. Throws UnknownDemo, InvalidInput for bad config or
/// unknown parameter keys, and DemoFailure for algorithm errors.
DemoArtifacts run_demo(const ScenarioConfig& cfg);

/// Writes <stem>.csv, <stem>_<table>.csv, <stem>.svg and <stem>.pgm (when
/// present) under `dir`; returns the written paths.
std::vector<std::filesystem::path> write_artifacts(const DemoArtifacts& a, const std::filesystem::path& dir,
                                                   const std::string& stem);

std::string artifact_stem(const ScenarioConfig& cfg);

}  // namespace nav

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "navsim/sim/demo.hpp"

namespace {

using nav::ErrorCode;
using json = nlohmann::json;

constexpr int kOk = 0, kUsage = 2, kAlgorithm = 3, kIo = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::UnknownDemo: return kUsage;
    case ErrorCode::IoError: return kIo;
    default: return kAlgorithm;
  }
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw nav::Error(ErrorCode::IoError, "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Fields present in `j` override those already in `cfg`.
void apply_json(const json& j, nav::ScenarioConfig& cfg, std::string* out_dir) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "demo") cfg.demo = value.get<std::string>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "dt") cfg.dt = value.get<double>();
      else if (key == "duration") cfg.duration = value.get<double>();
      else if (key == "out_dir" && out_dir) *out_dir = value.get<std::string>();
      else if (key == "params") {
        if (!value.is_object()) throw UsageError("params must be an object");
        for (const auto& [pk, pv] : value.items()) cfg.params[pk] = pv.get<double>();
      } else
        throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

std::string format_summary(const nav::DemoArtifacts& a) {
  std::string out;
  char buf[64];
  for (const auto& [k, v] : a.summary) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += "  " + k + " = " + buf + "\n";
  }
  return out;
}

// Runs one scenario and writes its files; returns the exit code and appends
// human-readable output to `log`.
int execute(const nav::ScenarioConfig& cfg, const std::string& out_dir, std::string& log) {
  const std::string stem = nav::artifact_stem(cfg);
  try {
    const nav::DemoArtifacts a = nav::run_demo(cfg);
    for (const auto& p : nav::write_artifacts(a, out_dir, stem)) log += "wrote " + p.string() + "\n";
    log += format_summary(a);
    return kOk;
  } catch (const nav::DemoFailure& f) {
    log += std::string("error: ") + f.what() + "\n";
    try {
      for (const auto& p : nav::write_artifacts(f.partial(), out_dir, stem + "_partial"))
        log += "wrote " + p.string() + "\n";
    } catch (const nav::Error& io) {
      log += std::string("error: ") + io.what() + "\n";
    }
    return kAlgorithm;
  } catch (const nav::Error& e) {
    log += std::string("error: ") + e.what() + "\n";
    return exit_code_for(e.code());
  }
}

nav::ScenarioConfig parse_param_flags(nav::ScenarioConfig cfg, const std::vector<std::string>& flags) {
  for (const std::string& kv : flags) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError("parameter '" + kv + "' is not numeric");
    cfg.params[kv.substr(0, eq)] = v;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"navsim: deterministic navigation algorithm demos"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list available demos");
  bool verbose = false;
  list->add_flag("-v,--verbose", verbose, "show descriptions and parameters");

  auto* run = app.add_subcommand("run", "run one demo and write its artifacts");
  std::string demo, config_path, out_dir = ".";
  std::uint64_t seed = 1;
  double dt = 0.1, duration = 60.0;
  std::vector<std::string> params;
  auto* demo_opt = run->add_option("--demo", demo, "demo name");
  auto* seed_opt = run->add_option("--seed", seed, "random seed");
  auto* dt_opt = run->add_option("--dt", dt, "time step in seconds");
  auto* dur_opt = run->add_option("--duration", duration, "simulated duration in seconds");
  auto* out_opt = run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--param", params, "demo parameter override key=value (repeatable)");
  run->add_option("--config", config_path, "JSON scenario file; flags override its values");

  auto* batch = app.add_subcommand("batch", "run every scenario listed in a JSON file");
  std::string batch_path, batch_out = ".";
  batch->add_option("configs", batch_path, "JSON array of scenario objects")->required();
  batch->add_option("--out-dir", batch_out, "default output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (list->parsed()) {
      for (const nav::DemoInfo& d : nav::demo_registry()) {
        std::cout << d.name;
        if (verbose) {
          std::cout << "\t" << d.description;
          for (const auto& [k, v] : d.params) std::cout << "\t" << k << "=" << v;
        }
        std::cout << "\n";
      }
      return kOk;
    }

    if (run->parsed()) {
      nav::ScenarioConfig cfg;
      std::string dir = ".";
      if (!config_path.empty()) apply_json(load_json(config_path), cfg, &dir);
      if (*demo_opt) cfg.demo = demo;
      if (*seed_opt) cfg.seed = seed;
      if (*dt_opt) cfg.dt = dt;
      if (*dur_opt) cfg.duration = duration;
      if (*out_opt) dir = out_dir;
      cfg = parse_param_flags(cfg, params);
      if (cfg.demo.empty()) throw UsageError("--demo is required (or a config with \"demo\")");
      std::string log;
      const int rc = execute(cfg, dir, log);
      (rc == kOk ? std::cout : std::cerr) << log;
      return rc;
    }

    const json doc = load_json(batch_path);
    if (!doc.is_array()) throw UsageError("batch file must contain a JSON array");
    std::vector<nav::ScenarioConfig> cfgs(doc.size());
    std::vector<std::string> dirs(doc.size(), batch_out);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      apply_json(doc[i], cfgs[i], &dirs[i]);
      if (cfgs[i].demo.empty()) throw UsageError("batch entry " + std::to_string(i) + " has no demo");
    }
    std::vector<std::string> logs(cfgs.size());
    std::vector<int> codes(cfgs.size(), kOk);
    const auto n = static_cast<long>(cfgs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) codes[i] = execute(cfgs[i], dirs[i], logs[i]);
    int worst = kOk;
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      std::cout << "[" << i << "] " << cfgs[i].demo << " seed " << cfgs[i].seed << ": "
                << (codes[i] == kOk ? "ok" : "failed") << "\n"
                << logs[i];
      worst = std::max(worst, codes[i]);
    }
    return worst;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const nav::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

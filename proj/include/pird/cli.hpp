#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pird/io.hpp"
#include "pird/spectral.hpp"

namespace pird::cli {

/// Settings shared by every verb. Populated from flags and an optional
/// flat key=value config file (flags win).
struct RunConfig {
  std::string input;        // CSV time series
  std::string model;        // model.json
  std::string scenario;     // sim1 | sim2 | sim3
  double c = 0.0;
  std::string target;       // channel name; default first channel
  std::vector<std::string> sources;  // default: every other channel
  double fs = 1.0;
  std::optional<std::size_t> order;  // forced order; otherwise AIC
  std::size_t max_order = 10;
  std::vector<Band> bands;
  std::size_t grid = kDefaultGridPoints;
  Units units = Units::nats;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  bool conditioned_te = false;
  double diag_load = 0.0;
  std::string sweep = "0:0.05:0.8";
  std::size_t length = 100000;
  std::size_t burn_in = 1000;
};

/// "LF:0.04-0.15,HF:0.15-0.4"
std::vector<Band> parse_bands(const std::string& text);

/// "lo:step:hi", inclusive of hi.
std::vector<double> parse_sweep(const std::string& text);

std::vector<std::string> split_list(const std::string& text);

/// Writes model.json and, unless the order is forced, aic.csv.
void cmd_fit(const RunConfig& cfg, std::ostream& log);

/// Writes atoms.csv, coarse.csv and profiles.csv.
void cmd_decompose(const RunConfig& cfg, std::ostream& log);

/// Writes bench_<scenario>.csv.
void cmd_bench(const RunConfig& cfg, std::ostream& log);

/// Writes a simulated scenario to <out> as CSV.
void cmd_simulate(const RunConfig& cfg, std::ostream& log);

/// Entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pird::cli

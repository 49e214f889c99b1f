#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pird/baselines.hpp"
#include "pird/decomposition.hpp"
#include "pird/spectral.hpp"
#include "pird/var_model.hpp"

namespace pird {

enum class Units { nats, bits };

Units parse_units(const std::string& text);
std::string to_string(Units u);
double convert(double nats, Units u);

/// 12 significant digits, the format of every exported value.
std::string format_number(double x);

/// CSV time series: a header row of channel names, then one row of
/// comma-separated samples per time step. Throws ErrorKind::format.
TimeSeriesMatrix parse_time_series(std::istream& in, double fs = 1.0);
TimeSeriesMatrix read_time_series(const std::filesystem::path& path, double fs = 1.0);
/// Writes with round-trip precision.
void write_time_series(std::ostream& out, const TimeSeriesMatrix& ts);

nlohmann::json model_to_json(const VarModel& m);
VarModel model_from_json(const nlohmann::json& j);
VarModel read_model(const std::filesystem::path& path);

/// Writes to a temporary sibling file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Two columns: f_hz, value.
std::string profile_csv(const SpectralProfile& profile, Units u = Units::nats);

/// Debug dump: {"fs", "hz": [...], "mats": [[re, im, re, im, ...], ...]}.
nlohmann::json psd_debug_json(const SpectralMatrix& psd);

/// One line of coarse.csv.
struct TermRow {
  std::string term;
  std::string band;
  double value_nats = 0.0;
};

/// U_<name>, R, S, Delta, JointMIR for every band; JointMIR alone for a
/// single source.
std::vector<TermRow> coarse_rows(const DecompositionResult& r,
                                 const std::vector<std::string>& source_names);
std::vector<TermRow> static_pid_rows(const StaticPidResult& r,
                                     const std::vector<std::string>& source_names);
std::vector<TermRow> te_pid_rows(const TePidResult& r,
                                 const std::vector<std::string>& source_names);

std::string coarse_csv(const std::vector<TermRow>& rows, Units u);
std::string atoms_csv(const DecompositionResult& r, Units u);
std::string profiles_csv(const DecompositionResult& r,
                         const std::vector<std::string>& source_names, Units u);

}  // namespace pird

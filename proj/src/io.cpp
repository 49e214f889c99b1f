#include "pird/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "pird/error.hpp"

namespace pird {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string value_header(const char* stem, Units u) {
  return std::string(stem) + "_" + to_string(u);
}

std::vector<double> flat_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

Eigen::MatrixXd from_row_major(const std::vector<double>& v, std::size_t q,
                               const char* what) {
  if (v.size() != q * q)
    fail(ErrorKind::format, std::string("model field ") + what + " must have dim^2 entries");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i * q + j];
  return m;
}

void push_band_terms(std::vector<TermRow>& rows, const CoarseTerms& t,
                     const std::vector<std::string>& names, const std::string& prefix) {
  for (std::size_t m = 0; m < t.unique.size(); ++m)
    rows.push_back({prefix + "U_" + names.at(m), t.band, t.unique[m]});
  rows.push_back({prefix + "R", t.band, t.redundancy});
  rows.push_back({prefix + "S", t.band, t.synergy});
  rows.push_back({prefix + "Delta", t.band, t.delta()});
  rows.push_back({prefix + "JointMIR", t.band, t.joint_mir});
}

}  // namespace

Units parse_units(const std::string& text) {
  if (text == "nats") return Units::nats;
  if (text == "bits") return Units::bits;
  fail(ErrorKind::argument, "units must be 'nats' or 'bits', got '" + text + "'");
}

std::string to_string(Units u) { return u == Units::nats ? "nats" : "bits"; }

double convert(double nats, Units u) {
  return u == Units::nats ? nats : nats / std::numbers::ln2;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

TimeSeriesMatrix parse_time_series(std::istream& in, double fs) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) header = split_commas(trim(line));
  }
  if (header.empty()) fail(ErrorKind::format, "CSV input is empty");

  double probe = 0.0;
  bool all_numeric = true;
  for (const auto& h : header) all_numeric = all_numeric && parse_double(h, probe);
  if (all_numeric) fail(ErrorKind::format, "CSV input is missing the channel-name header row");
  std::set<std::string> seen;
  for (const auto& h : header) {
    if (h.empty()) fail(ErrorKind::format, "CSV header has an empty channel name");
    if (!seen.insert(h).second)
      fail(ErrorKind::format, "CSV header repeats channel name '" + h + "'");
  }

  const std::size_t q = header.size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cells = split_commas(t);
    if (cells.size() != q)
      fail(ErrorKind::format, "line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(q));
    for (std::size_t c = 0; c < q; ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v))
        fail(ErrorKind::format, "line " + std::to_string(line_no) + ", column " +
                                    std::to_string(c + 1) + ": '" + cells[c] +
                                    "' is not a finite number");
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) fail(ErrorKind::format, "CSV input has no samples");

  TimeSeriesMatrix ts;
  ts.samples = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                              Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(q));
  ts.fs = fs;
  ts.names = header;
  return ts;
}

TimeSeriesMatrix read_time_series(const std::filesystem::path& path, double fs) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::format, "cannot open '" + path.string() + "'");
  return parse_time_series(in, fs);
}

void write_time_series(std::ostream& out, const TimeSeriesMatrix& ts) {
  for (std::size_t c = 0; c < ts.names.size(); ++c)
    out << (c ? "," : "") << ts.names[c];
  out << '\n';
  char buf[64];
  for (Eigen::Index t = 0; t < ts.samples.rows(); ++t) {
    for (Eigen::Index c = 0; c < ts.samples.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ts.samples(t, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

nlohmann::json model_to_json(const VarModel& m) {
  nlohmann::json j;
  j["dim"] = m.dim();
  j["order"] = m.order();
  j["fs"] = m.fs();
  j["names"] = m.names();
  auto coeffs = nlohmann::json::array();
  for (const auto& a : m.coeffs()) coeffs.push_back(flat_row_major(a));
  j["coeffs"] = coeffs;
  j["sigma"] = flat_row_major(m.sigma());
  return j;
}

VarModel model_from_json(const nlohmann::json& j) {
  try {
    const auto q = j.at("dim").get<std::size_t>();
    const auto p = j.at("order").get<std::size_t>();
    const auto& jc = j.at("coeffs");
    if (!jc.is_array() || jc.size() != p)
      fail(ErrorKind::format, "model field coeffs must hold 'order' matrices");
    std::vector<Eigen::MatrixXd> coeffs;
    for (const auto& a : jc) coeffs.push_back(from_row_major(a.get<std::vector<double>>(), q, "coeffs"));
    const auto sigma = from_row_major(j.at("sigma").get<std::vector<double>>(), q, "sigma");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return VarModel(std::move(coeffs), sigma, j.value("fs", 1.0), std::move(names));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::format, std::string("malformed model JSON: ") + e.what());
  }
}

VarModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::format, "cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::format, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::format, "cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) fail(ErrorKind::format, "failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string profile_csv(const SpectralProfile& profile, Units u) {
  std::ostringstream out;
  out << "f_hz,value\n";
  for (std::size_t i = 0; i < profile.values.size(); ++i)
    out << format_number(profile.grid.hz(i)) << ',' << format_number(convert(profile.values[i], u))
        << '\n';
  return out.str();
}

nlohmann::json psd_debug_json(const SpectralMatrix& psd) {
  nlohmann::json j;
  j["fs"] = psd.grid.fs();
  std::vector<double> hz;
  auto mats = nlohmann::json::array();
  for (std::size_t i = 0; i < psd.mats.size(); ++i) {
    hz.push_back(psd.grid.hz(i));
    std::vector<double> flat;
    const auto& p = psd.mats[i];
    for (Eigen::Index r = 0; r < p.rows(); ++r)
      for (Eigen::Index c = 0; c < p.cols(); ++c) {
        flat.push_back(p(r, c).real());
        flat.push_back(p(r, c).imag());
      }
    mats.push_back(flat);
  }
  j["hz"] = hz;
  j["mats"] = mats;
  return j;
}

std::vector<TermRow> coarse_rows(const DecompositionResult& r,
                                 const std::vector<std::string>& source_names) {
  std::vector<TermRow> rows;
  if (!r.coarse.empty()) {
    for (const auto& t : r.coarse) push_band_terms(rows, t, source_names, "");
    return rows;
  }
  const std::size_t top = r.spectral.lattice.top();
  rows.push_back({"JointMIR", kFullBand, r.time.joint_mir});
  for (const auto& b : r.bands) rows.push_back({"JointMIR", b.band.label, b.redundancy[top]});
  return rows;
}

std::vector<TermRow> static_pid_rows(const StaticPidResult& r,
                                     const std::vector<std::string>& source_names) {
  CoarseTerms t{kFullBand, r.unique, r.redundancy, r.synergy, r.mi_joint};
  std::vector<TermRow> rows;
  push_band_terms(rows, t, source_names, "staticPID:");
  return rows;
}

std::vector<TermRow> te_pid_rows(const TePidResult& r,
                                 const std::vector<std::string>& source_names) {
  CoarseTerms t{kFullBand, r.unique, r.redundancy, r.synergy, r.te_joint};
  std::vector<TermRow> rows;
  push_band_terms(rows, t, source_names, "tePID:");
  return rows;
}

std::string coarse_csv(const std::vector<TermRow>& rows, Units u) {
  std::ostringstream out;
  out << "term,band," << value_header("value", u) << '\n';
  for (const auto& row : rows)
    out << row.term << ',' << row.band << ',' << format_number(convert(row.value_nats, u)) << '\n';
  return out.str();
}

std::string atoms_csv(const DecompositionResult& r, Units u) {
  std::ostringstream out;
  out << "atom,band," << value_header("pi", u) << ',' << value_header("redundancy", u) << '\n';
  const auto& atoms = r.spectral.lattice.atoms();
  auto emit = [&](const std::string& band, const std::vector<double>& pi,
                  const std::vector<double>& red) {
    for (std::size_t a = 0; a < atoms.size(); ++a)
      out << atoms[a].to_string() << ',' << band << ',' << format_number(convert(pi[a], u)) << ','
          << format_number(convert(red[a], u)) << '\n';
  };
  emit(kFullBand, r.time.partial, r.time.redundancy);
  for (const auto& b : r.bands) emit(b.band.label, b.partial, b.redundancy);
  return out.str();
}

std::string profiles_csv(const DecompositionResult& r,
                         const std::vector<std::string>& source_names, Units u) {
  std::ostringstream out;
  out << "f_hz,atom_or_term,value\n";
  const auto& grid = r.spectral.grid;
  auto emit = [&](const std::string& name, const SpectralProfile& p) {
    for (std::size_t i = 0; i < p.values.size(); ++i)
      out << format_number(grid.hz(i)) << ',' << name << ',' << format_number(convert(p.values[i], u))
          << '\n';
  };
  const auto& atoms = r.spectral.lattice.atoms();
  for (std::size_t a = 0; a < atoms.size(); ++a) emit(atoms[a].to_string(), r.spectral.partial[a]);
  if (!r.coarse.empty()) {
    const auto& c = r.coarse_spectra;
    for (std::size_t m = 0; m < c.unique.size(); ++m) emit("U_" + source_names.at(m), c.unique[m]);
    emit("R", c.redundancy);
    emit("S", c.synergy);
  }
  emit("JointMIR", r.spectral.joint_mir());
  return out.str();
}

}  // namespace pird

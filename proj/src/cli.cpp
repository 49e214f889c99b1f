#include "pird/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pird/baselines.hpp"
#include "pird/decomposition.hpp"
#include "pird/error.hpp"
#include "pird/scenarios.hpp"

namespace pird::cli {
namespace {

double parse_number(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(ErrorKind::argument, context + ": '" + s + "' is not a number");
  return v;
}

std::size_t channel_index(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(ErrorKind::argument, "unknown channel '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

struct Selection {
  std::size_t target = 0;
  std::vector<std::size_t> sources;
  std::vector<std::string> source_names;
};

Selection resolve_channels(const RunConfig& cfg, const std::vector<std::string>& names) {
  Selection sel;
  sel.target = cfg.target.empty() ? 0 : channel_index(names, cfg.target);
  if (cfg.sources.empty()) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (i != sel.target) sel.sources.push_back(i);
  } else {
    for (const auto& s : cfg.sources) sel.sources.push_back(channel_index(names, s));
  }
  if (std::find(sel.sources.begin(), sel.sources.end(), sel.target) != sel.sources.end())
    fail(ErrorKind::argument, "target '" + names[sel.target] + "' is also listed as a source");
  if (sel.sources.empty()) fail(ErrorKind::argument, "no source channels");
  for (std::size_t s : sel.sources) sel.source_names.push_back(names[s]);
  return sel;
}

VarModel fit_series(const TimeSeriesMatrix& ts, const RunConfig& cfg,
                    std::optional<OrderSelection>& selection) {
  std::size_t p = 0;
  if (cfg.order) {
    p = *cfg.order;
  } else {
    selection = select_order_aic(ts, cfg.max_order);
    p = selection->order;
  }
  return fit_ols(ts, p);
}

VarModel load_model(const RunConfig& cfg, std::ostream& log) {
  const int given = !cfg.input.empty() + !cfg.model.empty() + !cfg.scenario.empty();
  if (given != 1)
    fail(ErrorKind::argument, "exactly one of --input, --model, --scenario is required");
  if (!cfg.scenario.empty()) {
    const auto id = parse_scenario_id(cfg.scenario);
    return build_scenario(id == ScenarioId::sim3 ? make_sim3()
                                                 : Scenario{id, {{"c", cfg.c}}});
  }
  if (!cfg.model.empty()) return read_model(cfg.model);
  const auto ts = read_time_series(cfg.input, cfg.fs);
  std::optional<OrderSelection> selection;
  auto m = fit_series(ts, cfg, selection);
  log << "fitted VAR(" << m.order() << ") on " << ts.length() << " samples\n";
  return m;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::format, "cannot create output directory '" + dir.string() + "'");
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out + "\n";
}

// I, U_<name>..., R, S for a set of coarse values.
void append_values(std::vector<std::string>& row, double joint, const std::vector<double>& unique,
                   double r, double s, Units u) {
  row.push_back(format_number(convert(joint, u)));
  for (double x : unique) row.push_back(format_number(convert(x, u)));
  row.push_back(format_number(convert(r, u)));
  row.push_back(format_number(convert(s, u)));
}

void append_headers(std::vector<std::string>& row, const std::string& prefix,
                    const std::vector<std::string>& names) {
  row.push_back(prefix + "I");
  for (const auto& n : names) row.push_back(prefix + "U_" + n);
  row.push_back(prefix + "R");
  row.push_back(prefix + "S");
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Band> parse_bands(const std::string& text) {
  std::vector<Band> bands;
  for (const auto& item : split_list(text)) {
    const auto colon = item.find(':');
    const auto dash = item.find('-', colon == std::string::npos ? 0 : colon + 1);
    if (colon == std::string::npos || dash == std::string::npos || colon == 0)
      fail(ErrorKind::argument, "band '" + item + "' must look like LABEL:lo-hi");
    Band b;
    b.label = item.substr(0, colon);
    b.lo = parse_number(item.substr(colon + 1, dash - colon - 1), "band " + b.label);
    b.hi = parse_number(item.substr(dash + 1), "band " + b.label);
    if (b.label == "FULL") fail(ErrorKind::argument, "band label FULL is reserved");
    bands.push_back(b);
  }
  return bands;
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string p;
  while (std::getline(in, p, ':')) parts.push_back(p);
  if (parts.size() != 3) fail(ErrorKind::argument, "sweep must look like lo:step:hi");
  const double lo = parse_number(parts[0], "sweep");
  const double step = parse_number(parts[1], "sweep");
  const double hi = parse_number(parts[2], "sweep");
  if (!(step > 0.0) || hi < lo) fail(ErrorKind::argument, "sweep needs step > 0 and hi >= lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::min(hi, lo + static_cast<double>(k) * step));
  return out;
}

void cmd_fit(const RunConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) fail(ErrorKind::argument, "fit requires --input");
  const auto ts = read_time_series(cfg.input, cfg.fs);
  std::optional<OrderSelection> selection;
  const auto model = fit_series(ts, cfg, selection);
  const double radius = spectral_radius(model);
  if (!is_stable(model))
    fail(ErrorKind::numerical, "fitted model is unstable (spectral radius " +
                                   format_number(radius) + ")");
  ensure_dir(cfg.out);
  write_file_atomic(cfg.out / "model.json", model_to_json(model).dump(2) + "\n");
  if (selection) {
    std::string csv = "order,aic\n";
    for (std::size_t p = 1; p <= selection->aic.size(); ++p)
      csv += std::to_string(p) + "," + format_number(selection->aic[p - 1]) + "\n";
    write_file_atomic(cfg.out / "aic.csv", csv);
  }
  log << "selected order: " << model.order() << "\n";
  log << "stability margin: " << format_number(1.0 - radius) << "\n";
}

void cmd_decompose(const RunConfig& cfg, std::ostream& log) {
  const auto model = load_model(cfg, log);
  const auto sel = resolve_channels(cfg, model.names());
  for (const auto& b : cfg.bands) validate_band(b, model.fs());

  auto psd = psd_from_var(model, FrequencyGrid(model.fs(), cfg.grid));
  apply_diagonal_loading(psd, cfg.diag_load);
  const auto result = decompose(psd, sel.target, sel.sources, cfg.bands);

  auto rows = coarse_rows(result, sel.source_names);
  if (sel.sources.size() >= 2) {
    const auto st = static_pid_rows(static_pid(model, sel.target, sel.sources), sel.source_names);
    const auto te = te_pid_rows(
        te_pid(model, sel.target, sel.sources, 0,
               cfg.conditioned_te ? MarginalTe::conditioned : MarginalTe::bivariate),
        sel.source_names);
    rows.insert(rows.end(), st.begin(), st.end());
    rows.insert(rows.end(), te.begin(), te.end());
  }

  ensure_dir(cfg.out);
  write_file_atomic(cfg.out / "atoms.csv", atoms_csv(result, cfg.units));
  write_file_atomic(cfg.out / "coarse.csv", coarse_csv(rows, cfg.units));
  write_file_atomic(cfg.out / "profiles.csv", profiles_csv(result, sel.source_names, cfg.units));
  log << "target " << model.names()[sel.target] << ", " << sel.sources.size()
      << " sources, " << result.spectral.lattice.size() << " atoms\n";
  log << "joint MIR: " << format_number(convert(result.time.joint_mir, cfg.units)) << " "
      << to_string(cfg.units) << "\n";
}

void cmd_bench(const RunConfig& cfg, std::ostream& log) {
  if (cfg.scenario.empty()) fail(ErrorKind::argument, "bench requires --scenario");
  const auto id = parse_scenario_id(cfg.scenario);
  const FrequencyGrid grid(1.0, cfg.grid);
  const Units u = cfg.units;
  std::string csv;

  if (id == ScenarioId::sim3) {
    const auto model = build_scenario(make_sim3());
    const std::vector<std::size_t> sources{1, 2, 3};
    const std::vector<std::string> names{"X1", "X2", "X3"};
    auto bands = cfg.bands;
    if (bands.empty()) bands = {{0.04, 0.15, "B1"}, {0.15, 0.4, "B2"}};
    const auto psd = psd_from_var(model, grid);
    const auto profiles = coarse_profiles(psd, 0, sources);
    const auto terms = integrate_coarse(profiles, bands);
    std::vector<SpectralProfile> single_mir;
    for (std::size_t s : sources) single_mir.push_back(spectral_mir(psd, 0, {s}));

    std::vector<std::string> header{"band"};
    for (const auto& n : names) header.push_back("MIR_" + n);
    for (const auto& n : names) header.push_back("U_" + n);
    for (const char* h : {"R", "S", "Delta", "JointMIR"}) header.push_back(h);
    csv += join_row(header);
    for (std::size_t b = 0; b < terms.size(); ++b) {
      const auto& t = terms[b];
      std::vector<std::string> row{t.band};
      for (const auto& mir : single_mir) {
        const double v = b == 0 ? integrate_full(mir) : integrate_band(mir, bands[b - 1]);
        row.push_back(format_number(convert(v, u)));
      }
      for (double x : t.unique) row.push_back(format_number(convert(x, u)));
      row.push_back(format_number(convert(t.redundancy, u)));
      row.push_back(format_number(convert(t.synergy, u)));
      row.push_back(format_number(convert(t.delta(), u)));
      row.push_back(format_number(convert(t.joint_mir, u)));
      csv += join_row(row);
    }
  } else {
    const std::vector<std::size_t> sources{1, 2};
    const std::vector<std::string> names{"X1", "X2"};
    const std::string base = id == ScenarioId::sim1 ? "pid_" : "tepid_";
    std::vector<std::string> header{"c"};
    append_headers(header, "pird_", names);
    append_headers(header, base, names);
    csv += join_row(header);
    for (double c : parse_sweep(cfg.sweep)) {
      const auto model = build_scenario({id, {{"c", c}}});
      const auto full = coarse_grained(psd_from_var(model, grid), 0, sources, {}).front();
      std::vector<std::string> row{format_number(c)};
      append_values(row, full.joint_mir, full.unique, full.redundancy, full.synergy, u);
      if (id == ScenarioId::sim1) {
        const auto pid = static_pid(model, 0, sources);
        append_values(row, pid.mi_joint, pid.unique, pid.redundancy, pid.synergy, u);
      } else {
        const auto te = te_pid(model, 0, sources, 0,
                               cfg.conditioned_te ? MarginalTe::conditioned : MarginalTe::bivariate);
        append_values(row, te.te_joint, te.unique, te.redundancy, te.synergy, u);
      }
      csv += join_row(row);
    }
  }
  ensure_dir(cfg.out);
  const auto path = cfg.out / ("bench_" + to_string(id) + ".csv");
  write_file_atomic(path, csv);
  log << "wrote " << path.string() << "\n";
}

void cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  VarModel model;
  if (!cfg.model.empty()) {
    model = read_model(cfg.model);
  } else {
    if (cfg.scenario.empty()) fail(ErrorKind::argument, "simulate requires --scenario or --model");
    const auto id = parse_scenario_id(cfg.scenario);
    model = build_scenario(id == ScenarioId::sim3 ? make_sim3() : Scenario{id, {{"c", cfg.c}}});
  }
  const auto ts = simulate(model, cfg.length, cfg.burn_in, cfg.seed);
  std::ostringstream csv;
  write_time_series(csv, ts);
  if (cfg.out.has_parent_path()) ensure_dir(cfg.out.parent_path());
  write_file_atomic(cfg.out, csv.str());
  log << "wrote " << ts.length() << " samples to " << cfg.out.string() << "\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial information rate decomposition for VAR processes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file; flags override it");

  RunConfig cfg;
  std::string sources, bands, units = "nats", out_dir = ".";
  std::size_t order = 0;
  app.add_option("--input", cfg.input, "CSV time series (header row of channel names)");
  app.add_option("--model", cfg.model, "VAR model JSON");
  app.add_option("--scenario", cfg.scenario, "Benchmark system: sim1, sim2, sim3");
  app.add_option("--c", cfg.c, "Coupling parameter for sim1/sim2");
  app.add_option("--target", cfg.target, "Target channel name");
  // Config files hand comma lists over as several values; join them back.
  app.add_option("--sources", sources, "Comma-separated source channel names")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--fs", cfg.fs, "Sampling frequency in Hz");
  auto* order_opt = app.add_option("--order", order, "Force the VAR order");
  app.add_option("--max-order", cfg.max_order, "Largest order tried by AIC");
  app.add_option("--grid", cfg.grid, "Frequency grid points on [0, fs/2]");
  app.add_option("--bands", bands, "Bands, e.g. LF:0.04-0.15,HF:0.15-0.4")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--units", units, "nats or bits");
  app.add_option("--out", out_dir, "Output directory (simulate: output file)");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_flag("--conditioned-te", cfg.conditioned_te,
               "Condition marginal TEs on the other sources");
  app.add_option("--diag-load", cfg.diag_load, "Diagonal loading of the PSD (fraction of trace/Q)");
  app.add_option("--sweep", cfg.sweep, "Coupling sweep lo:step:hi");
  app.add_option("--length", cfg.length, "Simulated samples");
  app.add_option("--burn-in", cfg.burn_in, "Discarded warm-up samples");

  auto* fit = app.add_subcommand("fit", "Fit a VAR model with AIC order selection");
  auto* dec = app.add_subcommand("decompose", "Run the partial information rate decomposition");
  auto* bench = app.add_subcommand("bench", "Reproduce the benchmark sweeps");
  auto* sim = app.add_subcommand("simulate", "Simulate a scenario or model to CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::argument);
  }

  try {
    cfg.sources = split_list(sources);
    cfg.bands = parse_bands(bands);
    cfg.units = parse_units(units);
    cfg.out = out_dir;
    if (order_opt->count() > 0) cfg.order = order;
    if (*fit) cmd_fit(cfg, out);
    else if (*dec) cmd_decompose(cfg, out);
    else if (*bench) cmd_bench(cfg, out);
    else if (*sim) cmd_simulate(cfg, out);
  } catch (const Error& e) {
    err << "pird: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "pird: format error: " << e.what() << "\n";
    return exit_code(ErrorKind::format);
  } catch (const std::exception& e) {
    err << "pird: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pird::cli

// Copyright 2026 The gqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Command implementations behind the `gqd` executable. Kept in a header so
// the test suite can drive them in-process.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gqd/gqd.hpp"
#include "gqd/io.hpp"

namespace gqd::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalError = 3 };

/// Flags shared by the commands; which ones matter depends on the command.
struct RunConfig {
  std::string command;
  std::string file;
  std::string family;
  std::vector<double> params;
  std::optional<std::int64_t> shots;
  int repeats = 20;
  std::optional<std::uint64_t> seed;
  std::string side = "A";
  std::string output;
  std::string format;
  // layouts
  std::string name;
  // sweep
  int index = 0;
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
  // audit
  int trials = 200;

  Side which() const { return side == "B" ? Side::B : Side::A; }
  bool sampling() const { return shots.has_value(); }

  /// Exactly one state source; a seed whenever sampling is requested.
  void validate(bool needs_state) const {
    if (needs_state) {
      const bool f = !file.empty();
      const bool fam = !family.empty();
      if (f == fam) throw InvalidInput("give exactly one state source: --file or --family");
      if (f && !params.empty()) throw InvalidInput("--params only applies to --family");
    }
    if (sampling() && !seed) throw InvalidInput("--seed is required when sampling (--shots)");
    if (shots && *shots < 1) throw InvalidInput("--shots must be >= 1");
  }

  TwoQubitState state() const {
    if (!file.empty()) return io::read_state_file(file);
    return make_family(family, params);
  }
};

namespace detail {

/// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string dump(const nlohmann::json &j) { return j.dump(2) + "\n"; }

inline nlohmann::json matrix_json(const Matrix3 &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

inline std::string estimate_csv(const GqdEstimate &e) {
  std::ostringstream os;
  os << "route,side,value,std_err,lambda1,lambda2,lambda3,M1,M2,M3\n";
  os << to_string(e.route) << ',' << to_string(e.which) << ',' << num(std::max(e.value, 0.0)) << ','
     << num(e.std_err) << ',' << num(e.eigenvalues[0]) << ',' << num(e.eigenvalues[1]) << ','
     << num(e.eigenvalues[2]) << ',' << num(e.moments.m1) << ',' << num(e.moments.m2) << ','
     << num(e.moments.m3) << '\n';
  return os.str();
}

}  // namespace detail

/// Bloch form, K (or K') and its spectrum, and the closed-form discord.
inline std::string cmd_exact(const RunConfig &cfg) {
  cfg.validate(true);
  const TwoQubitState s = cfg.state();
  const BlochForm b = decompose(s);
  const KMatrix k = k_matrix(b, cfg.which());
  const GqdEstimate e = bloch_exact_estimate(s, cfg.which());
  if (cfg.format == "csv") return detail::estimate_csv(e);
  nlohmann::json j{{"side", to_string(cfg.which())},
                   {"bloch", io::bloch_to_json(b)},
                   {"k_matrix", detail::matrix_json(k.entries)},
                   {"estimate", io::estimate_to_json(e)}};
  return detail::dump(j);
}

/// Measurement-scheme estimate, exact or sampled.
inline std::string cmd_scheme(const RunConfig &cfg) {
  cfg.validate(true);
  const TwoQubitState s = cfg.state();
  SchemeOptions opt;
  opt.which = cfg.which();
  if (cfg.sampling()) {
    opt.sampled = true;
    opt.shots = *cfg.shots;
    opt.repeats = cfg.repeats;
    opt.seed = *cfg.seed;
  }
  const GqdEstimate e = estimate_gqd(s, opt);
  if (cfg.format == "csv") return detail::estimate_csv(e);
  return detail::dump(io::estimate_to_json(e));
}

inline const char *kSweepHeader = "param,D_exact,D_scheme_exact,D_sampled_mean,D_sampled_stderr";

/// One row per grid point of family parameter `index`. Sampled columns are
/// filled only when --shots is given and left empty otherwise.
inline std::string cmd_sweep(const RunConfig &cfg) {
  cfg.validate(false);
  if (cfg.family.empty()) throw InvalidInput("sweep needs --family");
  if (!cfg.file.empty()) throw InvalidInput("sweep takes --family, not --file");
  if (!(cfg.step > 0.0) || cfg.to < cfg.from || !std::isfinite(cfg.from) || !std::isfinite(cfg.to))
    throw InvalidInput("sweep: empty grid (need --step > 0 and --to >= --from)");
  std::vector<double> base = cfg.params;
  if (base.empty()) base.push_back(0.0);
  if (cfg.index < 0 || static_cast<std::size_t>(cfg.index) >= base.size())
    throw InvalidInput("sweep: --index outside the parameter list");
  const auto points = static_cast<long>(std::floor((cfg.to - cfg.from) / cfg.step + 1e-9)) + 1;

  struct Row {
    double param, exact, scheme, mean, stderr_;
  };
  std::vector<Row> rows;
  for (long k = 0; k < points; ++k) {
    std::vector<double> p = base;
    p[static_cast<std::size_t>(cfg.index)] = cfg.from + static_cast<double>(k) * cfg.step;
    const TwoQubitState s = make_family(cfg.family, p);
    Row r{p[static_cast<std::size_t>(cfg.index)], gqd_exact(s, cfg.which()).value,
          estimate_gqd(s, {.which = cfg.which()}).value, NAN, NAN};
    if (cfg.sampling()) {
      SchemeOptions opt{.which = cfg.which(), .sampled = true, .shots = *cfg.shots, .repeats = cfg.repeats,
                        .seed = substream_seed(*cfg.seed, static_cast<std::uint64_t>(k))};
      const GqdEstimate e = estimate_gqd(s, opt);
      r.mean = e.value;
      r.stderr_ = e.std_err;
    }
    rows.push_back(r);
  }

  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row &r : rows) {
      nlohmann::json o{{"param", r.param}, {"D_exact", r.exact}, {"D_scheme_exact", r.scheme}};
      o["D_sampled_mean"] = std::isnan(r.mean) ? nlohmann::json(nullptr) : nlohmann::json(r.mean);
      o["D_sampled_stderr"] = std::isnan(r.stderr_) ? nlohmann::json(nullptr) : nlohmann::json(r.stderr_);
      arr.push_back(o);
    }
    return detail::dump(arr);
  }
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const Row &r : rows) {
    os << detail::num(r.param) << ',' << detail::num(r.exact) << ',' << detail::num(r.scheme) << ',';
    if (!std::isnan(r.mean)) os << detail::num(r.mean);
    os << ',';
    if (!std::isnan(r.stderr_)) os << detail::num(r.stderr_);
    os << '\n';
  }
  return os.str();
}

/// Diagrams of all eleven layouts, or the one named by --name.
inline std::string cmd_layouts(const RunConfig &cfg) {
  std::vector<PairingLayout> chosen;
  if (cfg.name.empty()) {
    chosen = standard_layouts();
  } else {
    auto l = find_layout(cfg.name);
    if (!l) throw InvalidInput("unknown layout '" + cfg.name + "' (expected P1..P11)");
    chosen.push_back(*l);
  }
  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &l : chosen) arr.push_back(io::layout_to_json(l));
    return detail::dump(cfg.name.empty() ? arr : arr.front());
  }
  std::string out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (i) out += '\n';
    out += render_layout(chosen[i]);
  }
  return out;
}

/// Scheme (sampled) against tomography at an equal total number of
/// measurement rounds: the scheme runs `shots` rounds in each of its 3
/// settings, tomography spreads the same 3*shots rounds over its 9 settings.
inline std::string cmd_compare(const RunConfig &cfg) {
  RunConfig c = cfg;
  if (!c.shots) c.shots = 1'000'000;
  c.validate(true);
  if (!c.seed) throw InvalidInput("--seed is required for compare");
  const TwoQubitState s = c.state();
  const double exact = gqd_exact(s, c.which()).value;
  const std::int64_t total = 3 * *c.shots;
  const std::int64_t qst_shots = std::max<std::int64_t>(1, total / 9);

  const GqdEstimate scheme = estimate_gqd(
      s, {.which = c.which(), .sampled = true, .shots = *c.shots, .repeats = c.repeats, .seed = substream_seed(*c.seed, 1)});
  const GqdEstimate qst = qst_estimate_repeated(s, qst_shots, c.repeats, substream_seed(*c.seed, 2), c.which());
  const ResourceReport rep = resource_report();

  if (c.format == "text") {
    std::ostringstream os;
    os << std::left << std::setw(14) << "method" << std::right << std::setw(24) << "estimate" << std::setw(24)
       << "std_err" << std::setw(24) << "error" << '\n';
    auto line = [&](const char *name, double v, double se) {
      os << std::left << std::setw(14) << name << std::right << std::setw(24) << detail::num(v) << std::setw(24)
         << detail::num(se) << std::setw(24) << detail::num(v - exact) << '\n';
    };
    line("exact", exact, 0.0);
    line("scheme", scheme.value, scheme.std_err);
    line("tomography", qst.value, qst.std_err);
    os << '\n' << format_resource_table(rep);
    return os.str();
  }
  nlohmann::json j{{"side", to_string(c.which())},
                   {"exact", exact},
                   {"shots_per_setting_scheme", *c.shots},
                   {"shots_per_setting_qst", qst_shots},
                   {"repeats", c.repeats},
                   {"scheme", io::estimate_to_json(scheme)},
                   {"qst", io::estimate_to_json(qst)},
                   {"scheme_error", scheme.value - exact},
                   {"qst_error", qst.value - exact},
                   {"resources", io::report_to_json(rep)}};
  return detail::dump(j);
}

/// Audit of the published outcome-to-moment coefficients.
inline std::string cmd_audit(const RunConfig &cfg) {
  const MomentAudit a = verify_moment_formulas(cfg.trials, cfg.seed.value_or(1));
  return detail::dump(io::audit_to_json(a));
}

inline std::string cmd_resources(const RunConfig &cfg) {
  const ResourceReport r = resource_report();
  if (cfg.format == "text") return format_resource_table(r);
  return detail::dump(io::report_to_json(r));
}

/// Parses `args` (without the program name), runs the command and writes
/// its output to `out` (or --output). Returns the process exit code.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Geometric quantum discord of two-qubit states: closed form, multi-copy "
               "measurement scheme, and tomography baseline"};
  app.name("gqd");
  app.require_subcommand(1);
  RunConfig cfg;

  auto state_opts = [&](CLI::App *sub) {
    sub->add_option("--file", cfg.file, "state file (JSON)");
    sub->add_option("--family", cfg.family, "state family: werner, bell_diagonal, pure, product, classical_AB");
    sub->add_option("--params", cfg.params, "family parameters");
    sub->add_option("--side", cfg.side, "A: measure subsystem a (K); B: subsystem b (K')")
        ->check(CLI::IsMember({"A", "B"}));
  };
  auto sample_opts = [&](CLI::App *sub) {
    sub->add_option("--shots", cfg.shots, "rounds per measurement setting");
    sub->add_option("--repeats", cfg.repeats, "independent repetitions")->check(CLI::Range(2, 1000000));
    sub->add_option("--seed", cfg.seed, "random seed");
  };
  auto common = [&](CLI::App *sub, std::vector<std::string> formats) {
    sub->add_option("--output,-o", cfg.output, "write to file instead of stdout");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
  };

  auto *exact = app.add_subcommand("exact", "closed-form discord from the Bloch form");
  state_opts(exact);
  common(exact, {"json", "csv"});
  auto *scheme = app.add_subcommand("scheme", "multi-copy measurement scheme (exact or sampled)");
  state_opts(scheme);
  sample_opts(scheme);
  common(scheme, {"json", "csv"});
  auto *sweep = app.add_subcommand("sweep", "sweep one family parameter over a grid");
  state_opts(sweep);
  sample_opts(sweep);
  common(sweep, {"csv", "json"});
  sweep->add_option("--index", cfg.index, "which parameter to sweep (0-based)");
  sweep->add_option("--from", cfg.from, "grid start");
  sweep->add_option("--to", cfg.to, "grid end (inclusive)");
  sweep->add_option("--step", cfg.step, "grid step");
  auto *layouts = app.add_subcommand("layouts", "render the projector layouts P1..P11");
  layouts->add_option("--name", cfg.name, "single layout label, e.g. P11");
  common(layouts, {"text", "json"});
  auto *compare = app.add_subcommand("compare", "scheme vs tomography at equal shot budget");
  state_opts(compare);
  sample_opts(compare);
  common(compare, {"json", "text"});
  auto *audit = app.add_subcommand("audit", "check the outcome-to-moment coefficients");
  audit->add_option("--trials", cfg.trials, "random states")->check(CLI::Range(30, 1000000));
  audit->add_option("--seed", cfg.seed, "random seed");
  common(audit, {"json"});
  auto *resources = app.add_subcommand("resources", "resource comparison with tomography");
  common(resources, {"json", "text"});

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    std::string text;
    if (exact->parsed())
      text = cmd_exact(cfg);
    else if (scheme->parsed())
      text = cmd_scheme(cfg);
    else if (sweep->parsed())
      text = cmd_sweep(cfg);
    else if (layouts->parsed())
      text = cmd_layouts(cfg);
    else if (compare->parsed())
      text = cmd_compare(cfg);
    else if (audit->parsed())
      text = cmd_audit(cfg);
    else if (resources->parsed())
      text = cmd_resources(cfg);

    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw InvalidInput("cannot write '" + cfg.output + "'");
      f << text;
    }
    return kOk;
  } catch (const InvalidState &e) {
    err << "error: invalid state, " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalContractError &e) {
    err << "internal error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace gqd::cli

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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gqd/estimator.hpp"
#include "gqd/moment_audit.hpp"
#include "gqd/pairing.hpp"
#include "gqd/qst_baseline.hpp"
#include "gqd/statekit.hpp"

namespace gqd::io {

using nlohmann::json;

namespace detail {

inline void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &what) {
  if (!j.is_object()) throw InvalidInput(what + ": expected a JSON object");
  for (const auto &[key, _] : j.items())
    if (!allowed.count(key)) throw InvalidInput(what + ": unknown field '" + key + "'");
}

}  // namespace detail

// ---- state file -----------------------------------------------------------
//   {"matrix": [[[re, im] x4] x4]}   or   {"family": "...", "params": [...]}

inline json state_to_json(const TwoQubitState &s) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back({s(r, c).real(), s(r, c).imag()});
    rows.push_back(row);
  }
  return json{{"matrix", rows}};
}

inline TwoQubitState state_from_json(const json &j) {
  detail::reject_unknown(j, {"matrix", "family", "params"}, "state file");
  const bool has_matrix = j.contains("matrix");
  const bool has_family = j.contains("family") || j.contains("params");
  if (has_matrix == has_family)
    throw InvalidInput("state file: give exactly one of \"matrix\" or \"family\"/\"params\"");
  if (has_family) {
    if (!j.contains("family") || !j.at("family").is_string())
      throw InvalidInput("state file: \"family\" must be a string");
    std::vector<double> params;
    if (j.contains("params")) {
      if (!j.at("params").is_array()) throw InvalidInput("state file: \"params\" must be an array");
      for (const auto &v : j.at("params")) {
        if (!v.is_number()) throw InvalidInput("state file: \"params\" must hold numbers");
        params.push_back(v.get<double>());
      }
    }
    return make_family(j.at("family").get<std::string>(), params);
  }
  const json &m = j.at("matrix");
  if (!m.is_array() || m.size() != 4) throw InvalidInput("state file: \"matrix\" must have 4 rows");
  Matrix4c rho;
  for (int r = 0; r < 4; ++r) {
    const json &row = m[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 4) throw InvalidInput("state file: each row must have 4 entries");
    for (int c = 0; c < 4; ++c) {
      const json &e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInput("state file: entries must be [re, im] number pairs");
      rho(r, c) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return TwoQubitState(rho);
}

inline TwoQubitState read_state_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw InvalidInput("state file is not valid JSON: " + std::string(e.what()));
  }
  return state_from_json(j);
}

// ---- layouts --------------------------------------------------------------
//   {"n_copies": n, "pairs": [{"side": "a", "copies": [m, n], "kind": "singlet"}, ...]}

inline json layout_to_json(const PairingLayout &l) {
  json pairs = json::array();
  for (const auto &p : l.pairs())
    pairs.push_back({{"side", std::string(1, side_letter(p.side))},
                     {"copies", {p.copies[0], p.copies[1]}},
                     {"kind", to_string(p.kind)}});
  return json{{"n_copies", l.n_copies()}, {"pairs", pairs}};
}

inline PairingLayout layout_from_json(const json &j) try {
  detail::reject_unknown(j, {"n_copies", "pairs"}, "layout");
  if (!j.contains("n_copies") || !j.contains("pairs")) throw InvalidInput("layout: missing field");
  std::vector<PairOp> pairs;
  for (const auto &pj : j.at("pairs")) {
    detail::reject_unknown(pj, {"side", "copies", "kind"}, "layout pair");
    PairOp p;
    const std::string side = pj.at("side").get<std::string>();
    if (side != "a" && side != "b") throw InvalidInput("layout pair: side must be \"a\" or \"b\"");
    p.side = side == "a" ? Side::A : Side::B;
    const auto copies = pj.at("copies").get<std::vector<int>>();
    if (copies.size() != 2) throw InvalidInput("layout pair: copies must have two entries");
    p.copies = {copies[0], copies[1]};
    const std::string kind = pj.at("kind").get<std::string>();
    if (kind == "singlet")
      p.kind = PairKind::Singlet;
    else if (kind == "identity")
      p.kind = PairKind::Identity;
    else if (kind == "complement")
      p.kind = PairKind::Complement;
    else
      throw InvalidInput("layout pair: unknown kind '" + kind + "'");
    pairs.push_back(p);
  }
  return PairingLayout(j.at("n_copies").get<int>(), std::move(pairs));
} catch (const json::exception &e) {
  throw InvalidInput(std::string("layout: ") + e.what());
}

// ---- estimates ------------------------------------------------------------
//   {"route", "value", "std_err", "eigenvalues", "outcomes": {"c1"...}, "moments": {"M1"...}}

inline json estimate_to_json(const GqdEstimate &e) {
  json outcomes = json::object();
  if (e.route == Route::SchemeExact || e.route == Route::SchemeSampled)
    for (int i = 1; i <= 11; ++i) outcomes["c" + std::to_string(i)] = e.outcomes(i);
  return json{{"route", to_string(e.route)},
              {"value", std::max(e.value, 0.0)},
              {"std_err", e.std_err},
              {"eigenvalues", {e.eigenvalues[0], e.eigenvalues[1], e.eigenvalues[2]}},
              {"outcomes", outcomes},
              {"moments", {{"M1", e.moments.m1}, {"M2", e.moments.m2}, {"M3", e.moments.m3}}}};
}

inline GqdEstimate estimate_from_json(const json &j) try {
  detail::reject_unknown(j, {"route", "value", "std_err", "eigenvalues", "outcomes", "moments"}, "estimate");
  GqdEstimate e;
  const std::string route = j.at("route").get<std::string>();
  bool known = false;
  for (Route r : {Route::BlochExact, Route::SchemeExact, Route::SchemeSampled, Route::QstExact, Route::QstSampled})
    if (route == to_string(r)) {
      e.route = r;
      known = true;
    }
  if (!known) throw InvalidInput("estimate: unknown route '" + route + "'");
  e.value = j.at("value").get<double>();
  e.std_err = j.at("std_err").get<double>();
  const auto ev = j.at("eigenvalues").get<std::vector<double>>();
  if (ev.size() != 3) throw InvalidInput("estimate: need three eigenvalues");
  e.eigenvalues = {ev[0], ev[1], ev[2]};
  for (const auto &[key, v] : j.at("outcomes").items()) {
    int idx = 0;
    for (int i = 1; i <= 11; ++i)
      if (key == "c" + std::to_string(i)) idx = i;
    if (idx == 0) throw InvalidInput("estimate: bad outcome key '" + key + "'");
    e.outcomes(idx) = v.get<double>();
  }
  const json &m = j.at("moments");
  e.moments = {m.at("M1").get<double>(), m.at("M2").get<double>(), m.at("M3").get<double>()};
  return e;
} catch (const json::exception &e) {
  throw InvalidInput(std::string("estimate: ") + e.what());
}

inline json bloch_to_json(const BlochForm &b) {
  json t = json::array();
  for (int i = 0; i < 3; ++i) t.push_back({b.t(i, 0), b.t(i, 1), b.t(i, 2)});
  return json{{"x", {b.x(0), b.x(1), b.x(2)}}, {"y", {b.y(0), b.y(1), b.y(2)}}, {"T", t}};
}

inline json report_to_json(const ResourceReport &r) {
  return json{{"r_p_scheme", r.r_p_scheme},
              {"r_p_qst", r.r_p_qst},
              {"r_c_scheme", r.r_c_scheme},
              {"r_c_qst", r.r_c_qst},
              {"r_scheme", r.r_scheme},
              {"r_qst", r.r_qst},
              {"projector_count_scheme", r.projector_count_scheme},
              {"settings_scheme", r.settings_scheme},
              {"settings_qst", r.settings_qst},
              {"independent_tallies",
               {{"copies_summed_over_measurements", r.copies_per_round_by_measurement},
                {"copies_summed_over_settings", r.copies_per_round_by_setting},
                {"note", "computed from the layouts; the published r_c_scheme is reported as given"}}}};
}

inline json table_to_json(const MomentTable &t) {
  json out = json::object();
  for (std::size_t k = 0; k < 3; ++k) {
    json terms = json::object();
    for (const auto &[m, c] : t[k].terms) terms[to_string(m)] = c;
    out["M" + std::to_string(k + 1)] = terms;
  }
  return out;
}

inline json audit_to_json(const MomentAudit &a) {
  json diff = json::array();
  for (const auto &d : a.diff)
    diff.push_back({{"moment", "M" + std::to_string(d.k)},
                    {"monomial", to_string(d.monomial)},
                    {"printed", d.printed},
                    {"derived", d.derived}});
  json j{{"trials", a.trials},
         {"seed", a.seed},
         {"tolerance", kMomentAuditTolerance},
         {"printed_max_deviation", a.printed_max_deviation},
         {"printed_ok", a.printed_ok},
         {"corrected", a.corrected},
         {"passed", a.passed()},
         {"diff", diff}};
  if (a.corrected) {
    j["corrected_table"] = table_to_json(a.derived);
    j["derived_max_deviation"] = a.derived_max_deviation;
    j["fresh_states"] = a.fresh_states;
    j["fit"] = {{"max_coefficient_error", a.fit_max_coefficient_error},
                {"rank", a.fit_rank},
                {"basis_size", a.fit_basis_size}};
  }
  return j;
}

}  // namespace gqd::io

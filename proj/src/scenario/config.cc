// Copyright 2026 The ibnptt Authors
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

#include "ibnptt/scenario/config.h"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ibnptt/common/error.h"

namespace ibnptt::scenario {

namespace pt = boost::property_tree;
using netsim::Position;

void Timeline::Validate() const {
  if (!(a < b && b < c && c < e)) {
    throw Error(ErrorCode::kInvariantViolation,
                "timeline must satisfy A < B < C < E (got " + FormatMillis(a) +
                    ", " + FormatMillis(b) + ", " + FormatMillis(c) + ", " +
                    FormatMillis(e) + " ms)");
  }
  if (a < Micros(0)) {
    throw Error(ErrorCode::kInvariantViolation, "instant A is negative");
  }
}

Micros Timeline::Resolve(std::string_view instant) const {
  if (instant == "A") return a;
  if (instant == "B") return b;
  if (instant == "C") return c;
  if (instant == "E") return e;
  return ParseMillis(instant);
}

const TeamConfig& ScenarioConfig::team(int id) const {
  for (const TeamConfig& t : teams) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::kInvariantViolation,
              "no team " + std::to_string(id) + " configured");
}

void ScenarioConfig::Validate() const {
  timeline.Validate();
  radio.Validate();
  ptt.Validate();
  if (teams.empty()) {
    throw Error(ErrorCode::kInvariantViolation, "at least one team required");
  }
  std::set<int> ids;
  for (const TeamConfig& t : teams) {
    const std::string name = "team" + std::to_string(t.id);
    if (t.id < 1 || !ids.insert(t.id).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "team ids must be unique and >= 1 (" + name + ")");
    }
    if (t.users < 2) {
      throw Error(ErrorCode::kInvariantViolation,
                  name + " needs at least 2 users");
    }
    if (t.users > 1 && t.waypoints.empty()) {
      throw Error(ErrorCode::kInvariantViolation, name + " has no waypoints");
    }
    if (t.speed_mps < 0.0 || t.spacing_m < 0.0 || t.talkers < 0 ||
        t.talkers > t.users) {
      throw Error(ErrorCode::kInvariantViolation,
                  name + " has a negative speed/spacing or bad talker count");
    }
    timeline.Resolve(t.call_start);
  }
  for (const TimedIntent& i : intents) {
    Micros at = timeline.Resolve(i.instant);
    if (at < timeline.a || at > timeline.e) {
      throw Error(ErrorCode::kInvariantViolation,
                  "intent '" + i.key + "' lies outside [A, E]");
    }
  }
  if (runs < 1) throw Error(ErrorCode::kInvariantViolation, "runs must be >= 1");
  if (mobility_step <= Micros(0) || assurance_period <= Micros(0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "mobility step and assurance period must be positive");
  }
}

cnl::Lexicon ScenarioConfig::MakeLexicon() const {
  cnl::Lexicon lex = cnl::Lexicon::Default();
  for (const kb::ServiceProfile& p : kb.profiles()) {
    if (!lex.IsService(p.name)) lex.AddService(p.name);
  }
  return lex;
}

ScenarioConfig DefaultScenario() {
  ScenarioConfig cfg;
  // Team 1 stays close to the cell; team 2 walks into a building reached at
  // C; team 3 walks out of coverage behind a stationary anchor.
  cfg.teams.push_back({1, 12, {150, 50}, {{120, 0}, {250, 0}}, 4.0, 1.0, "B",
                       false, 0});
  cfg.teams.push_back({2, 12, {400, 150}, {{340, 150}, {400, 150}}, 4.0, 1.0,
                       "C", false, 0});
  cfg.teams.push_back({3, 12, {500, -100}, {{640, -100}, {900, -100}}, 4.0,
                       1.0, "B", true, 0});
  cfg.ptt.relay_service_rate_pps = 200.0;
  cfg.ptt.offnet_grant_guard = 100ms;
  cfg.ptt.traffic.mean_request_gap = 240s;
  cfg.intents = {
      {"team1", "A", "team1 connect ptt-group-call between team1-members"},
      {"team2", "A", "team2 connect ptt-group-call between team2-members"},
      {"team3", "A", "team3 connect ptt-group-call between team3-members"},
      {"team2_offnet", "C",
       "team2 reconnect ptt-group-call between team2-members with mode d2d"},
  };
  return cfg;
}

namespace {

class Reader {
 public:
  Reader(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '[') {
        auto close = line.find(']', first);
        section = line.substr(first + 1, close - first - 1);
        lines_[{section, ""}] = n;
      } else if (line[first] != ';' && line[first] != '#') {
        auto eq = line.find('=');
        std::string key = line.substr(first, eq == std::string::npos ? eq : eq - first);
        key.erase(key.find_last_not_of(" \t") + 1);
        lines_.emplace(std::make_pair(section, key), n);
      }
    }
  }

  [[noreturn]] void Fail(const std::string& section, const std::string& key,
                         const std::string& what) const {
    auto it = lines_.find({section, key});
    std::string where = origin_;
    if (it != lines_.end()) where += ":" + std::to_string(it->second);
    throw Error(ErrorCode::kParseError,
                where + ": [" + section + "] " + key + ": " + what);
  }

  double Double(const std::string& s, const std::string& k,
                const std::string& v) const {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
      Fail(s, k, "expected a number, got '" + v + "'");
    }
    return out;
  }

  long long Int(const std::string& s, const std::string& k,
                const std::string& v) const {
    long long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) {
      Fail(s, k, "expected an integer, got '" + v + "'");
    }
    return out;
  }

  Micros Ms(const std::string& s, const std::string& k,
            const std::string& v) const {
    try {
      return ParseMillis(v);
    } catch (const Error&) {
      Fail(s, k, "expected milliseconds, got '" + v + "'");
    }
  }

  bool Bool(const std::string& s, const std::string& k,
            const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    Fail(s, k, "expected true/false, got '" + v + "'");
  }

  Position Point(const std::string& s, const std::string& k,
                 const std::string& v) const {
    auto comma = v.find(',');
    if (comma == std::string::npos) Fail(s, k, "expected 'x,y'");
    return {Double(s, k, Trim(v.substr(0, comma))),
            Double(s, k, Trim(v.substr(comma + 1)))};
  }

  static std::string Trim(std::string v) {
    auto b = v.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = v.find_last_not_of(" \t");
    return v.substr(b, e - b + 1);
  }

 private:
  std::string origin_;
  std::map<std::pair<std::string, std::string>, int> lines_;
};

std::vector<std::string> Words(const std::string& v) {
  std::istringstream in(v);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

void ReadTeams(const pt::ptree& section, const Reader& r,
               ScenarioConfig& cfg) {
  std::map<int, TeamConfig> teams;
  std::map<int, std::set<std::string>> seen;
  for (const auto& [key, node] : section) {
    const std::string v = Reader::Trim(node.data());
    auto dot = key.find('.');
    if (key.rfind("team", 0) != 0 || dot == std::string::npos) {
      r.Fail("teams", key, "expected team<N>.<field>");
    }
    int id = static_cast<int>(r.Int("teams", key, key.substr(4, dot - 4)));
    std::string field = key.substr(dot + 1);
    TeamConfig& t = teams[id];
    t.id = id;
    seen[id].insert(field);
    if (field == "users") {
      t.users = static_cast<int>(r.Int("teams", key, v));
    } else if (field == "anchor") {
      t.anchor = r.Point("teams", key, v);
    } else if (field == "waypoints") {
      t.waypoints.clear();
      std::string rest = v;
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        auto semi = rest.find(';', pos);
        std::string item = Reader::Trim(rest.substr(pos, semi - pos));
        if (!item.empty()) t.waypoints.push_back(r.Point("teams", key, item));
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
    } else if (field == "spacing") {
      t.spacing_m = r.Double("teams", key, v);
    } else if (field == "speed") {
      t.speed_mps = r.Double("teams", key, v);
    } else if (field == "call_start") {
      t.call_start = v;
    } else if (field == "relay_fallback") {
      t.relay_fallback = r.Bool("teams", key, v);
    } else if (field == "talkers") {
      t.talkers = static_cast<int>(r.Int("teams", key, v));
    } else {
      r.Fail("teams", key, "unknown field '" + field + "'");
    }
  }
  for (const auto& [id, fields] : seen) {
    for (const char* required : {"users", "anchor", "waypoints"}) {
      if (!fields.count(required)) {
        r.Fail("teams", "team" + std::to_string(id) + "." + required,
               "missing");
      }
    }
  }
  cfg.teams.clear();
  for (auto& [id, t] : teams) cfg.teams.push_back(std::move(t));
}

}  // namespace

ScenarioConfig ParseConfig(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kParseError, origin + ":" +
                                            std::to_string(e.line()) + ": " +
                                            e.message());
  }
  Reader r(text, origin);
  ScenarioConfig cfg = DefaultScenario();

  static const std::set<std::string> kSections = {
      "teams",    "timeline", "radio",   "delays",  "traffic",
      "profiles", "slas",     "intents", "network", "run"};
  for (const auto& [name, node] : tree) {
    if (!kSections.count(name)) r.Fail(name, "", "unknown section");
  }
  for (const std::string& s : kSections) {
    if (tree.find(s) == tree.not_found()) cfg.defaulted.insert(s);
  }

  auto each = [&](const std::string& section, auto&& fn) {
    auto it = tree.find(section);
    if (it == tree.not_found()) return;
    for (const auto& [key, node] : it->second) {
      fn(key, Reader::Trim(node.data()));
    }
  };
  auto unknown = [&](const std::string& s, const std::string& k) {
    r.Fail(s, k, "unknown key");
  };

  if (auto it = tree.find("teams"); it != tree.not_found()) {
    ReadTeams(it->second, r, cfg);
  }
  each("timeline", [&](const std::string& k, const std::string& v) {
    Micros t = r.Ms("timeline", k, v);
    if (k == "A") cfg.timeline.a = t;
    else if (k == "B") cfg.timeline.b = t;
    else if (k == "C") cfg.timeline.c = t;
    else if (k == "E") cfg.timeline.e = t;
    else unknown("timeline", k);
  });
  each("radio", [&](const std::string& k, const std::string& v) {
    const std::string s = "radio";
    if (k == "pl0_db") cfg.radio.pl0_db = r.Double(s, k, v);
    else if (k == "d0_m") cfg.radio.d0_m = r.Double(s, k, v);
    else if (k == "exponent") cfg.radio.exponent_n = r.Double(s, k, v);
    else if (k == "rx_threshold_dbm") cfg.radio.rx_threshold_dbm = r.Double(s, k, v);
    else if (k == "hysteresis_db") cfg.radio.hysteresis_db = r.Double(s, k, v);
    else if (k == "enb_tx_dbm") cfg.enb_tx_dbm = r.Double(s, k, v);
    else if (k == "ue_tx_dbm") cfg.ue_tx_dbm = r.Double(s, k, v);
    else if (k == "mobility_step_ms") cfg.mobility_step = r.Ms(s, k, v);
    else unknown(s, k);
  });
  each("delays", [&](const std::string& k, const std::string& v) {
    const std::string s = "delays";
    auto& d = cfg.ptt.delays;
    if (k == "ue_enb_ms") d.ue_enb = r.Ms(s, k, v);
    else if (k == "enb_epc_ms") d.enb_epc = r.Ms(s, k, v);
    else if (k == "epc_server_ms") d.epc_server = r.Ms(s, k, v);
    else if (k == "d2d_hop_ms") d.d2d_hop = r.Ms(s, k, v);
    else if (k == "relay_proc_ms") d.relay_proc = r.Ms(s, k, v);
    else if (k == "jitter_ms") d.jitter = r.Ms(s, k, v);
    else if (k == "relay_service_rate_pps") cfg.ptt.relay_service_rate_pps = r.Double(s, k, v);
    else unknown(s, k);
  });
  each("traffic", [&](const std::string& k, const std::string& v) {
    const std::string s = "traffic";
    auto& t = cfg.ptt.traffic;
    if (k == "spurt_min_ms") t.spurt_min = r.Ms(s, k, v);
    else if (k == "spurt_max_ms") t.spurt_max = r.Ms(s, k, v);
    else if (k == "mean_request_gap_ms") t.mean_request_gap = r.Ms(s, k, v);
    else if (k == "packet_interval_ms") t.packet_interval = r.Ms(s, k, v);
    else if (k == "offnet_grant_guard_ms") cfg.ptt.offnet_grant_guard = r.Ms(s, k, v);
    else if (k == "mode_switch_penalty_ms") cfg.ptt.mode_switch_penalty = r.Ms(s, k, v);
    else if (k == "listen_before_talk") cfg.ptt.listen_before_talk = r.Bool(s, k, v);
    else if (k == "assurance_period_ms") cfg.assurance_period = r.Ms(s, k, v);
    else unknown(s, k);
  });
  each("network", [&](const std::string& k, const std::string& v) {
    const std::string s = "network";
    kb::CapabilityRecord caps = cfg.kb.capabilities();
    if (k == "cell_capacity_users") caps.cell_capacity_users = static_cast<int>(r.Int(s, k, v));
    else if (k == "d2d_supported") caps.d2d_supported = r.Bool(s, k, v);
    else if (k == "relay_supported") caps.relay_supported = r.Bool(s, k, v);
    else unknown(s, k);
    cfg.kb.SetCapabilities(caps);
  });
  each("profiles", [&](const std::string& k, const std::string& v) {
    auto w = Words(v);
    if (w.size() != 5) {
      r.Fail("profiles", k,
             "expected 'call_type priority gbr_kbps at_target_ms m2e_target_ms'");
    }
    kb::ServiceProfile p;
    p.name = k;
    try {
      p.call_type = kb::ParseCallType(w[0]);
    } catch (const Error& e) {
      r.Fail("profiles", k, e.what());
    }
    p.priority = static_cast<int>(r.Int("profiles", k, w[1]));
    p.guaranteed_bitrate_kbps = r.Double("profiles", k, w[2]);
    p.at_target_ms = r.Double("profiles", k, w[3]);
    p.m2e_target_ms = r.Double("profiles", k, w[4]);
    cfg.kb.RegisterProfile(p);
  });
  each("slas", [&](const std::string& k, const std::string& v) {
    auto w = Words(v);
    cfg.kb.RegisterSla({k, std::set<std::string>(w.begin(), w.end())});
  });
  if (tree.find("intents") != tree.not_found()) cfg.intents.clear();
  each("intents", [&](const std::string& k, const std::string& v) {
    auto bar = v.find('|');
    if (bar == std::string::npos) r.Fail("intents", k, "expected 'instant | text'");
    cfg.intents.push_back(
        {k, Reader::Trim(v.substr(0, bar)), Reader::Trim(v.substr(bar + 1))});
  });
  each("run", [&](const std::string& k, const std::string& v) {
    if (k == "runs") cfg.runs = static_cast<int>(r.Int("run", k, v));
    else if (k == "base_seed") cfg.base_seed = static_cast<std::uint64_t>(r.Int("run", k, v));
    else unknown("run", k);
  });

  cfg.Validate();
  return cfg;
}

ScenarioConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.string());
}

namespace {

std::string Num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string Pt(const Position& p) { return Num(p.x) + "," + Num(p.y); }

}  // namespace

std::string EchoConfig(const ScenarioConfig& cfg) {
  std::ostringstream o;
  auto header = [&](const std::string& name) {
    o << "\n[" << name << "]\n";
    if (cfg.defaulted.count(name)) o << "; defaulted\n";
  };
  o << "; effective scenario configuration\n";
  header("teams");
  for (const TeamConfig& t : cfg.teams) {
    const std::string p = "team" + std::to_string(t.id) + ".";
    o << p << "users = " << t.users << "\n"
      << p << "anchor = " << Pt(t.anchor) << "\n"
      << p << "waypoints = ";
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
      o << (i ? "; " : "") << Pt(t.waypoints[i]);
    }
    o << "\n"
      << p << "spacing = " << Num(t.spacing_m) << "\n"
      << p << "speed = " << Num(t.speed_mps) << "\n"
      << p << "call_start = " << t.call_start << "\n"
      << p << "relay_fallback = " << (t.relay_fallback ? "true" : "false") << "\n"
      << p << "talkers = " << t.talkers << "\n";
  }
  header("timeline");
  o << "A = " << FormatMillis(cfg.timeline.a) << "\nB = "
    << FormatMillis(cfg.timeline.b) << "\nC = " << FormatMillis(cfg.timeline.c)
    << "\nE = " << FormatMillis(cfg.timeline.e) << "\n";
  header("radio");
  o << "pl0_db = " << Num(cfg.radio.pl0_db) << "\n"
    << "d0_m = " << Num(cfg.radio.d0_m) << "\n"
    << "exponent = " << Num(cfg.radio.exponent_n) << "\n"
    << "rx_threshold_dbm = " << Num(cfg.radio.rx_threshold_dbm) << "\n"
    << "hysteresis_db = " << Num(cfg.radio.hysteresis_db) << "\n"
    << "enb_tx_dbm = " << Num(cfg.enb_tx_dbm) << "\n"
    << "ue_tx_dbm = " << Num(cfg.ue_tx_dbm) << "\n"
    << "mobility_step_ms = " << FormatMillis(cfg.mobility_step) << "\n";
  header("delays");
  const auto& d = cfg.ptt.delays;
  o << "ue_enb_ms = " << FormatMillis(d.ue_enb) << "\n"
    << "enb_epc_ms = " << FormatMillis(d.enb_epc) << "\n"
    << "epc_server_ms = " << FormatMillis(d.epc_server) << "\n"
    << "d2d_hop_ms = " << FormatMillis(d.d2d_hop) << "\n"
    << "relay_proc_ms = " << FormatMillis(d.relay_proc) << "\n"
    << "jitter_ms = " << FormatMillis(d.jitter) << "\n"
    << "relay_service_rate_pps = " << Num(cfg.ptt.relay_service_rate_pps) << "\n";
  header("traffic");
  const auto& t = cfg.ptt.traffic;
  o << "spurt_min_ms = " << FormatMillis(t.spurt_min) << "\n"
    << "spurt_max_ms = " << FormatMillis(t.spurt_max) << "\n"
    << "mean_request_gap_ms = " << FormatMillis(t.mean_request_gap) << "\n"
    << "packet_interval_ms = " << FormatMillis(t.packet_interval) << "\n"
    << "offnet_grant_guard_ms = " << FormatMillis(cfg.ptt.offnet_grant_guard) << "\n"
    << "mode_switch_penalty_ms = " << FormatMillis(cfg.ptt.mode_switch_penalty) << "\n"
    << "listen_before_talk = " << (cfg.ptt.listen_before_talk ? "true" : "false") << "\n"
    << "assurance_period_ms = " << FormatMillis(cfg.assurance_period) << "\n";
  header("profiles");
  for (const kb::ServiceProfile& p : cfg.kb.profiles()) {
    o << p.name << " = " << kb::CallTypeName(p.call_type) << " " << p.priority
      << " " << Num(p.guaranteed_bitrate_kbps) << " " << Num(p.at_target_ms)
      << " " << Num(p.m2e_target_ms) << "\n";
  }
  header("slas");
  for (const kb::SlaRecord& s : cfg.kb.slas()) {
    o << s.subscriber << " =";
    for (const std::string& svc : s.allowed_services) o << " " << svc;
    o << "\n";
  }
  header("intents");
  for (const TimedIntent& i : cfg.intents) {
    o << i.key << " = " << i.instant << " | " << i.text << "\n";
  }
  header("network");
  const auto& caps = cfg.kb.capabilities();
  o << "cell_capacity_users = " << caps.cell_capacity_users << "\n"
    << "d2d_supported = " << (caps.d2d_supported ? "true" : "false") << "\n"
    << "relay_supported = " << (caps.relay_supported ? "true" : "false") << "\n";
  header("run");
  o << "runs = " << cfg.runs << "\nbase_seed = " << cfg.base_seed << "\n";
  return o.str();
}

ScenarioConfig WithUsersPerTeam(const ScenarioConfig& cfg, int users) {
  ScenarioConfig out = cfg;
  for (TeamConfig& t : out.teams) {
    t.users = users;
    t.talkers = std::min(t.talkers, users);
  }
  out.Validate();
  return out;
}

}  // namespace ibnptt::scenario

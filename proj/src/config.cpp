#include "axisym/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "axisym/errors.hpp"
#include "format.hpp"

namespace axisym {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, int line) {
  std::string s = trim(raw);
  double scale = 1.0;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) {
    scale = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 3));
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + raw + "'");
  }
  if (used != s.size() || !std::isfinite(x))
    throw ConfigError(line, "expected a number, got '" + raw + "'");
  return x * scale;
}

long to_long(const std::string& raw, int line) {
  std::string s = trim(raw);
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an integer, got '" + raw + "'");
  }
  if (used != s.size()) throw ConfigError(line, "expected an integer, got '" + raw + "'");
  return x;
}

int to_int(const std::string& raw, int line) {
  long x = to_long(raw, line);
  if (x < -1000000000L || x > 1000000000L) throw ConfigError(line, "integer out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& raw, int line) {
  std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(line, "expected true or false, got '" + raw + "'");
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty()) out.push_back(cell);
  }
  return out;
}

using Setter = std::function<void(Config&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [&](const char* k, double RunConfig::*f) {
      t[k] = [f](Config& c, const std::string& v, int l) { c.run.*f = to_double(v, l); };
    };
    auto num = [&](const char* k, int RunConfig::*f) {
      t[k] = [f](Config& c, const std::string& v, int l) { c.run.*f = to_int(v, l); };
    };
    auto init = [&](const char* k, double InitialDataParams::*f) {
      t[k] = [f](Config& c, const std::string& v, int l) {
        c.run.init.*f = to_double(v, l);
      };
    };
    num("case", &RunConfig::case_id);
    dbl("mu", &RunConfig::mu);
    num("rlpf_k", &RunConfig::rlpf_k);
    num("rlpf_n", &RunConfig::rlpf_n);
    num("rlpf_m", &RunConfig::rlpf_m);
    num("n", &RunConfig::n);
    num("m", &RunConfig::m);
    dbl("t_end", &RunConfig::t_end);
    dbl("cfl", &RunConfig::cfl);
    num("diag_every", &RunConfig::diag_every);
    num("checkpoint_every", &RunConfig::checkpoint_every);
    t["output_times"] = [](Config& c, const std::string& v, int l) {
      c.run.output_times.clear();
      for (const auto& s : split_list(v)) c.run.output_times.push_back(to_double(s, l));
    };
    t["max_steps"] = [](Config& c, const std::string& v, int l) {
      c.run.max_steps = to_long(v, l);
    };
    t["filters"] = [](Config& c, const std::string& v, int l) {
      c.run.filters = to_bool(v, l);
    };
    t["n_min_r"] = [](Config& c, const std::string& v, int l) {
      c.run.thresholds.n_min_r = to_int(v, l);
    };
    t["n_min_z"] = [](Config& c, const std::string& v, int l) {
      c.run.thresholds.n_min_z = to_int(v, l);
    };
    init("m_u1", &InitialDataParams::m_u1);
    init("m_u2", &InitialDataParams::m_u2);
    init("m_w1", &InitialDataParams::m_w1);
    init("m_w2", &InitialDataParams::m_w2);
    init("a_z1", &InitialDataParams::a_z1);
    init("a_z2", &InitialDataParams::a_z2);
    init("a_r1", &InitialDataParams::a_r1);
    init("a_r2", &InitialDataParams::a_r2);
    init("b_z1", &InitialDataParams::b_z1);
    init("b_z2", &InitialDataParams::b_z2);
    init("b_r1", &InitialDataParams::b_r1);
    init("b_r2", &InitialDataParams::b_r2);
    t["study_p"] = [](Config& c, const std::string& v, int l) {
      c.study.p.clear();
      for (const auto& s : split_list(v)) c.study.p.push_back(to_int(s, l));
    };
    t["study_times"] = [](Config& c, const std::string& v, int l) {
      c.study.times.clear();
      for (const auto& s : split_list(v)) c.study.times.push_back(to_double(s, l));
    };
    t["study_base_n"] = [](Config& c, const std::string& v, int l) {
      c.study.base_n = to_int(v, l);
    };
    t["study_base_m"] = [](Config& c, const std::string& v, int l) {
      c.study.base_m = to_int(v, l);
    };
    t["study_reference"] = [](Config& c, const std::string& v, int l) {
      std::string s = trim(v);
      if (s == "next") c.study.reference = StudyReference::NextFiner;
      else if (s == "finest") c.study.reference = StudyReference::Finest;
      else throw ConfigError(l, "study_reference must be next or finest");
    };
    return t;
  }();
  return table;
}

}  // namespace

void apply_config_key(Config& cfg, const std::string& key, const std::string& value,
                      int line) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(line, "unknown key '" + key + "'");
  it->second(cfg, value, line);
}

Config parse_config(std::istream& is) {
  Config cfg;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key");
    if (value.empty()) throw ConfigError(line, "missing value for '" + key + "'");
    apply_config_key(cfg, key, value, line);
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  return parse_config(is);
}

std::string echo_config(const RunConfig& c) {
  using detail::g17;
  std::ostringstream os;
  os << "case = " << c.case_id << '\n'
     << "mu = " << g17(c.mu) << '\n'
     << "rlpf_k = " << c.rlpf_k << '\n'
     << "rlpf_n = " << c.rlpf_n << '\n'
     << "rlpf_m = " << c.rlpf_m << '\n'
     << "n = " << c.n << '\n'
     << "m = " << c.m << '\n'
     << "t_end = " << g17(c.t_end) << '\n'
     << "cfl = " << g17(c.cfl) << '\n'
     << "diag_every = " << c.diag_every << '\n'
     << "checkpoint_every = " << c.checkpoint_every << '\n';
  if (!c.output_times.empty()) {
    os << "output_times = ";
    for (std::size_t k = 0; k < c.output_times.size(); ++k)
      os << (k ? ", " : "") << g17(c.output_times[k]);
    os << '\n';
  }
  os << "max_steps = " << c.max_steps << '\n'
     << "filters = " << (c.filters ? "true" : "false") << '\n'
     << "n_min_r = " << c.thresholds.n_min_r << '\n'
     << "n_min_z = " << c.thresholds.n_min_z << '\n';
  const auto& p = c.init;
  os << "m_u1 = " << g17(p.m_u1) << "\nm_u2 = " << g17(p.m_u2) << "\nm_w1 = " << g17(p.m_w1)
     << "\nm_w2 = " << g17(p.m_w2) << "\na_z1 = " << g17(p.a_z1) << "\na_z2 = " << g17(p.a_z2)
     << "\na_r1 = " << g17(p.a_r1) << "\na_r2 = " << g17(p.a_r2) << "\nb_z1 = " << g17(p.b_z1)
     << "\nb_z2 = " << g17(p.b_z2) << "\nb_r1 = " << g17(p.b_r1) << "\nb_r2 = " << g17(p.b_r2)
     << '\n';
  return os.str();
}

}  // namespace axisym

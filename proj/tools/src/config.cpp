#include "rombox/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rombox/detail/binary_io.hpp"
#include "rombox/error.hpp"

namespace rombox::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::config, where + ": " + what);
}

int to_int(const std::string& v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::config, "expected an integer, got '" + v + "'");
  }
  return out;
}

double to_real(const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::config, "expected a number, got '" + v + "'");
  }
  return out;
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& text, F convert) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(convert(item));
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"case",
       {{"kind",
         [](ExperimentConfig& c, const std::string& v) {
           if (v == "adv1d") c.kind = CaseKind::adv1d;
           else if (v == "adv2d") c.kind = CaseKind::adv2d;
           else throw Error(ErrorCode::config, "kind must be adv1d or adv2d, got '" + v + "'");
         }},
        {"nx", [](ExperimentConfig& c, const std::string& v) { c.nx = to_int(v); }},
        {"ny", [](ExperimentConfig& c, const std::string& v) { c.ny = to_int(v); }},
        {"n", [](ExperimentConfig& c, const std::string& v) { c.nx = to_int(v); }},
        {"length", [](ExperimentConfig& c, const std::string& v) { c.length = to_real(v); }},
        {"c", [](ExperimentConfig& c, const std::string& v) { c.c = to_real(v); }},
        {"nu", [](ExperimentConfig& c, const std::string& v) { c.nu = to_real(v); }},
        {"snapshots", [](ExperimentConfig& c, const std::string& v) { c.snapshots = v; }}}},
      {"time",
       {{"dt", [](ExperimentConfig& c, const std::string& v) { c.dt = to_real(v); }},
        {"t_end", [](ExperimentConfig& c, const std::string& v) { c.t_end = to_real(v); }},
        {"stride", [](ExperimentConfig& c, const std::string& v) { c.stride = to_int(v); }}}},
      {"split",
       {{"train_end",
         [](ExperimentConfig& c, const std::string& v) {
           const double previous = c.train_end;
           c.train_end = to_real(v);
           // A split without a gap keeps val_start tied to train_end.
           c.val_start = c.val_start == previous ? c.train_end : std::max(c.val_start, c.train_end);
         }},
        {"val_start", [](ExperimentConfig& c, const std::string& v) { c.val_start = to_real(v); }},
        {"val_end", [](ExperimentConfig& c, const std::string& v) { c.val_end = to_real(v); }}}},
      {"rom",
       {{"method",
         [](ExperimentConfig& c, const std::string& v) {
           if (v != "gpod" && v != "lpod" && v != "lopod" && v != "coarse_fom") {
             throw Error(ErrorCode::config, "method must be gpod, lpod, lopod or coarse_fom");
           }
           c.method = v;
         }},
        {"subdomains",
         [](ExperimentConfig& c, const std::string& v) {
           const auto list = parse_int_list(v);
           if (list.empty() || list.size() > 2) {
             throw Error(ErrorCode::config, "subdomains takes I or Ix,Iy");
           }
           c.subdomains_x = list[0];
           c.subdomains_y = list.size() == 2 ? list[1] : (c.kind == CaseKind::adv2d ? list[0] : 1);
         }},
        {"modes", [](ExperimentConfig& c, const std::string& v) { c.modes = to_int(v); }},
        {"rank", [](ExperimentConfig& c, const std::string& v) { c.rank = to_int(v); }},
        {"integrator", [](ExperimentConfig& c, const std::string& v) { c.integrator = parse_scheme(v); }},
        {"dt", [](ExperimentConfig& c, const std::string& v) { c.rom_dt = to_real(v); }},
        {"coarse_factor", [](ExperimentConfig& c, const std::string& v) { c.coarse_factor = to_int(v); }},
        {"replicas", [](ExperimentConfig& c, const std::string& v) { c.replicas = to_int(v); }}}},
      {"sweep",
       {{"subdomains",
         [](ExperimentConfig& c, const std::string& v) { c.sweep_subdomains = parse_int_list(v); }},
        {"modes", [](ExperimentConfig& c, const std::string& v) { c.sweep_modes = parse_int_list(v); }},
        {"dts", [](ExperimentConfig& c, const std::string& v) { c.sweep_dts = parse_real_list(v); }},
        {"threshold", [](ExperimentConfig& c, const std::string& v) { c.threshold = to_real(v); }}}},
      {"output",
       {{"dir", [](ExperimentConfig& c, const std::string& v) { c.output_dir = v; }},
        {"seed",
         [](ExperimentConfig& c, const std::string& v) {
           std::uint64_t seed = 0;
           const auto res = std::from_chars(v.data(), v.data() + v.size(), seed);
           if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
             throw Error(ErrorCode::config, "seed must be a non-negative integer");
           }
           c.seed = seed;
         }}}},
  };
  return table;
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  if (name == "1d-paper") return c;
  if (name == "2d-paper") {
    c.kind = CaseKind::adv2d;
    c.nx = 256;
    c.ny = 256;
    c.c = 0.0;
    c.nu = 1e-3;
    c.dt = 0.025;
    c.t_end = 40.0;
    c.stride = 16;
    c.train_end = 12.0;
    c.val_start = 16.0;
    c.val_end = 20.0;
    c.method = "lopod";
    c.subdomains_x = 8;
    c.subdomains_y = 8;
    c.modes = 15;
    c.rank = 31;
    c.replicas = 5;
    c.sweep_modes = {5, 10, 15, 20, 25, 30, 35, 40};
    return c;
  }
  throw Error(ErrorCode::config, "unknown preset '" + name + "' (expected 1d-paper or 2d-paper)");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  bool seen_setting = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(where, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) fail(where, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "missing key");
    if (value.empty()) fail(where, "missing value for '" + key + "'");
    if (section.empty()) {
      if (key != "preset") fail(where, "unknown key '" + key + "' outside a section");
      if (seen_setting) fail(where, "preset must come before other settings");
      try {
        config = preset(value);
      } catch (const Error& e) {
        fail(where, e.message());
      }
      continue;
    }
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) fail(where, "unknown key '" + key + "' in section [" + section + "]");
    try {
      it->second(config, value);
    } catch (const Error& e) {
      fail(where, std::string(key) + ": " + e.message());
    }
    seen_setting = true;
  }
  try {
    validate(config);
  } catch (const Error& e) {
    fail(source, e.message());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return parse_config(std::string(bytes.begin(), bytes.end()), path);
}

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::config, what); };
  if (c.kind == CaseKind::adv1d && c.ny != 1) bad("adv1d requires ny = 1");
  if (c.kind == CaseKind::adv2d && c.ny < 3) bad("adv2d requires ny >= 3");
  if (c.nx < 3) bad("nx must be >= 3");
  if (!(c.dt > 0.0)) bad("dt must be positive");
  if (!(c.t_end >= 0.0)) bad("t_end must be non-negative");
  if (c.stride < 1) bad("stride must be >= 1");
  if (!(c.train_end <= c.val_start && c.val_start < c.val_end)) {
    bad("split bounds must satisfy train_end <= val_start < val_end");
  }
  if (!(c.nu >= 0.0)) bad("nu must be non-negative");
  if (c.kind == CaseKind::adv1d && c.nu != 0.0) bad("adv1d has no diffusion; remove nu");
  if (c.subdomains_x < 1 || c.subdomains_y < 1) bad("subdomain counts must be >= 1");
  if (c.kind == CaseKind::adv1d && c.subdomains_y != 1) bad("adv1d takes a single subdomain count");
  if (c.modes < 1 || c.rank < 1) bad("modes and rank must be >= 1");
  if (c.rom_dt && !(*c.rom_dt > 0.0)) bad("rom dt must be positive");
  if (c.replicas < 1) bad("replicas must be >= 1");
  if (c.coarse_factor < 1) bad("coarse_factor must be >= 1");
  for (double dt : c.sweep_dts) {
    if (!(dt > 0.0)) bad("sweep dts must be positive");
  }
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "cn" || name == "crank_nicolson") return Scheme::crank_nicolson;
  throw Error(ErrorCode::config, "integrator must be rk4 or cn, got '" + name + "'");
}

const char* scheme_name(Scheme scheme) noexcept {
  return scheme == Scheme::rk4 ? "rk4" : "cn";
}

std::vector<int> parse_int_list(const std::string& text) { return parse_list<int>(text, to_int); }

std::vector<double> parse_real_list(const std::string& text) {
  return parse_list<double>(text, to_real);
}

}  // namespace rombox::harness

#include "splitdg/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "splitdg/errors.hpp"

namespace splitdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

double parse_num(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError("expected a number, got '" + tok + "'", line);
  return v;
}

long long parse_int(const std::string& tok, int line) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError("expected an integer, got '" + tok + "'", line);
  return v;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  bool has_cfl = false;

  using Handler = std::function<void(const std::vector<std::string>&, int)>;
  auto want = [](const std::vector<std::string>& v, size_t n, int line,
                 const std::string& key) {
    if (v.size() != n)
      throw ParseError("key '" + key + "' expects " + std::to_string(n) +
                           " value(s), got " + std::to_string(v.size()),
                       line);
  };

  const std::map<std::string, Handler> handlers = {
      {"N", [&](auto& v, int l) { want(v, 1, l, "N"); cfg.N = static_cast<int>(parse_int(v[0], l)); }},
      {"system", [&](auto& v, int l) { want(v, 1, l, "system"); cfg.system = v[0]; }},
      {"T", [&](auto& v, int l) { want(v, 1, l, "T"); cfg.T = parse_num(v[0], l); }},
      {"system.velocity", [&](auto& v, int l) {
         want(v, 3, l, "system.velocity");
         cfg.velocity = {parse_num(v[0], l), parse_num(v[1], l), parse_num(v[2], l)};
       }},
      {"system.shear", [&](auto& v, int l) { want(v, 1, l, "system.shear"); cfg.shear = parse_num(v[0], l); }},
      {"system.vortex", [&](auto& v, int l) { want(v, 1, l, "system.vortex"); cfg.vortex = parse_num(v[0], l); }},
      {"system.sound_speed", [&](auto& v, int l) { want(v, 1, l, "system.sound_speed"); cfg.sound_speed = parse_num(v[0], l); }},
      {"mesh.extents", [&](auto& v, int l) {
         want(v, 6, l, "mesh.extents");
         for (int i = 0; i < 6; ++i) cfg.extents[i] = parse_num(v[i], l);
       }},
      {"mesh.counts", [&](auto& v, int l) {
         want(v, 3, l, "mesh.counts");
         for (int i = 0; i < 3; ++i) cfg.counts[i] = static_cast<int>(parse_int(v[i], l));
       }},
      {"mesh.warp", [&](auto& v, int l) { want(v, 1, l, "mesh.warp"); cfg.warp = parse_num(v[0], l); }},
      {"mesh.metric", [&](auto& v, int l) {
         want(v, 1, l, "mesh.metric");
         if (v[0] == "curl") cfg.metric = MetricMode::Curl;
         else if (v[0] == "cross") cfg.metric = MetricMode::Cross;
         else throw ValidationError("mesh.metric must be 'curl' or 'cross'", "mesh.metric");
       }},
      {"ic", [&](auto& v, int l) {
         want(v, 1, l, "ic");
         if (v[0] == "zero") cfg.ic = ICKind::Zero;
         else if (v[0] == "constant") cfg.ic = ICKind::Constant;
         else if (v[0] == "gaussian") cfg.ic = ICKind::Gaussian;
         else if (v[0] == "trig") cfg.ic = ICKind::Trig;
         else if (v[0] == "random") cfg.ic = ICKind::Random;
         else throw ValidationError("unknown initial condition '" + v[0] + "'", "ic");
       }},
      {"ic.components", [&](auto& v, int l) {
         if (v.empty()) throw ParseError("ic.components expects at least one value", l);
         cfg.ic_components.clear();
         for (const auto& t : v) cfg.ic_components.push_back(parse_num(t, l));
       }},
      {"ic.center", [&](auto& v, int l) {
         want(v, 3, l, "ic.center");
         cfg.ic_center = {parse_num(v[0], l), parse_num(v[1], l), parse_num(v[2], l)};
       }},
      {"ic.width", [&](auto& v, int l) { want(v, 1, l, "ic.width"); cfg.ic_width = parse_num(v[0], l); }},
      {"ic.wavenumber", [&](auto& v, int l) {
         want(v, 3, l, "ic.wavenumber");
         for (int i = 0; i < 3; ++i) cfg.ic_wavenumber[i] = static_cast<int>(parse_int(v[i], l));
       }},
      {"bc", [&](auto& v, int l) {
         want(v, 1, l, "bc");
         if (v[0] == "zero") cfg.bc = BCKind::Zero;
         else if (v[0] == "exact") cfg.bc = BCKind::Exact;
         else throw ValidationError("bc must be 'zero' or 'exact'", "bc");
       }},
      {"form", [&](auto& v, int l) {
         want(v, 1, l, "form");
         if (v[0] == "DGSEM") cfg.form = Form::DGSEM;
         else if (v[0] == "W") cfg.form = Form::W;
         else if (v[0] == "S") cfg.form = Form::S;
         else if (v[0] == "SC") cfg.form = Form::SC;
         else if (v[0] == "DS") cfg.form = Form::DS;
         else throw ValidationError("unknown form '" + v[0] + "'", "form");
       }},
      {"sigma", [&](auto& v, int l) { want(v, 1, l, "sigma"); cfg.sigma = parse_num(v[0], l); }},
      {"cfl", [&](auto& v, int l) { want(v, 1, l, "cfl"); cfg.cfl = parse_num(v[0], l); has_cfl = true; }},
      {"dt", [&](auto& v, int l) { want(v, 1, l, "dt"); cfg.dt = parse_num(v[0], l); cfg.has_dt = true; }},
      {"output.interval", [&](auto& v, int l) { want(v, 1, l, "output.interval"); cfg.output_interval = parse_num(v[0], l); }},
      {"output.prefix", [&](auto& v, int l) { want(v, 1, l, "output.prefix"); cfg.output_prefix = v[0]; }},
      {"seed", [&](auto& v, int l) { want(v, 1, l, "seed"); cfg.seed = static_cast<std::uint64_t>(parse_int(v[0], l)); }},
      {"threads", [&](auto& v, int l) { want(v, 1, l, "threads"); cfg.threads = static_cast<int>(parse_int(v[0], l)); }},
  };

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    const auto h = handlers.find(key);
    if (h == handlers.end())
      throw ValidationError("unknown key '" + key + "'", key);
    if (!seen.insert(key).second)
      throw ValidationError("duplicate key '" + key + "'", key);
    h->second(tokens(val), line);
  }

  // Required keys.
  if (!seen.count("N")) throw ValidationError("missing required key 'N'", "N");
  if (!seen.count("system"))
    throw ValidationError("missing required key 'system'", "system");
  if (!seen.count("T")) throw ValidationError("missing required key 'T'", "T");

  // Ranges and consistency.
  if (cfg.N < 1 || cfg.N > 64)
    throw ValidationError("N must be in [1, 64]", "N");
  if (cfg.system != "advection" && cfg.system != "acoustics")
    throw ValidationError("system must be 'advection' or 'acoustics'", "system");
  if (!(cfg.T >= 0))
    throw ValidationError("T must be nonnegative", "T");
  if (!(cfg.sigma >= 0 && cfg.sigma <= 1))
    throw ValidationError("sigma must be in [0, 1]", "sigma");
  for (int i = 0; i < 3; ++i)
    if (cfg.counts[i] < 1)
      throw ValidationError("mesh.counts must be at least 1", "mesh.counts");
  for (int i = 0; i < 3; ++i)
    if (!(cfg.extents[2 * i + 1] > cfg.extents[2 * i]))
      throw ValidationError("mesh.extents must describe a nonempty box",
                            "mesh.extents");
  if (has_cfl && cfg.has_dt)
    throw ValidationError("give either cfl or dt, not both", "dt");
  if (!(cfg.cfl > 0)) throw ValidationError("cfl must be positive", "cfl");
  if (cfg.has_dt && !(cfg.dt > 0))
    throw ValidationError("dt must be positive", "dt");
  if (cfg.output_interval < 0)
    throw ValidationError("output.interval must be nonnegative",
                          "output.interval");
  if (cfg.ic_width <= 0)
    throw ValidationError("ic.width must be positive", "ic.width");
  if (cfg.threads < 0)
    throw ValidationError("threads must be nonnegative", "threads");
  if (cfg.sound_speed <= 0)
    throw ValidationError("system.sound_speed must be positive",
                          "system.sound_speed");
  if (cfg.vortex != 0 && cfg.shear != 0)
    throw ValidationError("system.vortex and system.shear are exclusive",
                          "system.vortex");

  const int p = cfg.system == "acoustics" ? 4 : 1;
  if (cfg.ic_components.empty()) {
    cfg.ic_components.assign(p, 0.0);
    cfg.ic_components[p - 1] = 1.0;
  } else if (static_cast<int>(cfg.ic_components.size()) != p) {
    throw ValidationError("ic.components must list one value per state component",
                          "ic.components");
  }

  if (cfg.bc == BCKind::Exact) {
    const bool transported = cfg.system == "advection" && cfg.shear == 0 &&
                             cfg.vortex == 0 && cfg.ic != ICKind::Random;
    const bool steady = cfg.ic == ICKind::Constant || cfg.ic == ICKind::Zero;
    if (!transported && !steady)
      throw ValidationError(
          "bc = exact requires a known solution: constant-velocity advection "
          "with an analytic initial condition, or a constant state",
          "bc");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open config file '" + path + "'", 0);
  return parse_config(in);
}

}  // namespace splitdg

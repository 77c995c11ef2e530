#include "stiffcrowd/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "stiffcrowd/errors.hpp"

namespace stiffcrowd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& why) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why);
}

std::vector<std::string> words(const std::string& v) {
  std::string s = v;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double to_double(const std::string& w, int line) {
  if (w == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) parse_fail(line, "not a number: '" + w + "'");
  return v;
}

int to_int(const std::string& w, int line) {
  int v = 0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) parse_fail(line, "not an integer: '" + w + "'");
  return v;
}

std::vector<double> numbers(const std::string& v, int line) {
  std::vector<double> out;
  for (const auto& w : words(v)) out.push_back(to_double(w, line));
  return out;
}

double number(const std::string& v, int line) {
  const auto n = numbers(v, line);
  if (n.size() != 1) parse_fail(line, "expected one number");
  return n[0];
}

int integer(const std::string& v, int line) {
  const auto w = words(v);
  if (w.size() != 1) parse_fail(line, "expected one integer");
  return to_int(w[0], line);
}

}  // namespace

size_t SweepAxes::points() const {
  return std::max<size_t>(k.size(), 1) * std::max<size_t>(eps.size(), 1) * std::max<size_t>(nx.size(), 1);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig out;
  Scenario& s = out.scenario;
  RunManifest& m = out.manifest;
  auto& v = s.velocity;

  using Setter = std::function<void(const std::string&, int)>;
  auto real = [](double& field) -> Setter { return [&field](const std::string& val, int ln) { field = number(val, ln); }; };
  const std::map<std::string, Setter> keys = {
      {"solver",
       [&](const std::string& val, int ln) {
         if (val == "fv1d") s.solver = SolverKind::FV1D;
         else if (val == "fv2d") s.solver = SolverKind::FV2D;
         else if (val == "fronttrack") s.solver = SolverKind::FrontTrack;
         else if (val == "ftl") s.solver = SolverKind::FTL;
         else parse_fail(ln, "unknown solver '" + val + "'");
       }},
      {"x_min", real(s.x_min)},
      {"x_max", real(s.x_max)},
      {"nx", [&](const std::string& val, int ln) { s.nx = integer(val, ln); }},
      {"y_min", real(s.y_min)},
      {"y_max", real(s.y_max)},
      {"ny", [&](const std::string& val, int ln) { s.ny = integer(val, ln); }},
      {"velocity", [&](const std::string& val, int) { v.family = val; }},
      {"velocity.a", real(v.a)},
      {"velocity.b", real(v.b)},
      {"velocity.x0", real(v.x0)},
      {"velocity.width", real(v.width)},
      {"velocity.ux", real(v.ux)},
      {"velocity.uy", real(v.uy)},
      {"velocity.cx", real(v.cx)},
      {"velocity.cy", real(v.cy)},
      {"velocity.lambda", real(v.lambda)},
      {"block",
       [&](const std::string& val, int ln) {
         const auto n = numbers(val, ln);
         if (n.size() != 3) parse_fail(ln, "block needs: a b value");
         s.intervals.push_back({n[0], n[1], n[2]});
       }},
      {"box",
       [&](const std::string& val, int ln) {
         const auto n = numbers(val, ln);
         if (n.size() != 5) parse_fail(ln, "box needs: x0 x1 y0 y1 value");
         s.boxes.push_back({n[0], n[1], n[2], n[3], n[4]});
       }},
      {"k", real(s.k)},
      {"eps", real(s.eps)},
      {"cfl", real(s.cfl)},
      {"T", real(s.T)},
      {"output_dt", real(s.output_dt)},
      {"sat_threshold", real(s.sat_threshold)},
      {"dt_max", real(s.dt_max)},
      {"diffusion",
       [&](const std::string& val, int ln) {
         if (val == "explicit") s.diffusion = DiffusionMode::Explicit;
         else if (val == "implicit") s.diffusion = DiffusionMode::SplittingImplicit;
         else parse_fail(ln, "diffusion must be explicit or implicit");
       }},
      {"ambient", real(s.ambient)},
      {"track_dt", real(s.track_dt)},
      {"agents", [&](const std::string& val, int ln) { s.agents = integer(val, ln); }},
      {"ftl_dt", real(s.ftl_dt)},
      {"out", [&](const std::string& val, int) { m.out_dir = val; }},
      {"jobs", [&](const std::string& val, int ln) { m.jobs = integer(val, ln); }},
      {"cap", [&](const std::string& val, int ln) { m.cap = static_cast<size_t>(integer(val, ln)); }},
      {"compare.k", real(m.compare_k)},
      {"sweep.k", [&](const std::string& val, int ln) { m.sweep.k = numbers(val, ln); }},
      {"sweep.eps", [&](const std::string& val, int ln) { m.sweep.eps = numbers(val, ln); }},
      {"sweep.nx",
       [&](const std::string& val, int ln) {
         m.sweep.nx.clear();
         for (const auto& w : words(val)) m.sweep.nx.push_back(to_int(w, ln));
       }},
  };

  std::istringstream in(text);
  std::string raw, normalized;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) parse_fail(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string val = trim(body.substr(eq + 1));
    if (val.empty()) parse_fail(line, "missing value for '" + key + "'");
    const auto it = keys.find(key);
    if (it == keys.end()) parse_fail(line, "unknown key '" + key + "'");
    it->second(val, line);
    normalized += key + '=' + val + '\n';
  }

  s.validate();
  if (m.jobs < 1) throw Error(ErrorKind::ValidationError, "jobs: must be >= 1", "jobs");
  if (m.sweep.points() > m.cap)
    throw Error(ErrorKind::ValidationError, "cap: sweep has " + std::to_string(m.sweep.points()) + " points", "cap");
  for (size_t i = 0; i < m.sweep.points(); ++i) sweep_point(s, m.sweep, i).validate();
  m.solver = s.solver;
  m.hash = fnv1a(normalized);
  return out;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

Scenario sweep_point(const Scenario& base, const SweepAxes& axes, size_t index) {
  Scenario s = base;
  const size_t nk = std::max<size_t>(axes.k.size(), 1), ne = std::max<size_t>(axes.eps.size(), 1);
  const size_t ik = index % nk, ie = (index / nk) % ne, in = index / (nk * ne);
  if (!axes.k.empty()) s.k = axes.k[ik];
  if (!axes.eps.empty()) s.eps = axes.eps[ie];
  if (!axes.nx.empty()) s.nx = axes.nx[in];
  return s;
}

}  // namespace stiffcrowd

#include "stiffcrowd/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "stiffcrowd/diagnostics.hpp"
#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/fronttrack.hpp"
#include "stiffcrowd/ftl.hpp"
#include "stiffcrowd/initial.hpp"
#include "stiffcrowd/output.hpp"
#include "stiffcrowd/solver2d.hpp"

namespace stiffcrowd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kRangeTol = 1e-12;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string to_text(const DiagnosticSeries& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

template <class Snap>
void write_snapshots(const fs::path& dir, const std::vector<Snap>& snaps) {
  for (size_t i = 0; i < snaps.size(); ++i) {
    std::ostringstream os;
    write_snapshot(os, snaps[i]);
    write_file(dir / snapshot_name(static_cast<int>(i)), os.str());
  }
}

void check_series(const DiagnosticSeries& series, double k, double mass0, bool entropy_exact, PointResult& r,
                  json& inv) {
  double drift = 0.0, lo = 0.0, hi = 0.0, law = 0.0, kr = 0.0, tv_excess = -INFINITY;
  bool first = true;
  for (const auto& rec : series.records()) {
    drift = std::max(drift, std::abs(rec.mass - mass0) / mass0);
    lo = first ? rec.min_rho : std::min(lo, rec.min_rho);
    hi = first ? rec.max_rho : std::max(hi, rec.max_rho);
    first = false;
    law = std::max(law, rec.law_of_state);
    if (std::isfinite(rec.kruzhkov_positive)) kr = std::max(kr, rec.kruzhkov_positive);
    tv_excess = std::max(tv_excess, rec.tv - rec.tv_envelope);
  }
  inv = {{"mass_drift", drift}, {"min_rho", lo}, {"max_rho", hi}, {"law_of_state", law},
         {"law_of_state_bound", law_of_state_bound(k)}, {"kruzhkov_positive", kr}, {"tv_minus_envelope", tv_excess}};
  r.mass_drift = drift;
  if (drift > 1e-10) r.failures.push_back("mass drift " + std::to_string(drift));
  if (lo < -kRangeTol || hi > 1.0 + kRangeTol) r.failures.push_back("density left [0,1]");
  if (law > law_of_state_bound(k) + 1e-14) r.failures.push_back("law of state bound exceeded");
  if (entropy_exact && kr > 1e-10) r.failures.push_back("cell entropy inequality violated");
  if (tv_excess > 1e-12) r.failures.push_back("total variation above its envelope");
}

void fill_final(const DiagnosticSeries& series, PointResult& r, json& fin) {
  const auto& b = series.back();
  r.complementarity = b.complementarity;
  r.frontal_trace = b.frontal_trace;
  r.tv = b.tv;
  fin = {{"t", b.t},
         {"mass", b.mass},
         {"tv", b.tv},
         {"components", b.components},
         {"complementarity", finite_or_null(b.complementarity)},
         {"frontal_trace", finite_or_null(b.frontal_trace)}};
}

void run_fv1d(const Scenario& sc, const fs::path& dir, PointResult& r, json& j) {
  const auto res = run(sc);
  write_snapshots(dir, res.snapshots);
  write_file(dir / "diagnostics.txt", to_text(res.diagnostics));
  const auto u = sc.velocity1d();
  const bool entropy_exact = u.family() == Velocity1D::Family::Constant && sc.eps == 0.0;
  check_series(res.diagnostics, sc.k, initial_mass(sc.intervals), entropy_exact, r, j["invariants"]);
  fill_final(res.diagnostics, r, j["final"]);
  j["steps"] = res.steps;
}

void run_fv2d(const Scenario& sc, const fs::path& dir, PointResult& r, json& j) {
  const auto res = run2d(sc);
  write_snapshots(dir, res.snapshots);
  write_file(dir / "diagnostics.txt", to_text(res.diagnostics));
  check_series(res.diagnostics, sc.k, initial_mass(sc.boxes), false, r, j["invariants"]);
  fill_final(res.diagnostics, r, j["final"]);
  j["steps"] = res.steps;
}

std::vector<Block> blocks_of(const Scenario& sc) {
  std::vector<Block> blocks;
  for (const auto& p : sc.intervals) {
    if (p.value != 1.0)
      throw Error(ErrorKind::ValidationError, "block: front tracking needs saturated blocks (value 1)", "block");
    blocks.push_back({p.a, p.b, sc.ambient});
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.x_minus < b.x_minus; });
  return blocks;
}

double saturated_length(const std::vector<Block>& b) {
  double L = 0.0;
  for (const auto& x : b) L += x.x_plus - x.x_minus;
  return L;
}

void run_fronttrack(const Scenario& sc, const fs::path& dir, PointResult& r, json& j) {
  const auto u = sc.velocity1d();
  const auto traj = evolve(BlockSystem{blocks_of(sc), u, {}}, sc.T, sc.track_dt);
  std::ostringstream tr, ev;
  write_trajectory(tr, traj);
  write_events(ev, traj);
  write_file(dir / "trajectory.txt", tr.str());
  write_file(dir / "events.txt", ev.str());
  // Sampled limit profiles on the scenario grid.
  const auto g = sc.grid1d();
  const auto times = sc.output_times();
  for (size_t i = 0; i < times.size(); ++i) {
    const auto prof = limit_profile(traj.at(times[i]), u);
    std::ostringstream os;
    os << "# t=" << times[i] << " limit\n# x rho p\n";
    os.precision(17);
    for (int c = 0; c < g.n_cells; ++c) os << g.center(c) << ' ' << prof.rho(g.center(c)) << ' ' << prof.p(g.center(c)) << '\n';
    write_file(dir / snapshot_name(static_cast<int>(i)), os.str());
  }
  const double L0 = saturated_length(traj.states.front()), L1 = saturated_length(traj.states.back());
  const double drift = std::abs(L1 - L0);
  if (sc.ambient == 0.0 && drift > 1e-9) r.failures.push_back("saturated length not conserved");
  json events = json::array();
  for (const auto& e : traj.events) events.push_back({{"t", e.t}, {"left_index", e.left_index}});
  j["events"] = events;
  j["invariants"] = {{"saturated_length_drift", drift}};
  j["final"] = {{"blocks", traj.states.back().size()}};
}

void run_ftl(const Scenario& sc, const fs::path& dir, PointResult& r, json& j) {
  if (sc.intervals.size() != 1)
    throw Error(ErrorKind::ValidationError, "block: follow-the-leader runs take exactly one block", "block");
  const auto& p = sc.intervals.front();
  const auto u = sc.velocity1d();
  auto chain = chain_from_block(p.a, p.b, p.value, sc.agents, sc.k, u);
  const double dt = sc.ftl_dt > 0.0 ? sc.ftl_dt : ftl_default_dt(chain);
  const auto g = sc.grid1d();
  const double macro_mass = initial_mass(sc.intervals);
  const auto times = sc.output_times();
  FtlTrajectory all;
  const int stride = std::max(1, sc.agents / 100);
  double t = 0.0, worst = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] > t) {
      const auto part = integrate(chain, times[i] - t, dt, {stride, times[i] - t});
      all.steps += part.steps;
      all.halvings += part.halvings;
      t = times[i];
    }
    all.t.push_back(t);
    std::vector<double> row;
    for (size_t a = 0; a < chain.x.size(); a += stride) row.push_back(chain.x[a]);
    all.x.push_back(row);
    const Field1D rho = empirical_density(chain, g);
    worst = std::max(worst, std::abs(mass(rho) - macro_mass) / macro_mass);

    {
      std::ostringstream os;
      write_snapshot(os, Snapshot1D{t, sc.k, 0.0, rho});
      write_file(dir / snapshot_name(static_cast<int>(i)), os.str());
    }
  }
  std::ostringstream os;
  write_trajectory(os, all);
  write_file(dir / "trajectory.txt", os.str());
  if (worst > 1e-3) r.failures.push_back("empirical mass drift " + std::to_string(worst));
  j["invariants"] = {{"empirical_mass_drift", worst}};
  j["final"] = {{"steps", all.steps}, {"halvings", all.halvings}, {"dt", dt}};
}

std::string point_name(size_t index, const Scenario& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "p%03zu_k%g_eps%g_nx%d", index, s.k, s.eps, s.nx);
  return buf;
}

}  // namespace

PointResult run_point(const Scenario& sc, const fs::path& dir, const std::string& name) {
  PointResult r;
  r.name = name;
  r.k = sc.k;
  r.eps = sc.eps;
  r.nx = sc.nx;
  r.complementarity = r.frontal_trace = r.tv = NAN;
  json j = {{"name", name}, {"solver", to_string(sc.solver)}, {"k", sc.k}, {"eps", sc.eps}, {"nx", sc.nx},
            {"T", sc.T}};
  fs::create_directories(dir);
  try {
    switch (sc.solver) {
      case SolverKind::FV1D: run_fv1d(sc, dir, r, j); break;
      case SolverKind::FV2D: run_fv2d(sc, dir, r, j); break;
      case SolverKind::FrontTrack: run_fronttrack(sc, dir, r, j); break;
      case SolverKind::FTL: run_ftl(sc, dir, r, j); break;
    }
  } catch (const std::exception& e) {
    r.failures.push_back(e.what());
  }
  r.ok = r.failures.empty();
  j["status"] = r.ok ? "ok" : "failed";
  j["failures"] = r.failures;
  r.summary_json = j.dump(2);
  write_file(dir / "summary.json", r.summary_json + "\n");
  return r;
}

int run_sweep(const ParsedConfig& cfg, const fs::path& out, int jobs) {
  const fs::path root = claim_output_dir(out);
  const size_t n = cfg.manifest.sweep.points();
  std::vector<PointResult> results(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      const Scenario s = sweep_point(cfg.scenario, cfg.manifest.sweep, i);
      const std::string name = n == 1 ? "run" : point_name(i, s);
      results[i] = run_point(s, root / name, name);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream trend;
  trend << "# name k eps nx mass_drift tv complementarity frontal_trace status\n";
  trend.precision(17);
  json summary = {{"hash", cfg.manifest.hash}, {"solver", to_string(cfg.scenario.solver)}, {"points", json::array()}};
  bool all_ok = true;
  for (const auto& r : results) {
    trend << r.name << ' ' << r.k << ' ' << r.eps << ' ' << r.nx << ' ' << r.mass_drift << ' ' << r.tv << ' '
          << r.complementarity << ' ' << r.frontal_trace << ' ' << (r.ok ? "ok" : "failed") << '\n';
    summary["points"].push_back({{"name", r.name}, {"ok", r.ok}, {"failures", r.failures}});
    all_ok = all_ok && r.ok;
  }
  write_file(root / "trend.txt", trend.str());
  write_file(root / "summary.json", summary.dump(2) + "\n");
  return all_ok ? 0 : 1;
}

CompareReport run_compare(const ParsedConfig& cfg, const fs::path& out) {
  const fs::path root = claim_output_dir(out);
  Scenario track = cfg.scenario;
  track.solver = SolverKind::FrontTrack;
  Scenario fv = cfg.scenario;
  fv.solver = SolverKind::FV1D;
  fv.k = cfg.manifest.compare_k;
  const auto u = track.velocity1d();

  const auto traj = evolve(BlockSystem{blocks_of(track), u, {}}, track.T, track.track_dt);
  const auto res = run(fv);

  CompareReport rep;
  if (!traj.events.empty()) rep.merge_time_track = traj.events.front().t;
  int seen = 0;
  for (size_t i = 0; i < res.snapshots.size(); ++i) {
    const auto& s = res.snapshots[i];
    const auto blocks = traj.at(s.t);
    rep.max_front_error = std::max(rep.max_front_error, std::abs(front_position(s.field, 0.5) - blocks.back().x_plus));
    const int comps = res.diagnostics.records()[i].components;
    seen = std::max(seen, comps);
    if (rep.merge_time_fv < 0.0 && seen >= 2 && comps == 1) rep.merge_time_fv = s.t;
  }
  json j = {{"hash", cfg.manifest.hash},
            {"fv_k", fv.k},
            {"max_front_error", rep.max_front_error},
            {"merge_time_fronttrack", rep.merge_time_track},
            {"merge_time_fv", rep.merge_time_fv}};
  if (rep.merge_time_track >= 0.0 && rep.merge_time_fv >= 0.0)
    j["merge_time_discrepancy"] = std::abs(rep.merge_time_fv - rep.merge_time_track);
  rep.json = j.dump(2);
  write_file(root / "compare.json", rep.json + "\n");
  std::ostringstream tr;
  write_trajectory(tr, traj);
  write_file(root / "trajectory.txt", tr.str());
  write_file(root / "diagnostics.txt", to_text(res.diagnostics));
  return rep;
}

}  // namespace stiffcrowd

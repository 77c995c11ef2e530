#include "stiffcrowd/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/flux.hpp"

namespace stiffcrowd {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void header(std::ostream& os, double t, double k, double eps) {
  os << "# t=" << g17(t) << " k=" << g17(k) << " eps=" << g17(eps) << '\n';
}

}  // namespace

void write_snapshot(std::ostream& os, const Snapshot1D& s) {
  header(os, s.t, s.k, s.eps);
  os << "# x rho p\n";
  const auto& g = s.field.grid;
  for (int i = 0; i < g.n_cells; ++i) {
    const double r = s.field.values[i];
    os << g17(g.center(i)) << ' ' << g17(r) << ' ' << g17(pow_k(std::max(r, 0.0), s.k)) << '\n';
  }
}

void write_snapshot(std::ostream& os, const Snapshot2D& s) {
  header(os, s.t, s.k, s.eps);
  os << "# x y rho p\n";
  const auto& g = s.field.grid;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = s.field.at(i, j);
      os << g17(g.x.center(i)) << ' ' << g17(g.y.center(j)) << ' ' << g17(r) << ' '
         << g17(pow_k(std::max(r, 0.0), s.k)) << '\n';
    }
}

std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04d.txt", index);
  return buf;
}

std::filesystem::path claim_output_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  auto usable = [](const fs::path& p) { return !fs::exists(p) || (fs::is_directory(p) && fs::is_empty(p)); };
  fs::path chosen = dir;
  for (int v = 2; !usable(chosen); ++v) chosen = fs::path(dir.string() + "-v" + std::to_string(v));
  fs::create_directories(chosen);
  return chosen;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  f << content;
}

}  // namespace stiffcrowd

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stiffcrowd/grid.hpp"

namespace stiffcrowd {

/// `# t=<t> k=<k> eps=<eps>` then `# x rho p` and one row per cell.
void write_snapshot(std::ostream& os, const Snapshot1D& snap);
/// As above with columns `x y rho p`, rows ordered by cell index.
void write_snapshot(std::ostream& os, const Snapshot2D& snap);

/// `snapshot_0003.txt`
std::string snapshot_name(int index);

/// Returns `dir` if it is missing or empty, otherwise the first free `dir-v2`,
/// `dir-v3`, ... The returned directory is created.
std::filesystem::path claim_output_dir(const std::filesystem::path& dir);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace stiffcrowd

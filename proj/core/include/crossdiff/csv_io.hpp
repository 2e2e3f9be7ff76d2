#pragma once

#include <string>
#include <vector>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/oracle.hpp"

namespace crossdiff {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Writes `x,u1,u2,sum` rows (one per node) to `path` and the diagnostics to
/// a sidecar with the extension replaced by `.meta`. Throws io-error.
void write_snapshot_csv(const Snapshot& snap, const std::string& path);

std::string meta_path_for(const std::string& csv_path);

struct SnapshotTable {
  std::vector<double> x, u1, u2, sum;
};

/// Parses a file written by write_snapshot_csv. Throws io-error or parse-error.
SnapshotTable read_snapshot_csv(const std::string& path);

/// `t,eta` rows. Throws io-error.
void write_trajectory_csv(const std::vector<TrajectorySample>& samples, const std::string& path);

}  // namespace crossdiff

#include "crossdiff/csv_io.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io_error, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io_error, "failed writing '" + path + "'");
}

std::string optional_value(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("none");
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error(ErrorKind::io_error, "cannot format number");
  return std::string(buf.data(), ptr);
}

std::string meta_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".meta");
  return p.string();
}

void write_snapshot_csv(const Snapshot& snap, const std::string& path) {
  require_same_mesh(snap.u1, snap.u2);
  {
    std::ofstream out = open_for_write(path);
    out << "x,u1,u2,sum\n";
    const Mesh1D& mesh = snap.u1.mesh();
    for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
      out << format_double(mesh.node(i)) << ',' << format_double(snap.u1[i]) << ','
          << format_double(snap.u2[i]) << ',' << format_double(snap.u1[i] + snap.u2[i]) << '\n';
    }
    finish(out, path);
  }
  const std::string meta = meta_path_for(path);
  std::ofstream out = open_for_write(meta);
  out << "t=" << format_double(snap.t) << '\n'
      << "mass1=" << format_double(snap.mass1) << '\n'
      << "mass2=" << format_double(snap.mass2) << '\n'
      << "segregation_defect=" << format_double(snap.segregation_defect) << '\n'
      << "contact_point=" << optional_value(snap.contact_point) << '\n'
      << "gradient_jump=" << optional_value(snap.gradient_jump) << '\n';
  finish(out, meta);
}

SnapshotTable read_snapshot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,u1,u2,sum") {
    throw Error(ErrorKind::parse_error, "line 1: expected header 'x,u1,u2,sum' in " + path);
  }
  SnapshotTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 4> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < 4; ++k) {
      auto [next, ec] = std::from_chars(p, end, row[k]);
      const bool sep_ok = k < 3 ? (next != end && *next == ',') : next == end;
      if (ec != std::errc() || !sep_ok) {
        std::ostringstream os;
        os << "line " << line_no << ": malformed row in " << path;
        throw Error(ErrorKind::parse_error, os.str());
      }
      p = next + (k < 3 ? 1 : 0);
    }
    table.x.push_back(row[0]);
    table.u1.push_back(row[1]);
    table.u2.push_back(row[2]);
    table.sum.push_back(row[3]);
  }
  return table;
}

void write_trajectory_csv(const std::vector<TrajectorySample>& samples, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "t,eta\n";
  for (const auto& s : samples) out << format_double(s.t) << ',' << format_double(s.eta) << '\n';
  finish(out, path);
}

}  // namespace crossdiff

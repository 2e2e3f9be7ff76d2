#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "crossdiff/config.hpp"
#include "crossdiff/csv_io.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/simulation.hpp"

namespace crossdiff::cli {

namespace {

namespace fs = std::filesystem;

std::string optional_text(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("none");
}

void prepare_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot create '" + dir + "': " + ec.message());
}

std::string snapshot_path(const std::string& dir, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "snapshot_%03zu.csv", index);
  return (fs::path(dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::io_error, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorKind::io_error, "failed writing '" + path + "'");
}

void report_snapshots(const std::vector<Snapshot>& snaps, const std::string& dir,
                      std::ostream& out) {
  out << "t,mass1,mass2,segregation_defect,contact_point,gradient_jump,file\n";
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const Snapshot& s = snaps[i];
    const std::string path = snapshot_path(dir, i);
    write_snapshot_csv(s, path);
    out << format_double(s.t) << ',' << format_double(s.mass1) << ',' << format_double(s.mass2)
        << ',' << format_double(s.segregation_defect) << ',' << optional_text(s.contact_point)
        << ',' << optional_text(s.gradient_jump) << ',' << path << '\n';
  }
}

void execute_eulerian(const SimulationConfig& cfg, const std::string& dir, std::ostream& out) {
  prepare_directory(dir);
  write_text((fs::path(dir) / "config.cfg").string(), render_config(cfg));
  const RunResult r = run_eulerian(cfg);
  out << "# eulerian: " << r.steps << " steps, max fixed-point iterations " << r.max_iterations
      << '\n';
  report_snapshots(r.snapshots, dir, out);
}

void execute_front(const SimulationConfig& cfg, const std::string& dir, std::ostream& out) {
  prepare_directory(dir);
  write_text((fs::path(dir) / "config.cfg").string(), render_config(cfg));
  const FrontRunResult r = run_fronttrack(cfg);
  const std::string traj = (fs::path(dir) / "trajectory.csv").string();
  write_trajectory_csv(r.trajectory, traj);
  out << "# fronttrack: " << r.trajectory.size() - 1 << " steps, final eta "
      << format_double(r.final_state.eta) << ", trajectory " << traj << '\n';
  report_snapshots(r.snapshots, dir, out);
}

void execute(const SimulationConfig& cfg, const std::string& dir, std::ostream& out) {
  if (cfg.model.solver == SolverKind::fronttrack) {
    execute_front(cfg, dir, out);
  } else {
    execute_eulerian(cfg, dir, out);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw Error(ErrorKind::invalid_argument, "bad number '" + item + "' in --values");
    }
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorKind::invalid_argument, "--values is empty");
  return values;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-species cross-diffusion solver with front tracking and closed-form checks",
               "crossdiff"};
  app.require_subcommand(1);

  std::string config_path, out_dir;

  auto* run_cmd = app.add_subcommand("run", "run a configuration file end to end");
  run_cmd->add_option("--config", config_path, "configuration file")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: output.directory)");

  double preset_t_final = 0.0;
  std::array<CLI::App*, 2> preset_cmds{};
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string name = i == 0 ? "exp1" : "exp2";
    preset_cmds[i] = app.add_subcommand(
        name, i == 0 ? "Experiment 1 preset (a1 = a2 = 1)" : "Experiment 2 preset (a1 = 1, a2 = 3)");
    preset_cmds[i]->add_option("--out", out_dir, "output directory (default: out)");
    preset_cmds[i]->add_option("--t-final", preset_t_final, "override the horizon")
        ->check(CLI::PositiveNumber);
  }

  std::size_t bar_n = 1000;
  double bar_tau = 1e-5, bar_t_final = 0.5, bar_tol = 1e-8;
  auto* bar_cmd = app.add_subcommand("validate-barenblatt",
                                     "single-species run against the Barenblatt profile");
  bar_cmd->add_option("--n", bar_n, "number of elements on (-6, 6)")->check(CLI::Range(2ul, 1ul << 24));
  bar_cmd->add_option("--tau", bar_tau, "time step")->check(CLI::PositiveNumber);
  bar_cmd->add_option("--t-final", bar_t_final, "horizon")->check(CLI::NonNegativeNumber);
  bar_cmd->add_option("--tol", bar_tol, "fixed-point tolerance")->check(CLI::NonNegativeNumber);

  auto* front_cmd = app.add_subcommand("front", "Lagrangian interface tracker");
  front_cmd->add_option("--config", config_path, "configuration file")->required();
  front_cmd->add_option("--out", out_dir, "output directory (default: output.directory)");

  std::string values_text, table_path;
  auto* sweep_cmd = app.add_subcommand("sweep-delta", "repeat a run for several delta values");
  sweep_cmd->add_option("--values", values_text, "comma-separated delta values")->required();
  sweep_cmd->add_option("--config", config_path, "configuration file")->required();
  sweep_cmd->add_option("--out", table_path, "also write the table to this CSV file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return usage_error;
  }

  try {
    if (run_cmd->parsed()) {
      const SimulationConfig cfg = load_config(config_path);
      execute(cfg, out_dir.empty() ? cfg.output.directory : out_dir, out);
    } else if (preset_cmds[0]->parsed() || preset_cmds[1]->parsed()) {
      SimulationConfig cfg = preset_config(preset_cmds[0]->parsed() ? "exp1" : "exp2");
      if (preset_t_final > 0.0) {
        cfg.time.t_final = preset_t_final;
        std::erase_if(cfg.output.snapshot_times, [&](double t) { return t > preset_t_final; });
        cfg.output.snapshot_times.push_back(preset_t_final);
      }
      execute(cfg, out_dir.empty() ? cfg.output.directory : out_dir, out);
    } else if (bar_cmd->parsed()) {
      const BarenblattCheck r = validate_barenblatt(bar_n, bar_tau, bar_t_final, bar_tol);
      out << "n=" << bar_n << " tau=" << format_double(bar_tau)
          << " t_final=" << format_double(bar_t_final) << '\n'
          << "linf_error=" << format_double(r.linf_error) << '\n'
          << "nodal_error=" << format_double(r.nodal_error) << '\n'
          << "steps=" << r.steps << '\n'
          << "max_iterations=" << r.max_iterations << '\n';
    } else if (front_cmd->parsed()) {
      SimulationConfig cfg = load_config(config_path);
      cfg.model.solver = SolverKind::fronttrack;
      execute_front(cfg, out_dir.empty() ? cfg.output.directory : out_dir, out);
    } else if (sweep_cmd->parsed()) {
      const std::vector<double> deltas = parse_list(values_text);
      const SimulationConfig cfg = load_config(config_path);
      const std::vector<DeltaSweepRow> rows = sweep_delta(cfg, deltas);
      std::ostringstream table;
      table << "delta,t,contact_point,gradient_jump,max_iterations\n";
      for (const DeltaSweepRow& row : rows) {
        table << format_double(row.delta) << ',' << format_double(row.t) << ','
              << optional_text(row.contact_point) << ',' << optional_text(row.gradient_jump)
              << ',' << row.max_iterations << '\n';
      }
      out << table.str();
      if (!table_path.empty()) write_text(table_path, table.str());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical_failure(e.kind()) ? numerical_failure : usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return ok;
}

}  // namespace crossdiff::cli

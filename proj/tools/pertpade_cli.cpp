// pertpade command line: demo-sqrt, solve, sweep, wavefunction, oracle.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 partial sweep.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "pertpade/pipeline.hpp"

using namespace pertpade;

namespace {

struct Flags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// Flags that map onto config keys; the file is read first, flags win.
void add_job_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "key=value config file");
  auto add = [&](const char* flag, const char* key, const char* help, int nargs = 1) {
    auto* opt = cmd->add_option_function<std::vector<std::string>>(
        flag,
        [&f, key](const std::vector<std::string>& v) {
          std::string joined;
          for (const auto& s : v) joined += (joined.empty() ? "" : " ") + s;
          f.overrides.emplace_back(key, joined);
        },
        help);
    opt->expected(nargs);
  };
  add("--potential", "potential", "poschl-teller|hulthen|power|flat-bottom|harmonic|coulomb|linear");
  add("--params", "params", "k=v,... potential parameters");
  add("--aux", "aux", "taylor:E|taylor-x:X|laurent|fit:family:a:b|explicit:...|identity");
  add("--levels", "levels", "comma list or a:b range");
  add("--order", "order", "perturbation order N");
  add("--pade", "pade", "L M", 2);
  add("--dim", "dim", "basis dimension");
  add("--accuracy", "accuracy", "matrix element accuracy");
  add("--out", "out", "CSV path (stdout if absent)");
  add("--jobs", "jobs", "worker threads (0: all cores)");
  add("--kinetic-scale", "kinetic_scale", "D = hbar^2 / 2 mu");
  add("--grid-lo", "grid_lo", "oracle grid start");
  add("--grid-hi", "grid_hi", "oracle grid end");
  add("--grid-npts", "grid_npts", "oracle interior points");
}

JobConfig load(const Flags& f) {
  JobConfig c = f.config_file.empty() ? JobConfig{} : JobConfig::from_file(f.config_file);
  for (const auto& [k, v] : f.overrides) c.set(k, v);
  return c;
}

void emit(const JobConfig& c, const std::string& kind, const std::string& csv) {
  if (c.out.empty()) {
    std::cout << csv;
    return;
  }
  write_file_atomic(c.out, csv);
  write_file_atomic(c.out + ".gp", gnuplot_script(kind, c.out));
}

void report(const SolveResult& r) {
  std::fprintf(stderr, "%s  basis %s  dim %d\n", r.config.potential.c_str(), r.basis.c_str(), r.dim);
  for (const auto& l : r.levels) {
    std::fprintf(stderr, "  n=%-3d E_pade %.12g  ref %.12g (%s)  rel %.2e  spread %.2e  poles %d%s%s\n", l.n,
                 l.e_pade, l.e_reference, l.reference_source.c_str(), l.rel_err, l.ladder_spread, l.pole_warnings,
                 l.note.empty() ? "" : "  ", l.note.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbation theory with Pade continuation for 1D and radial bound states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* demo = app.add_subcommand("demo-sqrt", "sqrt(1+x) series and its [2/2] Pade on [0, 10]");
  std::string demo_out;
  demo->add_option("--out", demo_out, "CSV path (stdout if absent)");

  Flags solve_f, sweep_f, wf_f, oracle_f;
  auto* solve_cmd = app.add_subcommand("solve", "energies for the requested levels");
  add_job_flags(solve_cmd, solve_f);

  auto* sweep_cmd = app.add_subcommand("sweep", "one solve per auxiliary construction");
  add_job_flags(sweep_cmd, sweep_f);
  std::vector<std::string> sweep_points;
  sweep_cmd->add_option("--point", sweep_points, "auxiliary spec per sweep point (repeatable)");
  std::vector<double> sweep_x;
  sweep_cmd->add_option("--x-e", sweep_x, "Taylor expansion points, shorthand for --point taylor-x:X");

  auto* wf_cmd = app.add_subcommand("wavefunction", "continued eigenfunction against the grid oracle");
  add_job_flags(wf_cmd, wf_f);
  int wf_level = -1, x_npts = 0;
  std::vector<double> x_range;
  wf_cmd->add_option("-n,--level", wf_level, "level");
  wf_cmd->add_option("--x-range", x_range, "output grid lo hi")->expected(2);
  wf_cmd->add_option("--x-npts", x_npts, "output grid points");

  auto* oracle_cmd = app.add_subcommand("oracle", "finite-difference reference spectrum");
  add_job_flags(oracle_cmd, oracle_f);
  int oracle_k = 4;
  oracle_cmd->add_option("-k,--count", oracle_k, "number of levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (demo->parsed()) {
      JobConfig c;
      c.out = demo_out;
      emit(c, "demo-sqrt", csv_demo_sqrt(demo_sqrt()));
    } else if (solve_cmd->parsed()) {
      const JobConfig c = load(solve_f);
      const SolveResult r = solve(c);
      report(r);
      emit(c, "solve", csv_solve(r));
    } else if (sweep_cmd->parsed()) {
      JobConfig c = load(sweep_f);
      for (const auto& p : sweep_points) c.sweep.push_back(AuxSpec::parse(p));
      for (double x : sweep_x) c.sweep.push_back(AuxSpec::parse("taylor-x:" + std::to_string(x)));
      const auto points = sweep(c);
      int failed = 0;
      for (const auto& p : points) {
        if (p.result) {
          std::fprintf(stderr, "[%s]\n", p.key.c_str());
          report(*p.result);
        } else {
          ++failed;
          std::fprintf(stderr, "[%s] failed: %s\n", p.key.c_str(), p.failure.c_str());
        }
      }
      emit(c, "sweep", csv_sweep(c, points));
      if (failed == static_cast<int>(points.size())) return 3;
      if (failed > 0) return 4;
    } else if (wf_cmd->parsed()) {
      JobConfig c = load(wf_f);
      if (wf_level >= 0) c.wf_level = wf_level;
      if (x_range.size() == 2) {
        c.x_lo = x_range[0];
        c.x_hi = x_range[1];
      }
      if (x_npts > 0) c.x_npts = x_npts;
      const auto w = wavefunction(c);
      std::fprintf(stderr, "n=%d overlap with oracle %.10f\n", w.n, w.overlap);
      emit(c, "wavefunction", csv_wavefunction(c, w));
    } else if (oracle_cmd->parsed()) {
      const JobConfig c = load(oracle_f);
      const Potential v = make_potential(c);
      const auto r = richardson_refine(v, oracle_grid(c, v), oracle_k);
      emit(c, "oracle", csv_oracle(c, r));
    }
  } catch (const StageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::Config ? 2 : 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::Config ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

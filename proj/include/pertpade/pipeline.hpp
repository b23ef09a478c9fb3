#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pertpade/errors.hpp"
#include "pertpade/oracle.hpp"
#include "pertpade/pade.hpp"

namespace pertpade {

inline constexpr const char* kVersion = "1.0.0";

// How the auxiliary H0 is built. Text forms:
//   taylor:E  taylor-x:X  laurent  fit:linear|quadratic:a:b
//   explicit:oscillator:c[:x0[:offset]]  explicit:coulomb:alpha
//   explicit:linear:k[:b]  identity  default
struct AuxSpec {
  std::string scheme = "default";
  std::vector<double> values;
  std::string family;  // fit / explicit

  static AuxSpec parse(const std::string& text);
  std::string str() const;
};

struct JobConfig {
  std::string potential = "poschl-teller";
  std::map<std::string, double> params;
  AuxSpec aux;
  std::vector<int> levels;  // empty: the potential's default set
  int order = 16;
  std::optional<std::pair<int, int>> pade;  // default [ceil(N/2) / floor(N/2)]
  int dim = 48;
  double accuracy = 1e-10;
  double kinetic_scale = 1.0;
  std::string out;
  int jobs = 0;

  // oracle grid; zeros mean default_grid
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  int grid_npts = 4000;

  // sweep points, one auxiliary per entry
  std::vector<AuxSpec> sweep;

  // wavefunction output grid
  int wf_level = -1;  // -1: the first requested level
  double x_lo = 0.0;
  double x_hi = 0.0;
  int x_npts = 401;

  // Applies one key=value pair. Error(Config) for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Flat key=value lines, '#' comments.
  static JobConfig from_file(const std::string& path);
  static JobConfig from_text(const std::string& text);

  // Recorded in every CSV header.
  std::string summary() const;
};

// A module failure tagged with the pipeline stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const Error& e)
      : std::runtime_error("stage " + stage + " failed: " + e.what()), stage_(std::move(stage)), kind_(e.kind()) {}
  const std::string& stage() const { return stage_; }
  ErrorKind kind() const { return kind_; }

 private:
  std::string stage_;
  ErrorKind kind_;
};

Potential make_potential(const JobConfig& config);
AuxiliarySplit make_split(const Potential& v, const AuxSpec& aux, double kinetic_scale);

// Levels tried when none are requested: 0..3 (oscillator) or 1..4 (radial);
// every bound level for Hulthen.
std::vector<int> default_levels(const Potential& v, const ExactBasis& basis);

// Closed-form spectrum where one exists (n counted from the basis origin of
// the potential's natural family).
std::optional<double> exact_energy(const Potential& v, int n, double kinetic_scale);

GridSpec oracle_grid(const JobConfig& config, const Potential& v);

struct LevelResult {
  int n = 0;
  double e_zeroth = 0.0;
  double e_poly = 0.0;
  double e_pade = 0.0;
  double ladder_spread = 0.0;
  int pole_warnings = 0;
  double e_reference = 0.0;
  std::string reference_source;  // exact / oracle
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::string note;
};

struct SolveResult {
  JobConfig config;
  int dim = 0;  // after the Coulomb cap
  std::string basis;
  std::vector<LevelResult> levels;
};

SolveResult solve(const JobConfig& config);

struct SweepPoint {
  std::string key;
  std::optional<SolveResult> result;
  std::string failure;
};

// One solve per entry of config.sweep, run over config.jobs threads; points
// come back in sweep order.
std::vector<SweepPoint> sweep(const JobConfig& config);

struct WavefunctionResult {
  int n = 0;
  std::vector<double> x;
  std::vector<double> pade;
  std::vector<double> oracle;
  double overlap = 0.0;
};

// psi on the line, u(r) on the half-line; both unit norm on the output grid
// and positive at their peak.
WavefunctionResult wavefunction(const JobConfig& config);

struct SqrtRow {
  double x, exact, polynomial, rational;
};
std::vector<SqrtRow> demo_sqrt();

// CSV writers. Fixed %.15g formatting, '\n' endings, one '#' comment line
// with the job summary, then the column header.
std::string csv_solve(const SolveResult& r);
std::string csv_sweep(const JobConfig& config, const std::vector<SweepPoint>& points);
std::string csv_wavefunction(const JobConfig& config, const WavefunctionResult& r);
std::string csv_oracle(const JobConfig& config, const RichardsonResult& r);
std::string csv_demo_sqrt(const std::vector<SqrtRow>& rows);

// gnuplot script plotting `csv_path`; `kind` is the subcommand name.
std::string gnuplot_script(const std::string& kind, const std::string& csv_path);

// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace pertpade

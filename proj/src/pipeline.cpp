#include "pertpade/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace pertpade {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    config_error("bad number '" + s + "' for " + what);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    config_error("bad integer '" + s + "' for " + what);
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// levels as "0,1,2" or ranges "0:7"
std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ",")) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(parse_int(item, "levels"));
    } else {
      const int a = parse_int(item.substr(0, colon), "levels");
      const int b = parse_int(item.substr(colon + 1), "levels");
      if (b < a) config_error("empty level range " + item);
      for (int n = a; n <= b; ++n) out.push_back(n);
    }
  }
  if (out.empty()) config_error("no levels given");
  return out;
}

std::pair<int, int> parse_pade(const std::string& text) {
  auto parts = split(text, "/, ");
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  if (parts.size() != 2) config_error("pade expects two degrees, got '" + text + "'");
  return {parse_int(parts[0], "pade L"), parse_int(parts[1], "pade M")};
}

std::pair<int, int> pade_pair(const JobConfig& c) { return c.pade.value_or(std::pair{(c.order + 1) / 2, c.order / 2}); }

double param(const Potential& v, const std::string& key) { return v.params.at(key); }

template <class F>
auto in_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

// poschl-teller strength for D != 1: s (s + 1) = beta (beta + 1) / D
double pt_strength(const Potential& v, double D) {
  const double b = param(v, "beta");
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * b * (b + 1.0) / D));
}

double hulthen_beta2(const Potential& v, double D) {
  const double r0 = param(v, "r0");
  return param(v, "V0") * r0 * r0 / D;
}

void validate(const JobConfig& c) {
  if (c.order < 2) config_error("order must be >= 2");
  if (c.dim < 3) config_error("dim must be >= 3");
  if (!(c.accuracy > 0.0)) config_error("accuracy must be positive");
  if (!(c.kinetic_scale > 0.0)) config_error("kinetic_scale must be positive");
  if (c.jobs < 0) config_error("jobs must be >= 0");
  const auto [L, M] = pade_pair(c);
  if (L < 0 || M < 0 || L + M > c.order) {
    config_error("pade [" + std::to_string(L) + "/" + std::to_string(M) + "] needs L + M <= order");
  }
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

// Unit norm, positive at the peak of `y`; returns the peak index.
std::size_t normalize_at_peak(const std::vector<double>& x, std::vector<double>& y) {
  std::vector<double> sq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sq[i] = y[i] * y[i];
  const double norm = std::sqrt(trapezoid(x, sq));
  std::size_t peak = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::fabs(y[i]) > std::fabs(y[peak])) peak = i;
  }
  const double s = (y[peak] < 0 ? -1.0 : 1.0) / norm;
  for (double& v : y) v *= s;
  return peak;
}

std::string header_line(const std::string& command, const std::string& body) {
  return std::string("# pertpade ") + kVersion + " " + command + " " + body + "\n";
}

const char* kSolveColumns =
    "n,E_zeroth,E_poly,E_pade,ladder_spread,pole_warning_count,E_reference,abs_err,rel_err";

std::string solve_row(const LevelResult& l) {
  return std::to_string(l.n) + "," + fmt(l.e_zeroth) + "," + fmt(l.e_poly) + "," + fmt(l.e_pade) + "," +
         fmt(l.ladder_spread) + "," + std::to_string(l.pole_warnings) + "," + fmt(l.e_reference) + "," +
         fmt(l.abs_err) + "," + fmt(l.rel_err);
}

}  // namespace

AuxSpec AuxSpec::parse(const std::string& text) {
  const auto parts = split(trim(text), ":");
  AuxSpec a;
  a.scheme = parts[0];
  auto numbers = [&](std::size_t from, std::size_t lo, std::size_t hi) {
    if (parts.size() < from + lo || parts.size() > from + hi) config_error("malformed aux spec '" + text + "'");
    for (std::size_t i = from; i < parts.size(); ++i) a.values.push_back(parse_double(parts[i], "aux " + a.scheme));
  };
  if (a.scheme == "taylor" || a.scheme == "taylor-x") {
    numbers(1, 1, 1);
  } else if (a.scheme == "laurent" || a.scheme == "identity" || a.scheme == "default") {
    numbers(1, 0, 0);
  } else if (a.scheme == "fit") {
    if (parts.size() < 2) config_error("fit needs a family: fit:linear:a:b");
    a.family = parts[1];
    if (a.family != "linear" && a.family != "quadratic") config_error("unknown fit family '" + a.family + "'");
    numbers(2, 2, 2);
    if (!(a.values[1] > a.values[0])) config_error("fit range needs a < b");
  } else if (a.scheme == "explicit") {
    if (parts.size() < 2) config_error("explicit needs a basis: explicit:oscillator:c");
    a.family = parts[1];
    if (a.family == "oscillator") {
      numbers(2, 1, 3);
    } else if (a.family == "coulomb") {
      numbers(2, 1, 1);
    } else if (a.family == "linear") {
      numbers(2, 1, 2);
    } else {
      config_error("unknown explicit basis '" + a.family + "'");
    }
  } else {
    config_error("unknown aux scheme '" + a.scheme + "'");
  }
  return a;
}

std::string AuxSpec::str() const {
  std::string s = scheme;
  if (!family.empty()) s += ":" + family;
  for (double v : values) s += ":" + fmt(v);
  return s;
}

void JobConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), value = trim(raw_value);
  if (key == "potential") {
    potential = value;
  } else if (key == "params") {
    params.clear();
    for (const auto& item : split(value, ",;")) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) config_error("params entry '" + item + "' is not key=value");
      params[trim(item.substr(0, eq))] = parse_double(item.substr(eq + 1), "param " + item.substr(0, eq));
    }
  } else if (key == "aux") {
    aux = AuxSpec::parse(value);
  } else if (key == "levels") {
    levels = parse_levels(value);
  } else if (key == "order") {
    order = parse_int(value, key);
  } else if (key == "pade") {
    pade = parse_pade(value);
  } else if (key == "dim") {
    dim = parse_int(value, key);
  } else if (key == "accuracy") {
    accuracy = parse_double(value, key);
  } else if (key == "kinetic_scale") {
    kinetic_scale = parse_double(value, key);
  } else if (key == "out") {
    out = value;
  } else if (key == "jobs") {
    jobs = parse_int(value, key);
  } else if (key == "grid_lo") {
    grid_lo = parse_double(value, key);
  } else if (key == "grid_hi") {
    grid_hi = parse_double(value, key);
  } else if (key == "grid_npts") {
    grid_npts = parse_int(value, key);
  } else if (key == "sweep") {
    sweep.clear();
    for (const auto& item : split(value, ";,")) {
      if (!item.empty()) sweep.push_back(AuxSpec::parse(item));
    }
  } else if (key == "level") {
    wf_level = parse_int(value, key);
  } else if (key == "x_lo") {
    x_lo = parse_double(value, key);
  } else if (key == "x_hi") {
    x_hi = parse_double(value, key);
  } else if (key == "x_npts") {
    x_npts = parse_int(value, key);
  } else {
    config_error("unknown config key '" + key + "'");
  }
}

JobConfig JobConfig::from_text(const std::string& text) {
  JobConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line " + std::to_string(lineno) + " is not key=value");
    c.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

JobConfig JobConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

std::string JobConfig::summary() const {
  std::string p;
  for (const auto& [k, v] : params) p += (p.empty() ? "" : ";") + k + "=" + fmt(v);
  std::string lv;
  for (int n : levels) lv += (lv.empty() ? "" : ";") + std::to_string(n);
  const auto [L, M] = pade_pair(*this);
  return "potential=" + potential + " params=" + (p.empty() ? "-" : p) + " aux=" + aux.str() +
         " levels=" + (lv.empty() ? "default" : lv) + " order=" + std::to_string(order) + " pade=" +
         std::to_string(L) + "/" + std::to_string(M) + " accuracy=" + fmt(accuracy) +
         " kinetic_scale=" + fmt(kinetic_scale);
}

Potential make_potential(const JobConfig& config) { return potentials::by_name(config.potential, config.params); }

AuxiliarySplit make_split(const Potential& v, const AuxSpec& aux, double D) {
  const std::string& s = aux.scheme;
  if (s == "default") {
    AuxSpec d;
    if (v.name == "poschl-teller") {
      d.scheme = "taylor-x";
      d.values = {0.0};
    } else if (v.name == "hulthen" || v.name == "coulomb") {
      d.scheme = "laurent";
    } else if (v.name == "power") {
      d = AuxSpec::parse("fit:linear:0:20");
    } else if (v.name == "flat-bottom") {
      d = AuxSpec::parse("explicit:oscillator:1");
    } else if (v.name == "harmonic") {
      d = AuxSpec::parse("explicit:oscillator:" + fmt(param(v, "c")));
    } else if (v.name == "linear") {
      d = AuxSpec::parse("explicit:linear:" + fmt(param(v, "k")) + ":" + fmt(param(v, "b")));
    } else if (v.domain == DomainKind::Line) {
      d.scheme = "taylor-x";
      d.values = {v.minimum.value_or(0.0)};
    } else {
      d.scheme = "laurent";
    }
    return make_split(v, d, D);
  }
  if (s == "identity") return identity_split(make_split(v, AuxSpec{}, D).basis);
  if (s == "taylor" || s == "taylor-x") {
    TaylorOptions o;
    o.kinetic_scale = D;
    if (s == "taylor") return taylor_auxiliary(v, aux.values[0], Side::Positive, o);
    const double x = aux.values[0];
    return taylor_auxiliary(v, v(x), x < v.minimum.value_or(0.0) ? Side::Negative : Side::Positive, o);
  }
  if (s == "laurent") return laurent_auxiliary(v, D);
  if (s == "fit") {
    FitOptions o;
    o.kinetic_scale = D;
    const auto family = aux.family == "linear" ? FitFamily::Linear : FitFamily::Quadratic;
    return fit_auxiliary(v, family, aux.values[0], aux.values[1], o);
  }
  if (s == "explicit") {
    const auto& a = aux.values;
    auto at = [&](std::size_t i) { return i < a.size() ? a[i] : 0.0; };
    if (aux.family == "oscillator") return explicit_auxiliary(v, ExactBasis::oscillator(a[0], at(1), at(2), D));
    if (aux.family == "coulomb") return explicit_auxiliary(v, ExactBasis::coulomb(a[0], D));
    return explicit_auxiliary(v, ExactBasis::linear(a[0], at(1), AiryZeros::Exact, D));
  }
  config_error("unknown aux scheme '" + s + "'");
}

std::vector<int> default_levels(const Potential& v, const ExactBasis& basis) {
  std::vector<int> out;
  if (v.name == "hulthen") {
    // bound while beta^2 - n^2 > 0
    const double b2 = hulthen_beta2(v, basis.kinetic_scale());
    for (int n = 1; n * n < b2; ++n) out.push_back(n);
    return out;
  }
  for (int k = 0; k < 4; ++k) out.push_back(basis.index_origin() + k);
  return out;
}

std::optional<double> exact_energy(const Potential& v, int n, double D) {
  if (v.name == "poschl-teller") {
    const double s = pt_strength(v, D);
    if (n < 0 || n >= s) return std::nullopt;
    return -D * (s - n) * (s - n);
  }
  if (v.name == "hulthen") {
    const double b2 = hulthen_beta2(v, D), r0 = param(v, "r0");
    if (n < 1 || n * n >= b2) return std::nullopt;
    const double t = (b2 - double(n) * n) / (2.0 * n * r0);
    return -D * t * t;
  }
  if (v.name == "harmonic") return ExactBasis::oscillator(param(v, "c"), 0.0, 0.0, D).eigenvalue(n);
  if (v.name == "coulomb") return ExactBasis::coulomb(param(v, "alpha"), D).eigenvalue(n);
  if (v.name == "linear") return ExactBasis::linear(param(v, "k"), param(v, "b"), AiryZeros::Exact, D).eigenvalue(n);
  return std::nullopt;
}

GridSpec oracle_grid(const JobConfig& c, const Potential& v) {
  GridSpec g = default_grid(v, c.grid_npts, c.kinetic_scale);
  if (c.grid_hi > c.grid_lo) {
    g.lo = c.grid_lo;
    g.hi = c.grid_hi;
  }
  return g;
}

SolveResult solve(const JobConfig& config) {
  validate(config);
  SolveResult r;
  r.config = config;
  const double D = config.kinetic_scale;

  const Potential v = in_stage("potentials", [&] { return make_potential(config); });
  const AuxiliarySplit s = in_stage("potentials", [&] { return make_split(v, config.aux, D); });
  const int origin = s.basis.index_origin();
  const bool identity = s.provenance.scheme == "identity";

  std::vector<int> levels = config.levels.empty() ? default_levels(v, s.basis) : config.levels;
  for (int n : levels) {
    if (n < origin) config_error("level " + std::to_string(n) + " is below the basis index origin " + std::to_string(origin));
    if (!identity && v.name == "hulthen" && !exact_energy(v, n, D)) {
      config_error("hulthen level " + std::to_string(n) + " is unbound (beta^2 - n^2 <= 0)");
    }
  }
  const int needed = *std::max_element(levels.begin(), levels.end()) - origin + 3;
  r.dim = effective_dim(s, config.dim, needed);
  r.basis = s.basis.describe();

  MatrixOptions mo;
  mo.jobs = config.jobs;
  const DeltaMatrix m = in_stage("matrix-elements", [&] { return build_delta_matrix(s, r.dim, config.accuracy, mo); });

  // references without a closed form come from one oracle run
  std::optional<RichardsonResult> oracle;
  auto reference = [&](int n) -> std::pair<double, std::string> {
    if (identity) return {s.basis.eigenvalue(n), "exact"};
    if (auto e = exact_energy(v, n, D)) return {*e, "exact"};
    if (!oracle) {
      const int k = *std::max_element(levels.begin(), levels.end()) - origin + 1;
      oracle = in_stage("oracle", [&] { return richardson_refine(v, oracle_grid(config, v), k); });
    }
    return {oracle->energies[n - origin], "oracle"};
  };

  ContinuationOptions co;
  co.requested = pade_pair(config);
  for (int n : levels) {
    const PerturbationSeries ser = in_stage("perturbation", [&] { return rs_expand(m, n, config.order); });
    const ContinuationResult c = in_stage("pade", [&] { return continue_to_one(ser, {}, co); });
    LevelResult l;
    l.n = n;
    l.e_zeroth = ser.energy_coeffs[0];
    l.e_poly = series_eval(ser, 1.0);
    l.e_pade = c.value_at_one;
    l.ladder_spread = c.spread;
    l.pole_warnings = static_cast<int>(c.pole_warnings.size());
    std::tie(l.e_reference, l.reference_source) = reference(n);
    l.abs_err = std::fabs(l.e_pade - l.e_reference);
    l.rel_err = l.e_reference != 0.0 ? l.abs_err / std::fabs(l.e_reference) : l.abs_err;
    l.note = c.note.empty() ? c.approximant.fallback : c.note;
    r.levels.push_back(l);
  }
  return r;
}

std::vector<SweepPoint> sweep(const JobConfig& config) {
  if (config.sweep.empty()) config_error("sweep needs at least one point");
  validate(config);
  std::vector<AuxSpec> points = config.sweep;
  std::stable_sort(points.begin(), points.end(), [](const AuxSpec& a, const AuxSpec& b) {
    return std::tie(a.scheme, a.family, a.values) < std::tie(b.scheme, b.family, b.values);
  });

  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = std::min<int>(config.jobs > 0 ? config.jobs : hw, points.size());
  std::vector<SweepPoint> out(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      JobConfig c = config;
      c.aux = points[i];
      c.sweep.clear();
      c.jobs = std::max(1, hw / workers);
      out[i].key = points[i].str();
      try {
        out[i].result = solve(c);
      } catch (const std::exception& e) {
        out[i].failure = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return out;
}

WavefunctionResult wavefunction(const JobConfig& config) {
  validate(config);
  const double D = config.kinetic_scale;
  const Potential v = in_stage("potentials", [&] { return make_potential(config); });
  const AuxiliarySplit s = in_stage("potentials", [&] { return make_split(v, config.aux, D); });
  const int origin = s.basis.index_origin();

  WavefunctionResult w;
  w.n = config.wf_level >= 0 ? config.wf_level
                             : (config.levels.empty() ? origin : config.levels.front());
  if (w.n < origin) config_error("level " + std::to_string(w.n) + " is below the basis index origin");
  const int dim = effective_dim(s, config.dim, w.n - origin + 3);

  MatrixOptions mo;
  mo.jobs = config.jobs;
  const DeltaMatrix m = in_stage("matrix-elements", [&] { return build_delta_matrix(s, dim, config.accuracy, mo); });
  const PerturbationSeries ser = in_stage("perturbation", [&] { return rs_expand(m, w.n, config.order); });
  const auto [L, M] = pade_pair(config);
  const StateContinuation st = in_stage("pade", [&] { return continue_state(ser, L, M); });

  const GridSpec g = oracle_grid(config, v);
  const GridSolution sol = in_stage("oracle", [&] { return grid_eigensolve(v, g, w.n - origin + 1); });

  double lo = config.x_lo, hi = config.x_hi;
  if (!(hi > lo)) {
    lo = g.lo;
    hi = g.hi;
  }
  if (config.x_npts < 2) config_error("x_npts must be >= 2");
  for (int i = 0; i < config.x_npts; ++i) {
    const double x = lo + (hi - lo) * i / (config.x_npts - 1);
    w.x.push_back(x);
    w.pade.push_back(synthesize_state(s.basis, st.coeffs, x, true));
    w.oracle.push_back(sol.interpolate(w.n - origin, x));
  }
  // odd states have two peaks of equal height, so the continued state takes
  // its sign at the oracle's peak rather than its own
  const std::size_t peak = normalize_at_peak(w.x, w.oracle);
  normalize_at_peak(w.x, w.pade);
  if (w.pade[peak] < 0) {
    for (double& v : w.pade) v = -v;
  }
  std::vector<double> prod(w.x.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = w.pade[i] * w.oracle[i];
  w.overlap = trapezoid(w.x, prod);
  return w;
}

std::vector<SqrtRow> demo_sqrt() {
  const std::vector<double> a{1.0, 0.5, -0.125, 0.0625, -5.0 / 128.0};
  const PadeApproximant p = pade_from_series(a, 2, 2);
  std::vector<SqrtRow> rows;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    rows.push_back({x, std::sqrt(1.0 + x), series_eval(a, x), pade_eval(p, x)});
  }
  return rows;
}

std::string csv_solve(const SolveResult& r) {
  std::string s = header_line("solve", r.config.summary() + " basis=" + r.basis + " dim=" + std::to_string(r.dim));
  s += std::string(kSolveColumns) + "\n";
  for (const auto& l : r.levels) s += solve_row(l) + "\n";
  return s;
}

std::string csv_sweep(const JobConfig& config, const std::vector<SweepPoint>& points) {
  std::string s = header_line("sweep", config.summary() + " dim=" + std::to_string(config.dim));
  for (const auto& p : points) {
    if (!p.result) s += "# failed " + p.key + ": " + p.failure + "\n";
  }
  s += "sweep_key,dim," + std::string(kSolveColumns) + "\n";
  for (const auto& p : points) {
    if (!p.result) continue;
    for (const auto& l : p.result->levels) s += p.key + "," + std::to_string(p.result->dim) + "," + solve_row(l) + "\n";
  }
  return s;
}

std::string csv_wavefunction(const JobConfig& config, const WavefunctionResult& r) {
  std::string s = header_line("wavefunction", config.summary() + " dim=" + std::to_string(config.dim) +
                                                   " n=" + std::to_string(r.n) + " overlap=" + fmt(r.overlap));
  s += "x,psi_pade,psi_oracle\n";
  for (std::size_t i = 0; i < r.x.size(); ++i) s += fmt(r.x[i]) + "," + fmt(r.pade[i]) + "," + fmt(r.oracle[i]) + "\n";
  return s;
}

std::string csv_oracle(const JobConfig& config, const RichardsonResult& r) {
  std::string s = header_line("oracle", "potential=" + config.potential + " kinetic_scale=" + fmt(config.kinetic_scale) +
                                            " npts=" + std::to_string(r.coarse.x.size()));
  for (const auto& w : r.coarse.warnings) s += "# warning " + w + "\n";
  s += "k,E,error,E_coarse,E_fine\n";
  for (std::size_t i = 0; i < r.energies.size(); ++i) {
    s += std::to_string(i) + "," + fmt(r.energies[i]) + "," + fmt(r.errors[i]) + "," + fmt(r.coarse.energies[i]) +
         "," + fmt(r.fine.energies[i]) + "\n";
  }
  return s;
}

std::string csv_demo_sqrt(const std::vector<SqrtRow>& rows) {
  std::string s = header_line("demo-sqrt", "series=1,1/2,-1/8,1/16,-5/128 pade=2/2");
  s += "x,exact,polynomial,rational\n";
  for (const auto& r : rows) s += fmt(r.x) + "," + fmt(r.exact) + "," + fmt(r.polynomial) + "," + fmt(r.rational) + "\n";
  return s;
}

std::string gnuplot_script(const std::string& kind, const std::string& csv_path) {
  std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
  const std::string f = "'" + csv_path + "'";
  if (kind == "demo-sqrt") {
    s += "set xlabel 'x'\nplot " + f + " using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines\n";
  } else if (kind == "solve") {
    s += "set xlabel 'n'\nset ylabel 'E'\nplot " + f +
         " using 1:4 with points pt 7, '' using 1:7 with lines, '' using 1:3 with points pt 4\n";
  } else if (kind == "sweep") {
    s += "set xlabel 'n'\nset ylabel 'relative error'\nset logscale y\n"
         "keys = system(\"grep -v '^#' " + csv_path + " | tail -n +2 | cut -d, -f1 | uniq\")\n"
         "plot for [k in keys] " + f + " using ((strcol(1) eq k) ? $3 : NaN):11 with linespoints title k\n";
  } else if (kind == "wavefunction") {
    s += "set xlabel 'x'\nplot " + f + " using 1:2 with lines, '' using 1:3 with points pt 6 ps 0.5\n";
  } else {
    s += "set xlabel 'k'\nset ylabel 'E'\nplot " + f + " using 1:2 with points pt 7\n";
  }
  return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) config_error("cannot write " + path);
    out << content;
    if (!out.flush()) config_error("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pertpade

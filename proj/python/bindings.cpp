#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pertpade/pipeline.hpp"

namespace py = pybind11;
using namespace pertpade;

namespace {

py::array_t<double> as_matrix(const DeltaMatrix& m) {
  py::array_t<double> a({m.dim, m.dim});
  std::copy(m.entries.begin(), m.entries.end(), a.mutable_data());
  return a;
}

py::list rows(const SolveResult& r) {
  py::list out;
  for (const auto& l : r.levels) {
    py::dict d;
    d["n"] = l.n;
    d["E_zeroth"] = l.e_zeroth;
    d["E_poly"] = l.e_poly;
    d["E_pade"] = l.e_pade;
    d["ladder_spread"] = l.ladder_spread;
    d["pole_warning_count"] = l.pole_warnings;
    d["E_reference"] = l.e_reference;
    d["reference"] = l.reference_source;
    d["abs_err"] = l.abs_err;
    d["rel_err"] = l.rel_err;
    d["note"] = l.note;
    out.append(d);
  }
  return out;
}

JobConfig config_from(const py::dict& kw) {
  JobConfig c;
  for (auto item : kw) {
    const auto key = py::str(item.first).cast<std::string>();
    if (key == "params" && py::isinstance<py::dict>(item.second)) {
      for (auto p : item.second.cast<py::dict>()) {
        c.params[py::str(p.first).cast<std::string>()] = p.second.cast<double>();
      }
    } else if (key == "levels" && py::isinstance<py::sequence>(item.second) && !py::isinstance<py::str>(item.second)) {
      c.levels = item.second.cast<std::vector<int>>();
    } else {
      c.set(key, py::str(item.second).cast<std::string>());
    }
  }
  return c;
}

// f applied elementwise; scalars in, scalar out.
template <class F>
py::object map_x(F f, const py::object& x) {
  if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) return py::float_(f(x.cast<double>()));
  auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(x);
  if (!in) throw py::type_error("expected a float or an array of floats");
  py::array_t<double> out(in.request().shape);
  const double* src = in.data();
  double* dst = out.mutable_data();
  for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = f(src[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_pertpade, m) {
  m.doc() = "Rayleigh-Schroedinger series continued by Pade approximants";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const StageError& e) {
      py::set_error(error, e.what());
    }
  });

  py::enum_<DomainKind>(m, "DomainKind").value("Line", DomainKind::Line).value("RadialHalfLine", DomainKind::RadialHalfLine);
  py::enum_<Side>(m, "Side").value("Positive", Side::Positive).value("Negative", Side::Negative);

  py::class_<ExactBasis>(m, "ExactBasis")
      .def_static("oscillator", &ExactBasis::oscillator, py::arg("curvature"), py::arg("center") = 0.0,
                  py::arg("offset") = 0.0, py::arg("kinetic_scale") = 1.0)
      .def_static("coulomb", &ExactBasis::coulomb, py::arg("alpha"), py::arg("kinetic_scale") = 1.0)
      .def_static(
          "linear",
          [](double k, double b, bool asymptotic, double D) {
            return ExactBasis::linear(k, b, asymptotic ? AiryZeros::Asymptotic : AiryZeros::Exact, D);
          },
          py::arg("slope"), py::arg("intercept"), py::arg("asymptotic_zeros") = false, py::arg("kinetic_scale") = 1.0)
      .def_property_readonly("index_origin", &ExactBasis::index_origin)
      .def_property_readonly("domain", &ExactBasis::domain)
      .def("eigenvalue", &ExactBasis::eigenvalue)
      .def("eigenfunction",
           [](const ExactBasis& b, int n, const py::object& x) {
             return map_x([&](double t) { return b.eigenfunction(n, t); }, x);
           })
      .def("reduced",
           [](const ExactBasis& b, int n, const py::object& x) {
             return map_x([&](double t) { return b.reduced(n, t); }, x);
           })
      .def("potential",
           [](const ExactBasis& b, const py::object& x) { return map_x([&](double t) { return b.potential(t); }, x); })
      .def("__repr__", &ExactBasis::describe);

  py::class_<Potential>(m, "Potential")
      .def_readonly("name", &Potential::name)
      .def_readonly("domain", &Potential::domain)
      .def_readonly("params", &Potential::params)
      .def("__call__", [](const Potential& v, const py::object& x) { return map_x(v.value, x); })
      .def("__repr__", &Potential::describe);
  m.def("potential", &potentials::by_name, py::arg("name"), py::arg("params") = std::map<std::string, double>{},
        "Built-in potential by name; missing parameters take the worked-example defaults.");
  m.def("builtin_potentials", &potentials::builtin_names);

  py::class_<AuxiliarySplit>(m, "AuxiliarySplit")
      .def_readonly("target", &AuxiliarySplit::target)
      .def_readonly("basis", &AuxiliarySplit::basis)
      .def("delta", [](const AuxiliarySplit& s, const py::object& x) { return map_x(s.delta, x); })
      .def_property_readonly("scheme", [](const AuxiliarySplit& s) { return s.provenance.scheme; })
      .def_property_readonly("parameters", [](const AuxiliarySplit& s) { return s.provenance.parameters; })
      .def_property_readonly("parity_even", &AuxiliarySplit::parity_even);

  m.def(
      "taylor_auxiliary",
      [](const Potential& v, double energy, Side side, double D) {
        TaylorOptions o;
        o.kinetic_scale = D;
        return taylor_auxiliary(v, energy, side, o);
      },
      py::arg("potential"), py::arg("energy"), py::arg("side") = Side::Positive, py::arg("kinetic_scale") = 1.0);
  m.def("laurent_auxiliary", &laurent_auxiliary, py::arg("potential"), py::arg("kinetic_scale") = 1.0);
  m.def(
      "fit_auxiliary",
      [](const Potential& v, const std::string& family, double lo, double hi, double D) {
        if (family != "linear" && family != "quadratic") throw Error(ErrorKind::Config, "family is linear or quadratic");
        FitOptions o;
        o.kinetic_scale = D;
        return fit_auxiliary(v, family == "linear" ? FitFamily::Linear : FitFamily::Quadratic, lo, hi, o);
      },
      py::arg("potential"), py::arg("family"), py::arg("lo"), py::arg("hi"), py::arg("kinetic_scale") = 1.0);
  m.def("explicit_auxiliary", &explicit_auxiliary, py::arg("potential"), py::arg("basis"));
  m.def("identity_split", &identity_split, py::arg("basis"));
  m.def(
      "make_split",
      [](const Potential& v, const std::string& spec, double D) { return make_split(v, AuxSpec::parse(spec), D); },
      py::arg("potential"), py::arg("spec") = "default", py::arg("kinetic_scale") = 1.0,
      "Auxiliary from a text spec: taylor:E, taylor-x:X, laurent, fit:family:a:b, explicit:..., identity.");

  py::class_<DeltaMatrix>(m, "DeltaMatrix")
      .def_readonly("dim", &DeltaMatrix::dim)
      .def_readonly("basis", &DeltaMatrix::basis)
      .def_readonly("parity_pruned", &DeltaMatrix::parity_pruned)
      .def_property_readonly("matrix", &as_matrix)
      .def("__getitem__", [](const DeltaMatrix& d, std::pair<int, int> ij) {
        if (ij.first < 0 || ij.second < 0 || ij.first >= d.dim || ij.second >= d.dim) throw py::index_error();
        return d(ij.first, ij.second);
      });
  m.def(
      "build_delta_matrix",
      [](const AuxiliarySplit& s, int dim, double accuracy, int jobs) {
        MatrixOptions o;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return build_delta_matrix(s, dim, accuracy, o);
      },
      py::arg("split"), py::arg("dim") = 48, py::arg("accuracy") = 1e-10, py::arg("jobs") = 0);

  py::class_<PerturbationSeries>(m, "PerturbationSeries")
      .def_readonly("level", &PerturbationSeries::level)
      .def_readonly("order", &PerturbationSeries::order)
      .def_readonly("energy_coeffs", &PerturbationSeries::energy_coeffs)
      .def_readonly("state_coeffs", &PerturbationSeries::state_coeffs)
      .def_readonly("condition", &PerturbationSeries::condition)
      .def("coefficient_series", &PerturbationSeries::coefficient_series)
      .def("__call__", [](const PerturbationSeries& s, double lam) { return series_eval(s, lam); });
  m.def("rs_expand", py::overload_cast<const DeltaMatrix&, int, int>(&rs_expand), py::arg("matrix"), py::arg("n"),
        py::arg("order") = 16);
  m.def(
      "rs_expand_raw",
      [](const std::vector<double>& delta, const std::vector<double>& energies, int position, int order) {
        return rs_expand(delta, energies, position, order);
      },
      py::arg("delta"), py::arg("energies"), py::arg("position"), py::arg("order"),
      "Recursion on a bare row-major matrix and its unperturbed energies.");
  m.def(
      "series_eval", [](const std::vector<double>& c, double lam) { return series_eval(c, lam); }, py::arg("coeffs"),
      py::arg("lam"));

  py::class_<PadeApproximant>(m, "PadeApproximant")
      .def_readonly("L", &PadeApproximant::L)
      .def_readonly("M", &PadeApproximant::M)
      .def_readonly("num", &PadeApproximant::num)
      .def_readonly("den", &PadeApproximant::den)
      .def_readonly("fallback", &PadeApproximant::fallback)
      .def_readonly("condition", &PadeApproximant::condition)
      .def("__call__", [](const PadeApproximant& p, const py::object& x) {
        return map_x([&](double t) { return pade_eval(p, t); }, x);
      });
  m.def(
      "pade_from_series", [](const std::vector<double>& c, int L, int M) { return pade_from_series(c, L, M); },
      py::arg("coeffs"), py::arg("L"), py::arg("M"));
  m.def("pade_eval", &pade_eval, py::arg("approximant"), py::arg("lam"));
  m.def(
      "poles",
      [](const PadeApproximant& p) {
        std::vector<std::pair<std::complex<double>, std::complex<double>>> out;
        for (const auto& z : poles(p)) out.emplace_back(z.location, z.residue);
        return out;
      },
      "(location, residue) pairs sorted by |location|.");

  py::class_<LadderRung>(m, "LadderRung")
      .def_readonly("L", &LadderRung::L)
      .def_readonly("M", &LadderRung::M)
      .def_readonly("ok", &LadderRung::ok)
      .def_readonly("value", &LadderRung::value)
      .def_readonly("note", &LadderRung::note);
  py::class_<ContinuationResult>(m, "ContinuationResult")
      .def_readonly("value", &ContinuationResult::value_at_one)
      .def_readonly("L", &ContinuationResult::L)
      .def_readonly("M", &ContinuationResult::M)
      .def_readonly("ladder", &ContinuationResult::ladder)
      .def_readonly("spread", &ContinuationResult::spread)
      .def_readonly("approximant", &ContinuationResult::approximant)
      .def_readonly("note", &ContinuationResult::note)
      .def_property_readonly("pole_warnings", [](const ContinuationResult& r) {
        std::vector<std::complex<double>> z;
        for (const auto& p : r.pole_warnings) z.push_back(p.location);
        return z;
      });
  m.def(
      "continue_to_one",
      [](const std::vector<double>& c, std::optional<int> L, std::optional<int> M, double lam) {
        ContinuationOptions o;
        o.lambda = lam;
        if (L && M) o.requested = std::pair{*L, *M};
        return continue_to_one(c, o);
      },
      py::arg("coeffs"), py::arg("L") = py::none(), py::arg("M") = py::none(), py::arg("lam") = 1.0);

  py::class_<GridSolution>(m, "GridSolution")
      .def_readonly("x", &GridSolution::x)
      .def_readonly("energies", &GridSolution::energies)
      .def_readonly("vectors", &GridSolution::vectors)
      .def_readonly("warnings", &GridSolution::warnings);
  py::class_<RichardsonResult>(m, "RichardsonResult")
      .def_readonly("energies", &RichardsonResult::energies)
      .def_readonly("errors", &RichardsonResult::errors)
      .def_readonly("fine", &RichardsonResult::fine);
  m.def(
      "grid_eigensolve",
      [](const Potential& v, double lo, double hi, int npts, int k, double D) {
        py::gil_scoped_release release;
        return grid_eigensolve(v, GridSpec{lo, hi, npts, D}, k);
      },
      py::arg("potential"), py::arg("lo"), py::arg("hi"), py::arg("npts"), py::arg("k"), py::arg("kinetic_scale") = 1.0);
  m.def(
      "richardson_refine",
      [](const Potential& v, std::optional<double> lo, std::optional<double> hi, int npts, int k, double D) {
        GridSpec g = default_grid(v, npts, D);
        if (lo) g.lo = *lo;
        if (hi) g.hi = *hi;
        py::gil_scoped_release release;
        return richardson_refine(v, g, k);
      },
      py::arg("potential"), py::arg("lo") = py::none(), py::arg("hi") = py::none(), py::arg("npts") = 2048,
      py::arg("k") = 4, py::arg("kinetic_scale") = 1.0);

  m.def(
      "solve",
      [](py::kwargs kw) {
        const JobConfig c = config_from(kw);
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = solve(c);
        }
        return rows(r);
      },
      "Run the full pipeline. Keywords are config keys (potential, params, aux, levels, order, pade, dim, ...); "
      "returns one dict per level.");
  m.def(
      "solve_csv",
      [](py::kwargs kw) {
        const JobConfig c = config_from(kw);
        py::gil_scoped_release release;
        return csv_solve(solve(c));
      },
      "As solve, rendered as the CLI's CSV.");
}

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpsim/analytic_models.hpp"
#include "dpsim/errors.hpp"
#include "dpsim/parallel.hpp"
#include "dpsim/phase_sequences.hpp"
#include "dpsim/scan.hpp"
#include "dpsim/special_functions.hpp"
#include "dpsim/su2.hpp"
#include "dpsim/tdse.hpp"
#include "dpsim/verify.hpp"
#include "dpsim/waveforms.hpp"

namespace py = pybind11;
using namespace dpsim;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<double> rows_array(const ScanTable& t) {
    const std::size_t n = t.rows.size(), m = t.columns.size();
    py::array_t<double> out({n, m});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) view(i, j) = t.rows[i][j];
    return out;
}

py::array_t<std::complex<double>> matrix_array(const Propagator2& u) {
    py::array_t<std::complex<double>> out({2, 2});
    auto view = out.mutable_unchecked<2>();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) view(i, j) = u.element(i, j);
    return out;
}

PhaseList phase_list(const std::vector<double>& v) { return PhaseList{v}; }

IntegratorConfig integrator(double rel_tol, double abs_tol, const std::string& picture) {
    IntegratorConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    if (picture == "interaction") cfg.picture = Picture::Interaction;
    else if (picture != "schroedinger") throw InvalidArgument("picture: expected schroedinger or interaction, got '" + picture + "'");
    cfg.validate();
    return cfg;
}

FamilySpec make_family(const std::string& name, int n, double delta, std::optional<std::vector<double>> phases,
                       double tau, const std::string& shape, double static_detuning, bool normalize_areas,
                       double rel_tol, double abs_tol, const std::string& picture) {
    FamilySpec f;
    f.family = phases ? Family::Custom : parse_family(name);
    if (f.family == Family::Custom && !phases) throw InvalidArgument("family 'file' needs phases");
    if (phases) f.custom = phase_list(*phases);
    f.n = f.family == Family::Universal ? 5 : n;
    f.delta = delta;
    f.tau = tau;
    f.shape = parse_shape(shape);
    f.static_detuning = static_detuning;
    f.normalize_areas = normalize_areas;
    f.integrator = integrator(rel_tol, abs_tol, picture);
    return f;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Detuning-pulse composite sequences: propagators, TDSE integration and parameter scans.";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<Propagator2>(m, "Propagator")
        .def(py::init<std::complex<double>, std::complex<double>>(), py::arg("a") = 1.0, py::arg("b") = 0.0)
        .def_property_readonly("a", &Propagator2::a)
        .def_property_readonly("b", &Propagator2::b)
        .def_property_readonly("probability", [](const Propagator2& u) { return transition_probability(u); })
        .def("matrix", &matrix_array, "2x2 complex matrix [[a, b], [-conj(b), conj(a)]]")
        .def("inverse", &Propagator2::inverse)
        .def("unitarity_defect", &Propagator2::unitarity_defect)
        .def("__matmul__", [](const Propagator2& later, const Propagator2& earlier) { return later * earlier; })
        .def("__repr__", [](const Propagator2& u) {
            return "Propagator(a=" + py::repr(py::cast(u.a())).cast<std::string>() +
                   ", b=" + py::repr(py::cast(u.b())).cast<std::string>() + ")";
        });

    m.def("rotation", &rotation, py::arg("theta"));
    m.def("resonant_propagator", &resonant_propagator, py::arg("area"));
    m.def("with_phase", &with_phase, py::arg("u"), py::arg("phi"));
    m.def("max_abs_diff_up_to_phase", &max_abs_diff_up_to_phase);

    m.def("complex_gamma", &complex_gamma, py::arg("z"));
    m.def("log_gamma", &log_gamma, py::arg("z"));
    m.def("gamma_ratio_rz", &gamma_ratio_rz, py::arg("alpha"), py::arg("tau"), py::arg("delta0_tau"));

    m.def("rz_propagator", [](double alpha, double tau, double delta) { return rz_propagator({alpha, tau, delta}); },
          py::arg("alpha"), py::arg("tau"), py::arg("delta"));
    m.def(
        "model_propagator",
        [](const std::string& model, double alpha, double tau, double delta) {
            return model_propagator(parse_model(model), {alpha, tau, delta});
        },
        py::arg("model"), py::arg("alpha"), py::arg("tau"), py::arg("delta") = 2.0 / 3.0);
    m.def(
        "limit_probability",
        [](const std::string& model, double alpha, double delta) { return limit_probability(parse_model(model), alpha, delta); },
        py::arg("model"), py::arg("alpha"), py::arg("delta") = 2.0 / 3.0);
    m.def(
        "series_term",
        [](const std::string& model, double delta) {
            const SeriesTerm s = series_coefficient_check(parse_model(model), delta);
            return py::dict(py::arg("order") = s.order, py::arg("coefficient") = s.coefficient,
                            py::arg("order_residual") = s.order_residual,
                            py::arg("probability_order") = s.probability_order);
        },
        py::arg("model"), py::arg("delta") = 2.0 / 3.0);

    m.def("bb_phases", [](int n) { return bb_phases(n).phases; }, py::arg("n"));
    m.def("nb_phases", [](int n) { return nb_phases(n).phases; }, py::arg("n"));
    m.def("universal_phases", [] { return universal_phases().phases; });
    m.def(
        "phases_to_areas", [](const std::vector<double>& p, bool normalize) { return phases_to_areas(phase_list(p), normalize).areas; },
        py::arg("phases"), py::arg("normalize") = false);
    m.def(
        "cp_limit_propagator",
        [](const std::vector<double>& p, double alpha, double det) { return cp_limit_propagator(phase_list(p), alpha, det); },
        py::arg("phases"), py::arg("alpha"), py::arg("static_detuning") = 0.0);

    m.def(
        "propagate_sequence",
        [](const std::vector<double>& p, double alpha, double tau, const std::string& shape, double det, bool normalize,
           double rel_tol, double abs_tol, const std::string& picture) {
            const SequenceSpec spec = build_sequence(phase_list(p), alpha, tau, parse_shape(shape), det, normalize);
            const IntegratorConfig cfg = integrator(rel_tol, abs_tol, picture);
            py::gil_scoped_release release;
            return propagate(sample(spec), cfg);
        },
        py::arg("phases"), py::arg("alpha"), py::arg("tau"), py::arg("shape") = "sech", py::arg("static_detuning") = 0.0,
        py::arg("normalize_areas") = false, py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12,
        py::arg("picture") = "schroedinger",
        "TDSE propagator of the detuning-pulse waveform for a phase list.");
    m.def(
        "sequence_text",
        [](const std::vector<double>& p, double alpha, double tau, const std::string& shape, double det) {
            return to_text(build_sequence(phase_list(p), alpha, tau, parse_shape(shape), det));
        },
        py::arg("phases"), py::arg("alpha"), py::arg("tau"), py::arg("shape") = "sech", py::arg("static_detuning") = 0.0);
    m.def(
        "propagate_sequence_text",
        [](const std::string& text, double rel_tol, double abs_tol) {
            const SequenceSpec spec = sequence_from_text(text);
            const IntegratorConfig cfg = integrator(rel_tol, abs_tol, "schroedinger");
            py::gil_scoped_release release;
            return propagate(sample(spec), cfg);
        },
        py::arg("text"), py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);

    py::class_<ScanTable>(m, "ScanTable")
        .def_readonly("columns", &ScanTable::columns)
        .def_property_readonly("data", &rows_array, "rows x columns float array")
        .def_property_readonly("metadata",
                               [](const ScanTable& t) {
                                   py::dict d;
                                   for (const auto& [k, v] : t.metadata) d[py::str(k)] = v;
                                   return d;
                               })
        .def_property_readonly("axes",
                               [](const ScanTable& t) {
                                   py::list l;
                                   for (const Axis& a : t.axes)
                                       l.append(py::make_tuple(a.name, a.unit, to_array(a.grid)));
                                   return l;
                               })
        .def("column", [](const ScanTable& t, const std::string& name) { return to_array(t.column(name)); })
        .def("to_csv", [](const ScanTable& t) { return to_csv(t); })
        .def_static("from_csv", [](const std::string& text) { return csv_from_string(text); })
        .def("__len__", [](const ScanTable& t) { return t.rows.size(); });

    py::class_<FamilySpec>(m, "Family")
        .def(py::init(&make_family), py::arg("name") = "bb", py::arg("n") = 3, py::arg("delta") = 2.0 / 3.0,
             py::arg("phases") = py::none(), py::arg("tau") = 0.05, py::arg("shape") = "sech",
             py::arg("static_detuning") = 0.0, py::arg("normalize_areas") = false, py::arg("rel_tol") = 1e-10,
             py::arg("abs_tol") = 1e-12, py::arg("picture") = "schroedinger")
        .def_property_readonly("label", &FamilySpec::label)
        .def_property_readonly("phases", [](const FamilySpec& f) { return f.phases().phases; })
        .def_readonly("tau", &FamilySpec::tau);

    const auto engine = [](const std::string& e) { return parse_engine(e); };
    m.def(
        "evaluate",
        [engine](const FamilySpec& f, double alpha, double det, const std::string& e) {
            py::gil_scoped_release release;
            return evaluate(f, alpha, det, engine(e));
        },
        py::arg("family"), py::arg("alpha"), py::arg("static_detuning") = 0.0, py::arg("engine") = "tdse");
    m.def(
        "profile",
        [engine](const FamilySpec& f, const std::vector<double>& alpha, const std::string& e) {
            py::gil_scoped_release release;
            return profile_scan(f, alpha, engine(e));
        },
        py::arg("family"), py::arg("alpha"), py::arg("engine") = "tdse");
    m.def(
        "width_study",
        [](const FamilySpec& f, const std::vector<double>& alpha, const std::vector<double>& taus) {
            WidthStudy w;
            {
                py::gil_scoped_release release;
                w = width_study(f, alpha, taus);
            }
            py::list summary;
            for (const WidthSummary& s : w.summary)
                summary.append(py::dict(py::arg("tau") = s.tau, py::arg("sup_dev_window") = s.sup_dev_window,
                                        py::arg("sup_dev_grid") = s.sup_dev_grid));
            return py::make_tuple(w.table, summary);
        },
        py::arg("family"), py::arg("alpha"), py::arg("taus"));
    m.def(
        "scan2d",
        [engine](const FamilySpec& f, const std::vector<double>& alpha, const std::vector<double>& det, const std::string& e) {
            py::gil_scoped_release release;
            return scan2d(f, alpha, det, engine(e));
        },
        py::arg("family"), py::arg("alpha"), py::arg("detuning"), py::arg("engine") = "tdse");
    m.def(
        "order_estimate",
        [](const FamilySpec& f, double at, const std::string& q, double lo, double hi, std::size_t points) {
            const OrderFit o = order_estimate(f, at, parse_quantity(q), lo, hi, points);
            return py::dict(py::arg("slope") = o.slope, py::arg("coefficient") = o.coefficient,
                            py::arg("residual") = o.residual, py::arg("points") = o.points);
        },
        py::arg("family"), py::arg("at") = 1.0, py::arg("quantity") = "1-P", py::arg("eps_lo") = 1e-3,
        py::arg("eps_hi") = 1e-2, py::arg("points") = 21);
    m.def(
        "shape_comparison",
        [](const FamilySpec& f, double tau, const std::vector<double>& alpha, const std::vector<std::string>& names) {
            std::vector<PulseShape> shapes;
            for (const auto& s : names) shapes.push_back(parse_shape(s));
            ShapeComparison c;
            {
                py::gil_scoped_release release;
                c = shape_comparison(f, tau, alpha, shapes);
            }
            return py::make_tuple(c.table, c.max_pairwise_deviation);
        },
        py::arg("family"), py::arg("tau"), py::arg("alpha"),
        py::arg("shapes") = std::vector<std::string>{"sech", "gaussian", "lorentzian", "rectangular"});
    m.def("parse_range", [](const std::string& s) { return to_array(parse_range(s)); }, py::arg("spec"));

    m.def("thread_count", &thread_count);
    m.def("set_thread_count", &set_thread_count, py::arg("n"), "0 restores the default");

    m.def(
        "run_criterion",
        [](int id) {
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = run_criterion(id);
            }
            return py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("passed") = r.passed,
                            py::arg("detail") = r.detail, py::arg("seconds") = r.seconds);
        },
        py::arg("id"));
}

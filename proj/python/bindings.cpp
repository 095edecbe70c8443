#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "legendre/catalog.hpp"
#include "legendre/derived.hpp"
#include "legendre/error.hpp"
#include "legendre/expression.hpp"
#include "legendre/io.hpp"
#include "legendre/synthesis.hpp"

namespace py = pybind11;
using namespace legendre;

namespace {

using Pair = std::pair<double, double>;

// pybind11 holders cannot be shared_ptr<const T>
struct Plane {
    PlanePtr ptr;
    const NormedPlane& operator*() const { return *ptr; }
};

Vec2 vec(const Pair& p) { return {p.first, p.second}; }
Pair tup(Vec2 v) { return {v.x, v.y}; }

py::dict pair_dict(const CurvaturePair& cp) {
    py::dict d;
    d["t"] = cp.t;
    d["alpha"] = cp.alpha;
    d["kappa"] = cp.kappa;
    return d;
}

// The report goes through the same JSON the CLI writes.
std::string report_text(const LegendreCurve& L) {
    return io::report_json(singularity_report(L, curvature_pair(L))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Legendre curves in smooth strictly convex normed planes";

    static py::exception<Error> error(m, "LegendreError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyObject* type = error.ptr();
            py::object instance = py::handle(type)(e.what());
            instance.attr("kind") = std::string(to_string(e.kind()));
            instance.attr("exit_code") = io::exit_code_for(e.kind());
            PyErr_SetObject(type, instance.ptr());
        }
    });

    py::class_<Plane>(m, "Plane")
        .def("norm", [](const Plane& P, Pair v) { return (*P).norm(vec(v)); })
        .def("antinorm", [](const Plane& P, Pair v) { return (*P).antinorm(vec(v)); })
        .def("rho", [](const Plane& P, Pair v) { return (*P).rho(vec(v)); })
        .def("birkhoff", [](const Plane& P, Pair v) { return tup((*P).birkhoff(vec(v))); })
        .def("birkhoff_inverse", [](const Plane& P, Pair v) { return tup((*P).birkhoff_inverse(vec(v))); })
        .def("circle_point", [](const Plane& P, double theta) { return tup((*P).circle_point(theta)); })
        .def_property_readonly("total_length", [](const Plane& P) { return (*P).total_length(); })
        .def("__repr__", [](const Plane& P) { return "<Plane " + describe((*P).spec()) + ">"; });

    m.def("euclidean", [] { return Plane{build_plane(NormSpec::euclidean())}; });
    m.def("lp", [](double p) { return Plane{build_plane(NormSpec::lp(p))}; }, py::arg("p"));
    m.def("fourier", [](std::vector<double> c) { return Plane{build_plane(NormSpec::fourier(std::move(c)))}; },
          py::arg("coefficients"));

    py::class_<LegendreCurve>(m, "LegendreCurve")
        .def("gamma", [](const LegendreCurve& L, double t) { return tup(L.gamma()(t)); })
        .def("eta", [](const LegendreCurve& L, double t) { return tup(L.eta()(t)); })
        .def("xi", [](const LegendreCurve& L, double t) { return tup(L.xi(t)); })
        .def("alpha", &LegendreCurve::alpha)
        .def("kappa", &LegendreCurve::kappa)
        .def("grid", &LegendreCurve::grid)
        .def_property_readonly("closed", &LegendreCurve::closed)
        .def_property_readonly("domain", [](const LegendreCurve& L) { return Pair{L.domain().t0, L.domain().t1}; })
        .def_property_readonly("residual", &LegendreCurve::residual)
        .def_property_readonly("plane", [](const LegendreCurve& L) { return Plane{L.plane_ptr()}; });

    m.def(
        "catalog",
        [](const std::string& name, const Plane& plane, std::vector<double> params, std::size_t samples) {
            return LegendreCurve::from_curve(plane.ptr, catalog::by_name(name, params, plane.ptr, samples));
        },
        py::arg("name"), py::arg("plane"), py::arg("params") = std::vector<double>{},
        py::arg("samples") = ParamCurve::kDefaultSamples);
    m.def(
        "from_expression",
        [](const std::string& x, const std::string& y, const Plane& plane, Pair domain, bool closed, std::size_t samples) {
            io::CurveSource src;
            src.kind = io::CurveSource::Kind::expression;
            src.x = x;
            src.y = y;
            src.domain = Domain{domain.first, domain.second, closed};
            src.closed = closed;
            src.samples = samples;
            return io::build_legendre(src, plane.ptr, {});
        },
        py::arg("x"), py::arg("y"), py::arg("plane"), py::arg("domain"), py::arg("closed") = false,
        py::arg("samples") = ParamCurve::kDefaultSamples);

    m.def("curvature_pair", [](const LegendreCurve& L) { return pair_dict(curvature_pair(L)); });
    m.def("singularity_report_json", &report_text);
    m.def("maslov_index", [](const LegendreCurve& L) {
        const MaslovIndex mi = maslov_index(L, curvature_pair(L));
        return py::make_tuple(mi.word_reduction, mi.flip_flop, mi.rotation);
    });

    m.def(
        "synthesize",
        [](const Plane& plane, std::function<double(double)> alpha, std::function<double(double)> kappa, Pair domain,
           bool closed, Pair p, Pair v, std::size_t steps) {
            SynthesisSpec s;
            s.alpha = std::move(alpha);
            s.kappa = std::move(kappa);
            s.domain = Domain{domain.first, domain.second, closed};
            s.p = vec(p);
            s.v = vec(v);
            s.steps = steps;
            return synthesize(plane.ptr, s);
        },
        py::arg("plane"), py::arg("alpha"), py::arg("kappa"), py::arg("domain"), py::arg("closed") = false,
        py::arg("p") = Pair{0, 0}, py::arg("v") = Pair{1, 0}, py::arg("steps") = 4096);

    m.def("evolute", [](const LegendreCurve& L) { return evolute(L).as_legendre(); });
    m.def("involute", [](const LegendreCurve& L, double d) { return involute(L, d); }, py::arg("curve"),
          py::arg("d") = 0.0);
    m.def("parallel", &parallel, py::arg("curve"), py::arg("d"));
    m.def(
        "pedal",
        [](const LegendreCurve& L, Pair p) {
            const PedalResult r = pedal(L, vec(p));
            py::dict d;
            std::vector<Pair> pts;
            for (double t : r.t) pts.push_back(tup(r.curve(t)));
            d["t"] = r.t;
            d["points"] = pts;
            d["singular"] = r.singular;
            d["frontal"] = r.frontal;
            d["min_distance"] = r.min_distance;
            return d;
        },
        py::arg("curve"), py::arg("p"));

    py::class_<Expression>(m, "Expression")
        .def("__call__", &Expression::operator())
        .def("__str__", &Expression::to_string)
        .def_property_readonly("warnings", &Expression::warnings);
    m.def("parse_expression", &parse_expression);

    m.def(
        "run_config",
        [](const std::filesystem::path& path, std::optional<std::size_t> samples,
           std::optional<std::filesystem::path> out_dir) {
            std::ostringstream out, err;
            io::RunOverrides ov;
            ov.samples = samples;
            ov.out_dir = out_dir;
            int code;
            try {
                code = io::run(io::load_config(path), ov, out, err);
            } catch (const Error& e) {
                err << e.what() << "\n";
                code = io::exit_code_for(e.kind());
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("path"), py::arg("samples") = py::none(), py::arg("out_dir") = py::none());
}

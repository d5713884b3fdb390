#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etacert/certifier.hpp"
#include "etacert/error.hpp"

namespace py = pybind11;
using namespace etacert;

namespace {

py::object to_fraction(const Rational& r)
{
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.str());
}

Rational from_python(const py::handle& x) { return Rational::parse(py::str(x).cast<std::string>()); }

py::list series_terms(const QSeries& s)
{
    py::list out;
    for (const auto& [n, c] : s.terms()) out.append(py::make_tuple(to_fraction(s.exponent_of(n)), to_fraction(c)));
    return out;
}

SL2Matrix matrix_from(const std::vector<long long>& m)
{
    if (m.size() != 4) throw invalid_input("matrix needs four entries a, b, c, d");
    return SL2Matrix(m[0], m[1], m[2], m[3]);
}

Subgroup group_from(const std::string& name)
{
    if (name == "gamma0") return Subgroup::gamma0;
    if (name == "gamma1") return Subgroup::gamma1;
    if (name == "gamma2") return Subgroup::gamma2;
    if (name == "gamma2_prime") return Subgroup::gamma2_prime;
    throw invalid_input("unknown group '" + name + "'");
}

QSeries expand(const std::string& function, long long p, std::optional<long long> index, long long prec,
               std::optional<Triplet> triplet)
{
    if (prec < 0) throw invalid_input("prec must be non-negative");
    const Rational steps(prec);
    if (function == "E") {
        const EtaIndex idx = reduce_index(index.value_or(1), p);
        return expand_E(idx.g_reduced, p, eta_leading_exponent(idx.g_reduced, p) + steps) * Rational(idx.sign);
    }
    if (function == "eta") {
        const long long s = index.value_or(1);
        if (s <= 0) throw invalid_input("eta scale must be positive");
        return expand_eta(s, Rational(s, 24) + steps);
    }
    if (function == "F") {
        const EtaProduct f = build_F(index.value_or(1), make_context(p));
        return expand_product(f, f.leading_exponent() + steps);
    }
    if (function == "G") {
        const EtaProduct g = build_G(triplet ? *triplet : find_triplet(p), p);
        return expand_product(g, g.leading_exponent() + steps);
    }
    if (function == "z") return build_z(make_context(p), z_leading_exponent(p) + steps);
    throw invalid_input("unknown function '" + function + "'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Generalized Dedekind eta products, congruence subgroups and per-prime certificates";

    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<computation_error>(m, "ComputationError", PyExc_RuntimeError);
    py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);

    m.def("bernoulli_B", [](const py::object& x) { return to_fraction(bernoulli_B(from_python(x))); }, py::arg("x"));
    m.def("sawtooth_P2", [](const py::object& x) { return to_fraction(sawtooth_P2(from_python(x))); }, py::arg("x"));
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("odd_primitive_root", &odd_primitive_root, py::arg("p"));
    m.def(
        "context",
        [](long long p) {
            const PrimeContext c = make_context(p);
            py::dict d;
            d["p"] = c.p();
            d["g"] = c.g();
            d["k"] = c.k();
            d["ell"] = c.ell();
            d["Np"] = c.Np();
            return d;
        },
        py::arg("p"));

    py::class_<QSeries>(m, "QSeries")
        .def_property_readonly("terms", &series_terms)
        .def_property_readonly("truncation",
                               [](const QSeries& s) -> py::object {
                                   if (!s.truncation()) return py::none();
                                   return to_fraction(*s.truncation());
                               })
        .def("coefficient", [](const QSeries& s, const py::object& e) { return to_fraction(s.coefficient(from_python(e))); })
        .def("__str__", &QSeries::str)
        .def("__repr__", [](const QSeries& s) { return "QSeries(" + s.str() + ")"; });

    m.def("expand", &expand, py::arg("function"), py::arg("p"), py::arg("index") = py::none(), py::arg("prec") = 10,
          py::arg("triplet") = py::none());
    m.def("find_triplet", &find_triplet, py::arg("p"));

    m.def("psi", [](const std::vector<long long>& g) { return psi(matrix_from(g)); }, py::arg("matrix"));
    m.def(
        "chi", [](long long p, const std::vector<long long>& g) { return chi(matrix_from(g), make_context(p)); },
        py::arg("p"), py::arg("matrix"));
    m.def(
        "epsilon",
        [](const std::vector<long long>& g) {
            const SL2Matrix x = matrix_from(g);
            const RootOfUnity z = epsilon(x.a(), x.b(), x.c(), x.d());
            return py::make_tuple(z.exponent(), z.order());
        },
        py::arg("matrix"), "Returns (n, M) with epsilon = exp(2 pi i n / M).");
    m.def(
        "cusps",
        [](long long p, const std::string& group) {
            py::list out;
            for (const auto& e : cusp_set({group_from(group), make_context(p)})) {
                py::dict d;
                d["a"] = e.cusp.a();
                d["c"] = e.cusp.c();
                d["width"] = e.width;
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("group") = "gamma2");

    m.def(
        "certify_json",
        [](long long p, long long h, long long steps, std::uint64_t seed) {
            CertConfig config;
            config.h = h;
            config.steps = steps;
            config.seed = seed;
            CertReport r;
            {
                py::gil_scoped_release release;
                r = certify(p, config);
            }
            return to_json(r).dump();
        },
        py::arg("p"), py::arg("h") = 1, py::arg("steps") = 10, py::arg("seed") = CertConfig{}.seed);
}

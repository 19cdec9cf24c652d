#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "sgc/components.hpp"
#include "sgc/grassmann.hpp"
#include "sgc/parser.hpp"
#include "sgc/scenario.hpp"

namespace py = pybind11;
using namespace sgc;

namespace {

std::string grade_str(Grade g) {
    switch (g) {
        case Grade::Even: return "even";
        case Grade::Odd: return "odd";
        default: return "mixed";
    }
}

Coef coef_from(const std::string& re, const std::string& im) {
    Rat r(re), i(im);
    r.canonicalize();
    i.canonicalize();
    return Coef(std::move(r), std::move(i));
}

// Grassmann algebra with a fixed generator count.
struct PyAlgebra {
    int k;
    explicit PyAlgebra(int k_) : k(k_) {
        if (k_ < 1 || k_ > 62) throw Error("generator count out of range");
    }
    Supernumber gen(int i) const {
        if (i < 1 || i > k) throw Error("generator index out of range");
        return Supernumber::generator(k, i, Coef::one());
    }
    Supernumber scalar(const std::string& re, const std::string& im) const {
        return Supernumber::scalar(k, coef_from(re, im));
    }
};

struct PyWorkspace;

struct PyExpr {
    std::shared_ptr<Scenario> sc;
    Expr e;
};

// A scenario (built-in name or inline .scn text) with its symbol table, used
// as the context for parsing and manipulating expressions.
struct PyWorkspace {
    std::shared_ptr<Scenario> sc;

    explicit PyWorkspace(const std::string& name_or_text) {
        bool inline_text = name_or_text.find('\n') != std::string::npos;
        sc = std::make_shared<Scenario>(inline_text ? parse_scenario(name_or_text)
                                                    : load_scenario(name_or_text));
    }

    PyExpr parse(const std::string& text) const { return {sc, parse_expr(text, sc->tab.get())}; }

    std::string verify_json(const std::vector<std::string>& checks, int generators) const {
        RunOptions opt;
        for (auto& c : checks) {
            if (c == "all")
                opt = RunOptions::all();
            else if (c == "tables")
                opt.tables = true;
            else if (c == "zcc")
                opt.zcc = true;
            else if (c == "invariance")
                opt.invariance = true;
            else if (c == "classify")
                opt.classify = true;
            else if (c == "spectral")
                opt.spectral = true;
            else
                throw Error("unknown check: " + c);
        }
        opt.generators_k = generators;
        return report_json(run_scenario(*sc, opt));
    }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Grassmann-graded superfield calculus and structural-equation verification";

    py::register_exception<Error>(m, "SgcError");

    py::class_<Supernumber>(m, "Supernumber")
        .def("__add__", [](const Supernumber& a, const Supernumber& b) { return a + b; })
        .def("__sub__", [](const Supernumber& a, const Supernumber& b) { return a - b; })
        .def("__mul__", [](const Supernumber& a, const Supernumber& b) { return a * b; })
        .def("__neg__", [](const Supernumber& a) { return -a; })
        .def("__eq__", [](const Supernumber& a, const Supernumber& b) { return a == b; })
        .def("is_zero", &Supernumber::is_zero)
        .def("grade", [](const Supernumber& a) { return grade_str(a.grade()); })
        .def("invert", [](const Supernumber& a) { return invert(a); })
        .def("exp", [](const Supernumber& a) { return apply_even_function(FnSym::exp(), a); })
        .def("sin", [](const Supernumber& a) { return apply_even_function(FnSym::sin(), a); })
        .def("cos", [](const Supernumber& a) { return apply_even_function(FnSym::cos(), a); })
        .def("__repr__", [](const Supernumber& a) { return to_string(a); });

    py::class_<PyAlgebra>(m, "Algebra")
        .def(py::init<int>(), py::arg("generators") = 8)
        .def_readonly("generators", &PyAlgebra::k)
        .def("gen", &PyAlgebra::gen, py::arg("i"))
        .def("scalar", &PyAlgebra::scalar, py::arg("re") = "1", py::arg("im") = "0")
        .def("one", [](const PyAlgebra& a) { return a.scalar("1", "0"); })
        .def("zero", [](const PyAlgebra& a) { return a.scalar("0", "0"); });

    py::class_<PyExpr>(m, "Expr")
        .def("__add__", [](const PyExpr& a, const PyExpr& b) { return PyExpr{a.sc, a.e + b.e}; })
        .def("__sub__", [](const PyExpr& a, const PyExpr& b) { return PyExpr{a.sc, a.e - b.e}; })
        .def("__mul__", [](const PyExpr& a, const PyExpr& b) { return PyExpr{a.sc, a.e * b.e}; })
        .def("__neg__", [](const PyExpr& a) { return PyExpr{a.sc, -a.e}; })
        .def("__eq__", [](const PyExpr& a, const PyExpr& b) { return equal_strong(a.e, b.e); })
        .def("is_zero", [](const PyExpr& a) { return is_zero_strong(a.e); })
        .def("grade", [](const PyExpr& a) { return grade_str(a.e.grade_of()); })
        .def("diff",
             [](const PyExpr& a, const std::string& op) {
                 return PyExpr{a.sc, apply_op(a.e, superop_from_name(op))};
             },
             py::arg("op"), "apply dxp, dxm, dtp, dtm, Dp, Dm, Jp or Jm")
        .def("components",
             [](const PyExpr& a) {
                 ThetaTuple t = expand_components(a.e);
                 std::vector<PyExpr> out;
                 for (int j = 0; j < 4; ++j) out.push_back({a.sc, t.c[j]});
                 return out;
             },
             "coefficients of 1, tp, tm, tp*tm")
        .def("__repr__", [](const PyExpr& a) { return a.e.str(); });

    py::class_<PyWorkspace>(m, "Workspace")
        .def(py::init<const std::string&>(), py::arg("scenario"),
             "built-in scenario name, path handled by verify(), or inline scenario text")
        .def("parse", &PyWorkspace::parse, py::arg("text"))
        .def_property_readonly("name",
                               [](const PyWorkspace& w) { return w.sc->name; })
        .def("_verify_json", &PyWorkspace::verify_json, py::arg("checks"),
             py::arg("generators") = 8);

    m.def("scenario_names", [] { return builtin_scenario_names(); });
    m.def("scenario_text",
          [](const std::string& n) { return builtin_scenario_text(n); });
    m.def("_verify_json",
          [](const std::string& name, const std::vector<std::string>& checks, int generators) {
              PyWorkspace w(name);
              return w.verify_json(checks, generators);
          });
}

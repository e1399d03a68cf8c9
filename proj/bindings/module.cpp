#include "curvestats/census.hpp"
#include "curvestats/cli.hpp"
#include "curvestats/exactcomb.hpp"
#include "curvestats/rmt.hpp"
#include "curvestats/traceformula.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace curvestats;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(to_fraction_string(r));
}

py::object big_to_int(const Integer& v) {
    static py::object py_int = py::module_::import("builtins").attr("int");
    return py_int(v.str());
}

Rational rational_from_py(const py::object& obj) {
    if (py::isinstance<py::int_>(obj)) return Rational(Integer(py::str(obj).cast<std::string>()));
    return parse_fraction(py::str(obj).cast<std::string>());
}

py::object json_to_py(const nlohmann::json& j) {
    static py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

rmt::ExperimentParams make_params(int g, long q, long samples, uint64_t seed, int n_max,
                                  const std::string& method, int workers, double epsilon,
                                  bool discreteness, bool positivity, bool more_positivity,
                                  int max_index) {
    rmt::ExperimentParams p;
    p.g = g;
    p.q = q;
    p.num_samples = samples;
    p.seed = seed;
    p.n_max = n_max;
    p.method = rmt::parse_method(method);
    p.workers = workers;
    p.config.epsilon = epsilon;
    p.config.discreteness = discreteness;
    p.config.positivity = positivity;
    p.config.more_positivity = more_positivity;
    p.config.max_index = max_index;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point-count statistics of curves over finite fields: exact predictions, "
              "trace bounds, symplectic random-matrix experiments, exhaustive censuses";

    // exact combinatorics
    m.def("partition_numbers", [](int D) {
        py::list out;
        for (const auto& p : exactcomb::partition_numbers(D)) out.append(big_to_int(p));
        return out;
    }, py::arg("depth"));
    m.def("hilbert_dimensions", [](int n, int D) {
        py::list out;
        for (const auto& d : exactcomb::graded_dimensions(n, D)) out.append(big_to_int(d));
        return out;
    }, py::arg("n"), py::arg("depth"));
    m.def("multiset_count", [](int n, int j) { return big_to_int(binomial(n + j - 1, j)); },
          py::arg("n"), py::arg("j"));
    m.def("lambda_of_q", [](long q) { return to_fraction(exactcomb::lambda_of_q(Integer(q))); },
          py::arg("q"));
    m.def("stirling2", [](int n, int k) { return big_to_int(exactcomb::stirling2(n, k)); },
          py::arg("n"), py::arg("k"));
    m.def("predicted_moment",
          [](int n, long q) { return to_fraction(exactcomb::predicted_moment(n, Integer(q))); },
          py::arg("n"), py::arg("q"));
    m.def("predicted_falling_moment",
          [](int n, long q) { return to_fraction(exactcomb::predicted_falling_moment(n, Integer(q))); },
          py::arg("n"), py::arg("q"));
    m.def("hs_ratio_closed_form",
          [](int n, long q) { return to_fraction(exactcomb::hs_ratio_closed_form(n, Integer(q))); },
          py::arg("n"), py::arg("q"));
    m.def("poisson_pmf", [](int n, const py::object& lam, int digits) {
        auto v = exactcomb::poisson_pmf(n, rational_from_py(lam), digits);
        return py::make_tuple(v.value(), v.error());
    }, py::arg("n"), py::arg("lam"), py::arg("digits") = 50,
       "pmf value and certified error radius");

    // trace formula bookkeeping
    m.def("dimension_d", &traceformula::dimension_d, py::arg("g"), py::arg("n"));
    m.def("stable_trace_normalized", [](int g, int n, long q) {
        return to_fraction(traceformula::stable_trace_normalized(g, n, Integer(q)));
    }, py::arg("g"), py::arg("n"), py::arg("q"));
    m.def("unstable_tail_exact", [](int g, int n, long q) {
        return to_fraction(traceformula::unstable_tail_exact(g, n, Integer(q)));
    }, py::arg("g"), py::arg("n"), py::arg("q"));
    m.def("ratio_prediction", [](int g, int n, long q) {
        return to_fraction(traceformula::ratio_prediction(g, n, Integer(q)));
    }, py::arg("g"), py::arg("n"), py::arg("q"));
    m.def("subexp_constant", &traceformula::subexp_constant, py::arg("n"), py::arg("scan_limit"));
    m.def("cohomology_log_bound", &traceformula::cohomology_log_bound, py::arg("g"), py::arg("n"));
    m.def("kprime_search", [](double K, int n, long g_max) {
        auto rep = traceformula::kprime_search(K, n, g_max);
        py::dict d;
        d["found"] = rep.found;
        d["g0"] = rep.g0;
        d["first_pass"] = rep.first_pass;
        d["last_violation"] = rep.last_violation;
        d["violations"] = rep.violations;
        d["num_sampled"] = rep.sampled.size();
        return d;
    }, py::arg("K"), py::arg("n"), py::arg("g_max"));

    // random-matrix experiment
    m.def("sample_phases", [](int g, uint64_t seed, uint64_t stream, const std::string& method) {
        Xoshiro256pp rng(seed, stream);
        return rmt::sample(rmt::parse_method(method), g, rng).phases;
    }, py::arg("g"), py::arg("seed"), py::arg("stream") = 0, py::arg("method") = "matrix");
    m.def("implied_point_counts", [](const std::vector<double>& phases, long q, int m) {
        rmt::SymplecticSample s;
        s.g = static_cast<int>(phases.size());
        s.phases = phases;
        return rmt::implied_point_counts(s, q, m).values;
    }, py::arg("phases"), py::arg("q"), py::arg("m"));
    m.def("run_experiment",
          [](int g, long q, long samples, uint64_t seed, int n_max, const std::string& method,
             int workers, double epsilon, bool discreteness, bool positivity, bool more_positivity,
             int max_index) {
              auto params = make_params(g, q, samples, seed, n_max, method, workers, epsilon,
                                        discreteness, positivity, more_positivity, max_index);
              return json_to_py(cli::rmt_payload(rmt::run_experiment(params)));
          },
          py::arg("g"), py::arg("q"), py::arg("samples"), py::arg("seed"), py::arg("n_max") = 6,
          py::arg("method") = "matrix", py::arg("workers") = 1, py::arg("epsilon") = 0.05,
          py::arg("discreteness") = true, py::arg("positivity") = true,
          py::arg("more_positivity") = true, py::arg("max_index") = 6);

    // census
    m.def("run_census", [](const std::string& kind, int p, int k, int n_max, int max_ext, int workers) {
        return json_to_py(cli::census_payload(census::parse_kind(kind), p, k, n_max, max_ext, workers));
    }, py::arg("kind"), py::arg("p"), py::arg("k") = 1, py::arg("n_max") = 4,
       py::arg("max_ext") = 4, py::arg("workers") = 1);
    m.def("hyperelliptic_point_count",
          [](int p, int k, const std::vector<uint32_t>& h, const std::vector<uint32_t>& f, int ext) {
              auto c = census::CurveEquation::genus2(h, f);
              return census::point_count(c, FiniteField::get(p, k), ext);
          },
          py::arg("p"), py::arg("k"), py::arg("h"), py::arg("f"), py::arg("ext") = 1,
          "projective point count of y^2 + h(x) y = f(x) over F_{p^k}^ext "
          "(coefficients ascending, as field element indices)");
    m.def("field_modulus", [](int p, int k) { return FiniteField::get(p, k).modulus_string(); },
          py::arg("p"), py::arg("k"));

    m.attr("__version__") = cli::kVersion;
}

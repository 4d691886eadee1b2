#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "lcgc/causality.hpp"
#include "lcgc/distributions.hpp"
#include "lcgc/selection.hpp"
#include "lcgc/simulation.hpp"
#include "lcgc/version.hpp"

namespace py = pybind11;
using namespace lcgc;

namespace {

std::string repr_test_result(const CausalityTestResult& r) {
    std::ostringstream out;
    out << "CausalityTestResult(f_value=" << r.f_value << ", d1=" << r.d1 << ", d2=" << r.d2
        << ", p_value=" << r.p_value << ")";
    return out.str();
}

std::string repr_decision(const StepwiseDecision& d) {
    std::ostringstream out;
    out << "StepwiseDecision(interaction_detected=" << (d.interaction_detected ? "True" : "False")
        << ", noise_corr_detected=" << (d.noise_corr_detected ? "True" : "False") << ", tests="
        << d.p_value_trail.size() << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Granger causality tests robust to delayed latent common inputs";
    m.attr("__version__") = kVersion;

    const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError", base);
    py::register_exception<SampleSizeError>(m, "SampleSizeError", base);
    py::register_exception<MulticollinearityError>(m, "MulticollinearityError", base);
    py::register_exception<DegenerateError>(m, "DegenerateError", base);
    py::register_exception<StationarityError>(m, "StationarityError", base);
    py::register_exception<DomainError>(m, "DomainError", base);

    py::class_<TimeSeriesPair>(m, "TimeSeriesPair")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("x"), py::arg("y"))
        .def_property_readonly("x", &TimeSeriesPair::x)
        .def_property_readonly("y", &TimeSeriesPair::y)
        .def("__len__", &TimeSeriesPair::length);

    py::class_<LagConfig>(m, "LagConfig")
        .def(py::init([](int l_a, int l_b, int l_c, int l_eta) {
                 LagConfig lags{l_a, l_b, l_c, l_eta};
                 lags.validate();
                 return lags;
             }),
             py::arg("l_a"), py::arg("l_b"), py::arg("l_c"), py::arg("l_eta") = 1)
        .def_readonly("l_a", &LagConfig::l_a)
        .def_readonly("l_b", &LagConfig::l_b)
        .def_readonly("l_c", &LagConfig::l_c)
        .def_readonly("l_eta", &LagConfig::l_eta)
        .def_property_readonly("l_max", &LagConfig::l_max);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init([](double sigma_x, double sigma_y, double rho, int delay) {
                 NoiseSpec spec{sigma_x, sigma_y, rho, delay};
                 spec.validate();
                 return spec;
             }),
             py::arg("sigma_x") = 1.0, py::arg("sigma_y") = 1.0, py::arg("rho") = 0.0,
             py::arg("delay") = 1)
        .def_readwrite("sigma_x", &NoiseSpec::sigma_x)
        .def_readwrite("sigma_y", &NoiseSpec::sigma_y)
        .def_readwrite("rho", &NoiseSpec::rho)
        .def_readwrite("delay", &NoiseSpec::delay);

    py::class_<ReparameterizedNoise>(m, "ReparameterizedNoise")
        .def_readonly("tau", &ReparameterizedNoise::tau)
        .def_readonly("eta", &ReparameterizedNoise::eta)
        .def_readonly("sigma_y", &ReparameterizedNoise::sigma_y)
        .def_property_readonly("sigma_xx", &ReparameterizedNoise::sigma_xx)
        .def_property_readonly("sigma_xy", &ReparameterizedNoise::sigma_xy)
        .def_property_readonly("sigma_yy", &ReparameterizedNoise::sigma_yy);

    m.def("reparameterize", &reparameterize, py::arg("noise"),
          "Map (sigma_x, sigma_y, rho) to the (tau, eta, sigma_y) parameterization.");

    py::class_<SimModelSpec>(m, "SimModelSpec")
        .def(py::init())
        .def_readwrite("a1", &SimModelSpec::a1)
        .def_readwrite("a2", &SimModelSpec::a2)
        .def_readwrite("b1", &SimModelSpec::b1)
        .def_readwrite("b2", &SimModelSpec::b2)
        .def_readwrite("c1", &SimModelSpec::c1)
        .def_readwrite("c2", &SimModelSpec::c2)
        .def_readwrite("noise", &SimModelSpec::noise)
        .def_readwrite("burn_in", &SimModelSpec::burn_in)
        .def_readwrite("T", &SimModelSpec::T)
        .def_property_readonly("spectral_radius", &SimModelSpec::spectral_radius);

    m.def(
        "preset", [](const std::string& model) {
            if (model.size() != 1) throw InvalidArgumentError("model must be a, b, c or d");
            return preset(model[0]);
        },
        py::arg("model"), "Simulation presets 'a'..'d'.");
    m.def("generate", &generate, py::arg("spec"), py::arg("seed"),
          "Simulate a TimeSeriesPair from the model spec; deterministic in the seed.");

    py::class_<CausalityTestResult>(m, "CausalityTestResult")
        .def_readonly("f_value", &CausalityTestResult::f_value)
        .def_readonly("d1", &CausalityTestResult::d1)
        .def_readonly("d2", &CausalityTestResult::d2)
        .def_readonly("p_value", &CausalityTestResult::p_value)
        .def_readonly("rss_null", &CausalityTestResult::rss_null)
        .def_readonly("rss_alt", &CausalityTestResult::rss_alt)
        .def_readonly("n_used", &CausalityTestResult::n_used)
        .def("__repr__", &repr_test_result);

    m.def("normal_gc_test", &normal_gc_test, py::arg("pair"), py::arg("l_a"), py::arg("l_c"),
          "Standard nested-model Granger causality F test.");
    m.def("proposed_gc_test", &proposed_gc_test, py::arg("pair"), py::arg("lags"),
          "Two-stage test with the lagged source-residual column in both models.");
    m.def("noise_corr_test", &noise_corr_test, py::arg("pair"), py::arg("l_a"), py::arg("l_b"),
          py::arg("l_eta"), py::arg("include_y_lags") = std::nullopt,
          "F test of the noise-correlation coefficient eta at one lag.");
    m.def(
        "partial_gc_measure",
        [](const Eigen::Matrix2d& S, const Eigen::Matrix3d& Sigma) {
            return partial_gc_measure(PartialGcInputs{S, Sigma});
        },
        py::arg("S"), py::arg("Sigma"),
        "Partial-GC comparison measure ln(R1/R2); no significance test attached.");

    py::enum_<Term>(m, "Term")
        .value("interaction", Term::interaction)
        .value("noise_corr", Term::noise_corr);

    py::class_<TrailRecord>(m, "TrailRecord")
        .def_readonly("term", &TrailRecord::term)
        .def_readonly("lag", &TrailRecord::lag)
        .def_readonly("p_value", &TrailRecord::p_value)
        .def_readonly("threshold", &TrailRecord::threshold)
        .def_readonly("adopted", &TrailRecord::adopted);

    py::class_<StepwiseDecision>(m, "StepwiseDecision")
        .def_readonly("interaction_detected", &StepwiseDecision::interaction_detected)
        .def_readonly("noise_corr_detected", &StepwiseDecision::noise_corr_detected)
        .def_readonly("selected_l_c", &StepwiseDecision::selected_l_c)
        .def_readonly("selected_l_eta", &StepwiseDecision::selected_l_eta)
        .def_readonly("p_value_trail", &StepwiseDecision::p_value_trail)
        .def_readonly("aborted_for_collinearity", &StepwiseDecision::aborted_for_collinearity)
        .def("__repr__", &repr_decision);

    m.def("stepwise_decide", &stepwise_decide, py::arg("pair"), py::arg("l_a"), py::arg("l_b"),
          py::arg("fwer") = 0.05, py::arg("max_lag_search") = 6,
          "BIC lag search plus step-down multiple test for both candidate terms.");
    m.def("stepwise_decide_normal", &stepwise_decide_normal, py::arg("pair"), py::arg("l_a"),
          py::arg("alpha") = 0.05, py::arg("max_lag_search") = 6,
          "Baseline: BIC-select the y-lag block and run the normal GC test.");

    m.def(
        "f_cdf", [](double x, int d1, int d2) { return f_cdf(x, FParams{d1, d2}); }, py::arg("x"),
        py::arg("d1"), py::arg("d2"));
    m.def(
        "f_quantile", [](double p, int d1, int d2) { return f_quantile(p, FParams{d1, d2}); },
        py::arg("p"), py::arg("d1"), py::arg("d2"));
    m.def("chi2_cdf", &chi2_cdf, py::arg("x"), py::arg("dof"));
}

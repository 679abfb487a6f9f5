// Python bindings for the rescuefx core. Exposes the normal-theory helpers,
// scenario model, trial simulator, estimators, Monte-Carlo harness, and
// bootstrap; long-running entry points release the GIL.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "rescuefx/bootstrap.hpp"
#include "rescuefx/datagen.hpp"
#include "rescuefx/errors.hpp"
#include "rescuefx/estimators.hpp"
#include "rescuefx/io.hpp"
#include "rescuefx/mc_harness.hpp"
#include "rescuefx/model.hpp"
#include "rescuefx/normal_math.hpp"

namespace py = pybind11;
using namespace rescuefx;

namespace {

std::string fmt_stat(const SummaryStat& s) {
    std::ostringstream os;
    os << "SummaryStat(mean=" << s.mean << ", sd=";
    if (s.sd)
        os << *s.sd;
    else
        os << "None";
    os << ", n=" << s.n << ")";
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-visit rescue-rule trial simulator and truncation-corrected "
              "estimators (C++ core)";

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<degeneracy_error>(m, "DegeneracyError");
    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<io_error>(m, "IoError");

    // ---------------------------------------------------------- normal_math
    m.def("std_pdf", &std_pdf, py::arg("x"), "Standard normal density.");
    m.def("std_cdf", &std_cdf, py::arg("x"),
          "Standard normal distribution function.");
    m.def("hazard", &hazard, py::arg("x"),
          "Inverse Mills ratio phi(x) / (1 - Phi(x)).");

    py::class_<TruncatedMoments>(m, "TruncatedMoments")
        .def_readonly("mean", &TruncatedMoments::mean)
        .def_readonly("second_moment", &TruncatedMoments::second_moment)
        .def_readonly("variance", &TruncatedMoments::variance)
        .def("__repr__", [](const TruncatedMoments& t) {
            std::ostringstream os;
            os << "TruncatedMoments(mean=" << t.mean
               << ", second_moment=" << t.second_moment
               << ", variance=" << t.variance << ")";
            return os.str();
        });
    m.def("truncated_moments", &truncated_moments, py::arg("mu"),
          py::arg("sigma"), py::arg("c"),
          "Moments of X ~ N(mu, sigma^2) conditional on X > c.");

    py::class_<SlopeResidual>(m, "SlopeResidual")
        .def_readonly("slope", &SlopeResidual::slope)
        .def_readonly("residual_sd", &SlopeResidual::residual_sd);
    m.def("conditional_slope_and_residual", &conditional_slope_and_residual,
          py::arg("sigma11"), py::arg("sigma12"), py::arg("sigma22"),
          "Regression slope of Y2 on Y1 and the residual SD.");

    // ----------------------------------------------------------------- model
    py::class_<ScenarioParams>(m, "ScenarioParams")
        .def(py::init<>())
        .def_readwrite("alpha1", &ScenarioParams::alpha1)
        .def_readwrite("beta1", &ScenarioParams::beta1)
        .def_readwrite("alpha2", &ScenarioParams::alpha2)
        .def_readwrite("beta2", &ScenarioParams::beta2)
        .def_readwrite("gamma", &ScenarioParams::gamma)
        .def_readwrite("delta", &ScenarioParams::delta)
        .def_readwrite("sigma11_by_arm", &ScenarioParams::sigma11_by_arm)
        .def_readwrite("sigma22_by_cell", &ScenarioParams::sigma22_by_cell)
        .def_readwrite("sigma12_by_cell", &ScenarioParams::sigma12_by_cell)
        .def_readwrite("c", &ScenarioParams::c)
        .def_readwrite("n0", &ScenarioParams::n0)
        .def_readwrite("n1", &ScenarioParams::n1)
        .def("validate", &ScenarioParams::validate)
        .def("__repr__", [](const ScenarioParams& p) {
            std::ostringstream os;
            os << "ScenarioParams(alpha1=" << p.alpha1 << ", beta1=" << p.beta1
               << ", alpha2=" << p.alpha2 << ", beta2=" << p.beta2
               << ", gamma=" << p.gamma << ", delta=" << p.delta
               << ", c=" << p.c << ", n0=" << p.n0 << ", n1=" << p.n1 << ")";
            return os.str();
        });

    m.def("mu1", &mu1, py::arg("params"), py::arg("z"));
    m.def("mu2", &mu2, py::arg("params"), py::arg("z"), py::arg("r"));
    m.def("true_biological_effect", &true_biological_effect, py::arg("params"));
    m.def("true_itt_effect", &true_itt_effect, py::arg("params"));
    m.def(
        "params_from_kv",
        [](const std::string& text) {
            std::istringstream in(text);
            return params_from_kv(in);
        },
        py::arg("text"), "Parse a scenario from `key = value` lines.");
    m.def(
        "params_to_kv",
        [](const ScenarioParams& p) {
            std::ostringstream out;
            params_to_kv(p, out);
            return out.str();
        },
        py::arg("params"), "Serialize a scenario to `key = value` lines.");

    py::class_<StrataRow>(m, "StrataRow")
        .def(py::init([](std::string stratum, double proportion,
                         double mean_control, double mean_treatment) {
                 return StrataRow{std::move(stratum), proportion, mean_control,
                                  mean_treatment};
             }),
             py::arg("stratum"), py::arg("proportion"), py::arg("mean_control"),
             py::arg("mean_treatment"))
        .def_readwrite("stratum", &StrataRow::stratum)
        .def_readwrite("proportion", &StrataRow::proportion)
        .def_readwrite("mean_control", &StrataRow::mean_control)
        .def_readwrite("mean_treatment", &StrataRow::mean_treatment);

    py::class_<StrataTable>(m, "StrataTable")
        .def(py::init<>())
        .def(py::init([](std::vector<StrataRow> rows) {
                 return StrataTable{std::move(rows)};
             }),
             py::arg("rows"))
        .def_readwrite("rows", &StrataTable::rows)
        .def("validate", &StrataTable::validate);

    py::class_<StrataEffects>(m, "StrataEffects")
        .def_readonly("per_stratum", &StrataEffects::per_stratum)
        .def_readonly("itt_effect", &StrataEffects::itt_effect)
        .def_readonly("stratum00_effect", &StrataEffects::stratum00_effect);
    m.def("strata_effects", &strata_effects, py::arg("table"),
          "Per-stratum effects, their ITT mixture, and the always-untreated "
          "stratum effect when present.");

    // --------------------------------------------------------------- datagen
    py::class_<SubjectRecord>(m, "SubjectRecord")
        .def_readonly("id", &SubjectRecord::id)
        .def_readonly("z", &SubjectRecord::z)
        .def_readonly("y1", &SubjectRecord::y1)
        .def_readonly("r", &SubjectRecord::r)
        .def_readonly("y2", &SubjectRecord::y2)
        .def("__repr__", [](const SubjectRecord& s) {
            std::ostringstream os;
            os << "SubjectRecord(id=" << s.id << ", z=" << s.z
               << ", y1=" << s.y1 << ", r=" << s.r << ", y2=" << s.y2 << ")";
            return os.str();
        });

    py::class_<TrialDataset>(m, "TrialDataset")
        .def_readonly("records", &TrialDataset::records)
        .def_readonly("scenario_c", &TrialDataset::scenario_c)
        .def("__len__",
             [](const TrialDataset& d) { return d.records.size(); })
        .def("to_csv",
             [](const TrialDataset& d) {
                 std::ostringstream out;
                 write_dataset_csv(d, out);
                 return out.str();
             })
        .def_static(
            "from_csv",
            [](const std::string& text, double c) {
                std::istringstream in(text);
                return read_dataset_csv(in, c);
            },
            py::arg("text"), py::arg("c"));

    m.def("generate_trial", &generate_trial, py::arg("params"),
          py::arg("seed"), py::arg("replicate") = 0,
          py::call_guard<py::gil_scoped_release>(),
          "Simulate one trial; bit-identical for fixed arguments.");

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("issues", &ValidationReport::issues)
        .def("ok", &ValidationReport::ok);
    m.def("validate_dataset", &validate_dataset, py::arg("data"),
          "Structural checks, including the rescue rule r == [y1 <= c].");

    // ------------------------------------------------------------ estimators
    py::enum_<EstimateMode>(m, "EstimateMode")
        .value("plug_in", EstimateMode::plug_in)
        .value("oracle", EstimateMode::oracle);

    py::class_<ArmMoments>(m, "ArmMoments")
        .def_readonly("n", &ArmMoments::n)
        .def_readonly("n_norescue", &ArmMoments::n_norescue)
        .def_readonly("mean_y1", &ArmMoments::mean_y1)
        .def_readonly("sd_y1", &ArmMoments::sd_y1)
        .def_readonly("eta_hat", &ArmMoments::eta_hat)
        .def_readonly("lambda_hat", &ArmMoments::lambda_hat)
        .def_readonly("mean_y2_norescue", &ArmMoments::mean_y2_norescue)
        .def_readonly("mean_y1y2_norescue", &ArmMoments::mean_y1y2_norescue);

    py::class_<EstimateSet>(m, "EstimateSet")
        .def_readonly("itt", &EstimateSet::itt)
        .def_readonly("conditional", &EstimateSet::conditional)
        .def_readonly("corrected", &EstimateSet::corrected)
        .def_readonly("sigma12_hat_by_arm", &EstimateSet::sigma12_hat_by_arm)
        .def_readonly("gamma12_hat_by_arm", &EstimateSet::gamma12_hat_by_arm)
        .def_readonly("mu2_hat_by_arm", &EstimateSet::mu2_hat_by_arm)
        .def_readonly("mode", &EstimateSet::mode)
        .def("__repr__", [](const EstimateSet& e) {
            std::ostringstream os;
            os << "EstimateSet(itt=" << e.itt
               << ", conditional=" << e.conditional
               << ", corrected=" << e.corrected << ")";
            return os.str();
        });

    m.def("estimate_itt", &estimate_itt, py::arg("data"));
    m.def("estimate_conditional", &estimate_conditional, py::arg("data"));
    m.def("compute_arm_moments", &compute_arm_moments, py::arg("data"),
          py::arg("c"));
    m.def("estimate_sigma12", &estimate_sigma12, py::arg("moments"),
          py::arg("c"));
    m.def(
        "estimate_corrected",
        [](const TrialDataset& data, double c, EstimateMode mode,
           const std::optional<ScenarioParams>& oracle_params) {
            return estimate_corrected(
                data, c, mode, oracle_params ? &*oracle_params : nullptr);
        },
        py::arg("data"), py::arg("c"),
        py::arg("mode") = EstimateMode::plug_in,
        py::arg("oracle_params") = std::nullopt,
        "All three estimators on one dataset; oracle mode needs the "
        "generating scenario.");

    // ------------------------------------------------------------ mc_harness
    py::class_<SummaryStat>(m, "SummaryStat")
        .def_readonly("mean", &SummaryStat::mean)
        .def_readonly("sd", &SummaryStat::sd)
        .def_readonly("n", &SummaryStat::n)
        .def("__repr__", &fmt_stat);

    py::class_<McSummary>(m, "McSummary")
        .def_readonly("scenario", &McSummary::scenario)
        .def_readonly("mode", &McSummary::mode)
        .def_readonly("replicates_requested", &McSummary::replicates_requested)
        .def_readonly("replicates_used", &McSummary::replicates_used)
        .def_readonly("failure_count", &McSummary::failure_count)
        .def_readonly("itt", &McSummary::itt)
        .def_readonly("conditional", &McSummary::conditional)
        .def_readonly("corrected", &McSummary::corrected)
        .def_readonly("sigma12_hat", &McSummary::sigma12_hat)
        .def_readonly("gamma12_hat", &McSummary::gamma12_hat)
        .def_readonly("mu2_hat", &McSummary::mu2_hat);

    m.def("run_scenario", &run_scenario, py::arg("params"),
          py::arg("replicates"), py::arg("master_seed"), py::arg("mode"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
          "Monte-Carlo summary of one scenario; bit-identical for every "
          "thread count.");
    m.def("run_table", &run_table, py::arg("grid"), py::arg("replicates"),
          py::arg("master_seed"), py::arg("mode"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("table2_grid", &table2_grid,
          "The 11 oracle-mode reference scenarios.");
    m.def("table3_grid", &table3_grid,
          "The 11 plug-in-mode reference scenarios (same parameter rows).");

    // ------------------------------------------------------------- bootstrap
    py::class_<BootstrapResult>(m, "BootstrapResult")
        .def_readonly("point_estimate", &BootstrapResult::point_estimate)
        .def_readonly("se", &BootstrapResult::se)
        .def_readonly("resamples", &BootstrapResult::resamples)
        .def_readonly("failure_count", &BootstrapResult::failure_count)
        .def_readonly("level", &BootstrapResult::level)
        .def_readonly("lo", &BootstrapResult::lo)
        .def_readonly("hi", &BootstrapResult::hi)
        .def("__repr__", [](const BootstrapResult& b) {
            std::ostringstream os;
            os << "BootstrapResult(point_estimate=" << b.point_estimate
               << ", se=" << b.se << ", lo=" << b.lo << ", hi=" << b.hi << ")";
            return os.str();
        });

    m.def("bootstrap_corrected", &bootstrap_corrected, py::arg("data"),
          py::arg("c"), py::arg("resamples"), py::arg("seed"),
          py::arg("level") = 0.95, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>(),
          "Within-arm bootstrap of the plug-in corrected estimator.");

    m.attr("__version__") = "1.0.0";
}

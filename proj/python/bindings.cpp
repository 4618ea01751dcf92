#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catamp/circuits.hpp"
#include "catamp/iterate.hpp"
#include "catamp/sweep.hpp"

namespace py = pybind11;
using namespace catamp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian-superposition Wigner calculus for cat-state "
              "generation and homodyne-heralded amplification";

    py::register_exception<NonIntegrableError>(m, "NonIntegrableError");
    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<UnderflowError>(m, "UnderflowError");

    py::enum_<Parity>(m, "Parity")
        .value("EVEN", Parity::Even)
        .value("ODD", Parity::Odd);
    py::enum_<InputMode>(m, "InputMode")
        .value("IDEAL_CAT", InputMode::IdealCat)
        .value("PSSV", InputMode::Pssv);
    py::enum_<IterExponent>(m, "IterExponent")
        .value("POW2", IterExponent::Pow2)
        .value("LINEAR_2K", IterExponent::Linear2k);

    py::class_<SqueezingSpec>(m, "SqueezingSpec")
        .def(py::init<double, double>(), py::arg("xi_p_db"), py::arg("epsilon"))
        .def_static("pure", &SqueezingSpec::pure, py::arg("xi_db"))
        .def_readonly("xi_p", &SqueezingSpec::xi_p)
        .def_readonly("epsilon", &SqueezingSpec::epsilon)
        .def("xi_x", &SqueezingSpec::xi_x)
        .def("s_x", &SqueezingSpec::s_x)
        .def("s_p", &SqueezingSpec::s_p)
        .def("purity", &SqueezingSpec::purity);

    py::class_<CatSpec>(m, "CatSpec")
        .def(py::init<double, Parity>(), py::arg("gamma"), py::arg("parity"))
        .def_readonly("gamma", &CatSpec::gamma)
        .def_readonly("parity", &CatSpec::parity)
        .def("norm_sq", &CatSpec::norm_sq);

    py::class_<MeasurementSpec>(m, "MeasurementSpec")
        .def_readonly("center_snu", &MeasurementSpec::center_snu)
        .def_readonly("width_snu", &MeasurementSpec::width_snu)
        .def_readonly("exact", &MeasurementSpec::exact);

    py::class_<WignerObject>(m, "WignerObject")
        .def_property_readonly("modes", &WignerObject::modes)
        .def_property_readonly("term_count", &WignerObject::term_count);

    m.def("vacuum", &vacuum);
    m.def("coherent", &coherent, py::arg("gamma"));
    m.def("squeezed_vacuum", &squeezed_vacuum, py::arg("spec"));
    m.def("cat", &cat, py::arg("spec"));
    m.def("op_apd", &op_apd);
    m.def("op_cat_projector", &op_cat_projector, py::arg("spec"));
    m.def("op_homodyne_window", &op_homodyne_window, py::arg("q0_snu"),
          py::arg("width_snu"), py::arg("angle") = 0.0);
    m.def("op_homodyne_exact", &op_homodyne_exact, py::arg("q0_snu") = 0.0,
          py::arg("angle") = 0.0);

    m.def("evaluate", &evaluate, py::arg("state"), py::arg("point"),
          "Wigner value at a phase-space point (x1, p1, ..., xN, pN)");
    m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
    m.def("purity", py::overload_cast<const WignerObject&>(&purity),
          py::arg("state"));

    py::class_<PssvResult>(m, "PssvResult")
        .def_readonly("state", &PssvResult::state)
        .def_readonly("success", &PssvResult::success)
        .def_readonly("log_success", &PssvResult::log_success);
    m.def("generate_pssv", &generate_pssv, py::arg("squeezing"), py::arg("T"));
    m.def("fidelity_with_pure", &fidelity_with_pure, py::arg("state"),
          py::arg("target"));

    py::class_<HeraldedState>(m, "HeraldedState")
        .def_readonly("herald_mode", &HeraldedState::herald_mode)
        .def_readonly("window", &HeraldedState::window);
    m.def("amplify", &amplify, py::arg("in1"), py::arg("in2"),
          py::arg("window_snu"));
    m.def("heralded_success", &heralded_success, py::arg("heralded"));
    m.def("heralded_log_success", &heralded_log_success, py::arg("heralded"));
    m.def("heralded_fidelity", &heralded_fidelity, py::arg("heralded"),
          py::arg("target"));
    m.def("heralded_wigner_at", &heralded_wigner_at, py::arg("heralded"),
          py::arg("x"), py::arg("p"));
    m.def("analytic_amplified_fidelity", &analytic_amplified_fidelity,
          py::arg("alpha"), py::arg("beta"), py::arg("input_parity"));
    m.def("perr", &perr, py::arg("beta"), py::arg("window_snu"));

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("argument", &OptimizationResult::argument)
        .def_readonly("fidelity", &OptimizationResult::fidelity)
        .def_readonly("success", &OptimizationResult::success)
        .def_readonly("at_edge", &OptimizationResult::at_edge);
    m.def("optimize_target_size",
          py::overload_cast<const WignerObject&, Parity>(&optimize_target_size),
          py::arg("state"), py::arg("parity"));
    m.def("optimize_target_size",
          py::overload_cast<const HeraldedState&, Parity>(&optimize_target_size),
          py::arg("heralded"), py::arg("parity"));
    m.def("optimize_input_for_target", &optimize_input_for_target,
          py::arg("beta"), py::arg("mode"), py::arg("T"),
          py::arg("window_snu"));

    py::class_<PolyGaussWavefunction>(m, "PolyGaussWavefunction")
        .def("degree", &PolyGaussWavefunction::degree)
        .def("parity", &PolyGaussWavefunction::parity);
    m.def("wf_vacuum", &wf_vacuum);
    m.def("wf_cat", &wf_cat, py::arg("spec"));
    m.def("wf_squeezed_fock1", &wf_squeezed_fock1, py::arg("s"));
    m.def("wf_evaluate", &wf_evaluate, py::arg("phi"), py::arg("x"));
    m.def("wf_fidelity_cat", &wf_fidelity_cat, py::arg("target"),
          py::arg("phi"));

    py::class_<IterStage>(m, "IterStage")
        .def_readonly("k", &IterStage::k)
        .def_readonly("log_stage_norm", &IterStage::log_stage_norm)
        .def_readonly("phi", &IterStage::phi);
    m.def("iterate_step", &iterate_step, py::arg("phi"), py::arg("k") = 0);
    m.def("iterate_closed_form", &iterate_closed_form, py::arg("phi0"),
          py::arg("k"), py::arg("exponent") = IterExponent::Pow2);

    py::class_<SizeResult>(m, "SizeResult")
        .def_readonly("beta_star", &SizeResult::beta_star)
        .def_readonly("fidelity", &SizeResult::fidelity);
    m.def("effective_size", &effective_size, py::arg("phi"),
          py::arg("parity") = Parity::Even);

    py::class_<ScalingRow>(m, "ScalingRow")
        .def_readonly("k", &ScalingRow::k)
        .def_readonly("p_stage", &ScalingRow::p_stage)
        .def_readonly("log_p_stage", &ScalingRow::log_p_stage)
        .def_readonly("log_p_compound", &ScalingRow::log_p_compound);
    m.def("success_scaling", &success_scaling, py::arg("phi0"), py::arg("k"),
          py::arg("window_snu") = 0.0);

    py::class_<Range>(m, "Range")
        .def(py::init([](double start, double stop, int steps) {
                 return Range{start, stop, steps};
             }),
             py::arg("start"), py::arg("stop"), py::arg("steps"))
        .def_static("parse", &Range::parse, py::arg("text"))
        .def("values", &Range::values);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("experiment", &SweepConfig::experiment)
        .def_readwrite("axes", &SweepConfig::axes)
        .def_readwrite("fixed", &SweepConfig::fixed)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("parity", &SweepConfig::parity)
        .def_readwrite("k", &SweepConfig::k)
        .def_readwrite("grid", &SweepConfig::grid)
        .def_readwrite("out", &SweepConfig::out)
        .def_readwrite("format", &SweepConfig::format)
        .def_readwrite("jobs", &SweepConfig::jobs)
        .def_readwrite("quiet", &SweepConfig::quiet);

    py::class_<SweepTable>(m, "SweepTable")
        .def_readonly("columns", &SweepTable::columns)
        .def_readonly("rows", &SweepTable::rows)
        .def_readonly("n_underflow", &SweepTable::n_underflow);
    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.attr("SNU_TO_ABS") = kSnuToAbs;
    m.attr("__version__") = kVersion;
}

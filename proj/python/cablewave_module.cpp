// Python bindings for the cable-wave toolkit: closed-form traveling waves,
// loaded waves, the explicit simulator, the stability lab, and the
// experiment/emission layer used by the command-line tool.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cablewave/diagnostics.hpp"
#include "cablewave/emit.hpp"
#include "cablewave/errors.hpp"
#include "cablewave/execute.hpp"
#include "cablewave/experiment.hpp"
#include "cablewave/loaded_wave.hpp"
#include "cablewave/simulator.hpp"
#include "cablewave/stability.hpp"
#include "cablewave/traveling_wave.hpp"
#include "cablewave/verify.hpp"
#include "cablewave/version.hpp"

namespace py = pybind11;
using namespace cablewave;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bilinear-substrate cable waves: closed forms, simulation, stability";
  m.attr("__version__") = artifact_version;

  // --- exceptions -----------------------------------------------------------
  py::register_exception<DegenerateSubstrateError>(m, "DegenerateSubstrateError",
                                                   PyExc_ValueError);
  py::register_exception<SingularPointError>(m, "SingularPointError", PyExc_ValueError);
  py::register_exception<NoRootError>(m, "NoRootError", PyExc_ValueError);
  py::register_exception<InadmissibleLoadError>(m, "InadmissibleLoadError",
                                                PyExc_ValueError);
  py::register_exception<CriticalAlphaError>(m, "CriticalAlphaError", PyExc_ValueError);
  py::register_exception<InstabilityError>(m, "InstabilityError", PyExc_RuntimeError);
  py::register_exception<InsufficientDurationError>(m, "InsufficientDurationError",
                                                    PyExc_ValueError);
  py::register_exception<TooFewSamplesError>(m, "TooFewSamplesError", PyExc_ValueError);
  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  // --- substrate and the no-load wave family --------------------------------
  py::class_<Substrate>(m, "Substrate")
      .def(py::init<double, double>(), py::arg("k1"), py::arg("k2"))
      .def_readwrite("k1", &Substrate::k1)
      .def_readwrite("k2", &Substrate::k2)
      .def("stiffness", &Substrate::stiffness, py::arg("w"))
      .def("__repr__", [](const Substrate& s) {
        std::ostringstream out;
        out << "Substrate(k1=" << s.k1 << ", k2=" << s.k2 << ")";
        return out.str();
      });

  py::class_<TravelingWave>(m, "TravelingWave")
      .def_readonly("substrate", &TravelingWave::substrate)
      .def_readonly("alpha", &TravelingWave::alpha)
      .def_readonly("phase_speed", &TravelingWave::phase_speed)
      .def_readonly("phase_speed_squared", &TravelingWave::phase_speed_squared)
      .def_readonly("amplitude", &TravelingWave::amplitude)
      .def_readonly("repetitions", &TravelingWave::repetitions)
      .def_readonly("wavelength", &TravelingWave::wavelength)
      .def_readonly("base_speed", &TravelingWave::base_speed);

  m.def("solve_single_wave", &solve_single_wave, py::arg("substrate"),
        py::arg("repetitions") = 1, py::arg("amplitude") = 1.0,
        py::arg("wavelength") = 1.0, py::arg("base_speed") = 1.0,
        "Closed-form periodic traveling wave of the free (unloaded) cable.");
  m.def("profile", &profile, py::arg("wave"), py::arg("xi"));
  m.def("profile_derivative", &profile_derivative, py::arg("wave"), py::arg("xi"));
  m.def("wave_spacetime",
        py::overload_cast<const TravelingWave&, double, double>(&evaluate_spacetime),
        py::arg("wave"), py::arg("x"), py::arg("t"));

  py::class_<PeriodFrequency>(m, "PeriodFrequency")
      .def_readonly("period", &PeriodFrequency::period)
      .def_readonly("angular_frequency", &PeriodFrequency::angular_frequency);
  m.def("wave_period_frequency",
        py::overload_cast<const TravelingWave&>(&period_frequency), py::arg("wave"));

  py::enum_<LimitKind>(m, "LimitKind")
      .value("unilateral", LimitKind::unilateral)
      .value("unilaterally_rigid", LimitKind::unilaterally_rigid);
  py::class_<LimitReport>(m, "LimitReport")
      .def_readonly("kind", &LimitReport::kind)
      .def_readonly("alpha_limit", &LimitReport::alpha_limit)
      .def_readonly("c_squared_limit", &LimitReport::c_squared_limit)
      .def_readonly("c_limit", &LimitReport::c_limit)
      .def_readonly("regular_wave_exists", &LimitReport::regular_wave_exists);
  m.def("limit_case", &limit_case, py::arg("substrate"), py::arg("kind"));

  // --- loaded waves ----------------------------------------------------------
  m.def("alpha_critical", &alpha_critical, py::arg("substrate"));

  py::class_<HarmonicBranch>(m, "HarmonicBranch")
      .def_readonly("wavenumber", &HarmonicBranch::wavenumber)
      .def_readonly("sin_coeff", &HarmonicBranch::sin_coeff)
      .def_readonly("cos_coeff", &HarmonicBranch::cos_coeff)
      .def_readonly("offset", &HarmonicBranch::offset)
      .def_readonly("start", &HarmonicBranch::start);

  py::class_<LoadedWave>(m, "LoadedWave")
      .def_readonly("substrate", &LoadedWave::substrate)
      .def_readonly("load", &LoadedWave::load)
      .def_readonly("alpha", &LoadedWave::alpha)
      .def_readonly("wavenumber", &LoadedWave::wavenumber)
      .def_readonly("phase_speed", &LoadedWave::phase_speed)
      .def_readonly("branch_index", &LoadedWave::branch_index)
      .def_readonly("compression", &LoadedWave::compression)
      .def_readonly("tension", &LoadedWave::tension)
      .def_readonly("wavelength", &LoadedWave::wavelength)
      .def_readonly("base_speed", &LoadedWave::base_speed)
      .def("tension_wavenumber", &LoadedWave::tension_wavenumber);

  py::class_<DispersionScan>(m, "DispersionScan")
      .def_readonly("alpha", &DispersionScan::alpha)
      .def_readonly("a_max", &DispersionScan::a_max)
      .def_readonly("grid", &DispersionScan::grid)
      .def_readonly("roots", &DispersionScan::roots)
      .def_readonly("singularities", &DispersionScan::singularities);

  m.def("dispersion_residual", &dispersion_residual, py::arg("substrate"),
        py::arg("alpha"), py::arg("a"));
  m.def("scan_roots", &scan_roots, py::arg("substrate"), py::arg("alpha"),
        py::arg("a_max") = -1.0, py::arg("grid") = default_scan_grid);
  m.def("solve_loaded_wave", &solve_loaded_wave, py::arg("substrate"), py::arg("load"),
        py::arg("alpha"), py::arg("branch_index") = 0, py::arg("wavelength") = 1.0,
        py::arg("base_speed") = 1.0, py::arg("a_max") = -1.0,
        py::arg("grid") = default_scan_grid);
  m.def("loaded_profile", &loaded_profile, py::arg("wave"), py::arg("xi"));
  m.def("loaded_profile_derivative", &loaded_profile_derivative, py::arg("wave"),
        py::arg("xi"));
  m.def("loaded_spacetime",
        py::overload_cast<const LoadedWave&, double, double>(&evaluate_spacetime),
        py::arg("wave"), py::arg("x"), py::arg("t"));

  py::class_<LoadedPeriodFrequency>(m, "LoadedPeriodFrequency")
      .def_readonly("period", &LoadedPeriodFrequency::period)
      .def_readonly("angular_frequency", &LoadedPeriodFrequency::angular_frequency);
  m.def("loaded_period_frequency",
        py::overload_cast<const LoadedWave&>(&period_frequency), py::arg("wave"));

  py::class_<LoadedExtrema>(m, "LoadedExtrema")
      .def_readonly("w_min", &LoadedExtrema::w_min)
      .def_readonly("w_max", &LoadedExtrema::w_max)
      .def_readonly("w_min_normalized", &LoadedExtrema::w_min_normalized)
      .def_readonly("w_max_normalized", &LoadedExtrema::w_max_normalized);
  m.def("extrema", &extrema, py::arg("wave"));
  m.def("zero_wave_exists", &zero_wave_exists, py::arg("substrate"), py::arg("load"),
        py::arg("amplitude"));

  // --- simulator -------------------------------------------------------------
  py::class_<BoundaryDriver> driver(m, "BoundaryDriver");
  py::enum_<BoundaryDriver::Kind>(driver, "Kind")
      .value("zero", BoundaryDriver::Kind::zero)
      .value("wave_trace", BoundaryDriver::Kind::wave_trace)
      .value("loaded_trace", BoundaryDriver::Kind::loaded_trace);
  driver.def(py::init<>())
      .def_readwrite("kind", &BoundaryDriver::kind)
      .def_readwrite("wave", &BoundaryDriver::wave)
      .def_readwrite("loaded", &BoundaryDriver::loaded)
      .def_readwrite("trace_scale", &BoundaryDriver::trace_scale)
      .def_readwrite("harmonic_amplitude", &BoundaryDriver::harmonic_amplitude)
      .def_readwrite("harmonic_frequency", &BoundaryDriver::harmonic_frequency)
      .def_readwrite("offset", &BoundaryDriver::offset)
      .def_readwrite("ramp_time", &BoundaryDriver::ramp_time)
      .def("value", &BoundaryDriver::value, py::arg("t"))
      .def("rate", &BoundaryDriver::rate, py::arg("t"));

  py::class_<InitialCondition> initial(m, "InitialCondition");
  py::enum_<InitialCondition::Kind>(initial, "Kind")
      .value("zero", InitialCondition::Kind::zero)
      .value("decaying_sinusoid", InitialCondition::Kind::decaying_sinusoid)
      .value("cosine_bump", InitialCondition::Kind::cosine_bump)
      .value("constant", InitialCondition::Kind::constant)
      .value("wave_field", InitialCondition::Kind::wave_field);
  initial.def(py::init<>())
      .def_readwrite("kind", &InitialCondition::kind)
      .def_readwrite("amplitude", &InitialCondition::amplitude)
      .def_readwrite("wavenumber", &InitialCondition::wavenumber)
      .def_readwrite("decay", &InitialCondition::decay)
      .def_readwrite("center", &InitialCondition::center)
      .def_readwrite("halfwidth", &InitialCondition::halfwidth)
      .def_readwrite("constant_value", &InitialCondition::constant_value)
      .def_readwrite("wave", &InitialCondition::wave)
      .def_readwrite("offset", &InitialCondition::offset)
      .def("displacement", &InitialCondition::displacement, py::arg("x"))
      .def("velocity", &InitialCondition::velocity, py::arg("x"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("substrate", &SimConfig::substrate)
      .def_readwrite("base_speed", &SimConfig::base_speed)
      .def_readwrite("wavelength", &SimConfig::wavelength)
      .def_readwrite("load", &SimConfig::load)
      .def_readwrite("domain_length", &SimConfig::domain_length)
      .def_readwrite("dx", &SimConfig::dx)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("t_end", &SimConfig::t_end)
      .def_readwrite("boundary", &SimConfig::boundary)
      .def_readwrite("initial", &SimConfig::initial)
      .def_readwrite("probe_positions", &SimConfig::probe_positions)
      .def_readwrite("snapshot_times", &SimConfig::snapshot_times)
      .def_readwrite("energy_stride", &SimConfig::energy_stride)
      .def_readwrite("reference_amplitude", &SimConfig::reference_amplitude);

  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("time", &Snapshot::time)
      .def_readonly("displacement", &Snapshot::displacement);
  py::class_<ProbeSeries>(m, "ProbeSeries")
      .def_readonly("position", &ProbeSeries::position)
      .def_readonly("grid_index", &ProbeSeries::grid_index)
      .def_readonly("times", &ProbeSeries::times)
      .def_readonly("displacement", &ProbeSeries::displacement)
      .def_readonly("velocity", &ProbeSeries::velocity);
  py::class_<EnergySample>(m, "EnergySample")
      .def_readonly("time", &EnergySample::time)
      .def_readonly("kinetic", &EnergySample::kinetic)
      .def_readonly("potential", &EnergySample::potential)
      .def_readonly("total", &EnergySample::total)
      .def_readonly("boundary_flux", &EnergySample::boundary_flux)
      .def_readonly("balance_residual", &EnergySample::balance_residual);
  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("grid", &RunRecord::grid)
      .def_readonly("snapshots", &RunRecord::snapshots)
      .def_readonly("probes", &RunRecord::probes)
      .def_readonly("energy", &RunRecord::energy)
      .def_readonly("cumulative_balance_error", &RunRecord::cumulative_balance_error)
      .def_readonly("dx", &RunRecord::dx)
      .def_readonly("dt", &RunRecord::dt)
      .def_readonly("domain_length", &RunRecord::domain_length)
      .def_readonly("t_end", &RunRecord::t_end);

  m.def("run", &run, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_loaded", &run_loaded, py::arg("config"), py::arg("wave"),
        py::call_guard<py::gil_scoped_release>());
  m.def("stable_dt", &stable_dt, py::arg("config"), py::arg("dx"));

  // --- stability lab ----------------------------------------------------------
  py::class_<Mat2>(m, "Mat2")
      .def_readonly("m00", &Mat2::m00)
      .def_readonly("m01", &Mat2::m01)
      .def_readonly("m10", &Mat2::m10)
      .def_readonly("m11", &Mat2::m11)
      .def("det", &Mat2::det)
      .def("trace", &Mat2::trace);
  py::class_<FloquetResult>(m, "FloquetResult")
      .def_readonly("monodromy", &FloquetResult::monodromy)
      .def_readonly("multipliers", &FloquetResult::multipliers)
      .def_readonly("fixed_point_displacement", &FloquetResult::fixed_point_displacement)
      .def_readonly("fixed_point_slope", &FloquetResult::fixed_point_slope);
  m.def("floquet_map", &floquet_map, py::arg("wave"));
  m.def("rotation_block", &rotation_block, py::arg("omega"), py::arg("length"));

  py::class_<Perturbation> perturbation(m, "Perturbation");
  py::enum_<Perturbation::Kind>(perturbation, "Kind")
      .value("none", Perturbation::Kind::none)
      .value("boundary_harmonic", Perturbation::Kind::boundary_harmonic)
      .value("initial_profile", Perturbation::Kind::initial_profile);
  perturbation.def(py::init<>())
      .def_readwrite("kind", &Perturbation::kind)
      .def_readwrite("epsilon", &Perturbation::epsilon)
      .def_readwrite("frequency", &Perturbation::frequency);

  m.def("perturbed_run",
        py::overload_cast<const TravelingWave&, const Perturbation&, SimConfig>(
            &perturbed_run),
        py::arg("wave"), py::arg("perturbation"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("perturbed_run_loaded",
        py::overload_cast<const LoadedWave&, const Perturbation&, SimConfig>(
            &perturbed_run),
        py::arg("wave"), py::arg("perturbation"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ReturnMapSeries>(m, "ReturnMapSeries")
      .def_readonly("probe_position", &ReturnMapSeries::probe_position)
      .def_readonly("tau", &ReturnMapSeries::tau)
      .def_readonly("start_time", &ReturnMapSeries::start_time)
      .def_readonly("times", &ReturnMapSeries::times)
      .def_readonly("displacement", &ReturnMapSeries::displacement)
      .def_readonly("velocity", &ReturnMapSeries::velocity);
  m.def("return_map", &return_map, py::arg("record"), py::arg("probe_position"),
        py::arg("tau"), py::arg("skip_time"));
  m.def("default_transient_skip",
        py::overload_cast<const TravelingWave&, double>(&default_transient_skip),
        py::arg("wave"), py::arg("x0"));
  m.def("default_transient_skip_loaded",
        py::overload_cast<const LoadedWave&, double>(&default_transient_skip),
        py::arg("wave"), py::arg("x0"));

  py::class_<OrbitMetrics>(m, "OrbitMetrics")
      .def_readonly("centroid_displacement", &OrbitMetrics::centroid_displacement)
      .def_readonly("centroid_velocity", &OrbitMetrics::centroid_velocity)
      .def_readonly("mean_radius", &OrbitMetrics::mean_radius)
      .def_readonly("radius_spread", &OrbitMetrics::radius_spread)
      .def_readonly("closure_score", &OrbitMetrics::closure_score)
      .def_readonly("min_radius", &OrbitMetrics::min_radius)
      .def_readonly("max_radius", &OrbitMetrics::max_radius)
      .def_readonly("count", &OrbitMetrics::count);
  m.def("orbit_metrics", &orbit_metrics, py::arg("series"));
  m.def("orbit_distance", &orbit_distance, py::arg("series"), py::arg("index"),
        py::arg("ref_displacement"), py::arg("ref_velocity"));

  // --- diagnostics -------------------------------------------------------------
  m.def("measure_front_speed", &measure_front_speed, py::arg("record"),
        py::arg("threshold"));
  m.def("measure_phase_speed", &measure_phase_speed, py::arg("record"),
        py::arg("probe_a"), py::arg("probe_b"), py::arg("window_start"));
  py::class_<SettledProfileError>(m, "SettledProfileError")
      .def_readonly("linf_relative", &SettledProfileError::linf_relative)
      .def_readonly("phase_shift", &SettledProfileError::phase_shift);
  m.def("settled_profile_error", &settled_profile_error, py::arg("snapshot"),
        py::arg("grid"), py::arg("wave"), py::arg("x_lo"), py::arg("x_hi"));
  m.def("window_extrema", &window_extrema, py::arg("snapshot"), py::arg("grid"),
        py::arg("x_lo"), py::arg("x_hi"));
  m.def("envelope_beat_frequency", &envelope_beat_frequency, py::arg("probe"),
        py::arg("tau"), py::arg("t_start"));
  m.def("upcrossing_times", &upcrossing_times, py::arg("times"), py::arg("values"),
        py::arg("window_start"), py::arg("level") = 0.0);

  // --- experiments, execution, emission ----------------------------------------
  py::enum_<Command>(m, "Command")
      .value("analytic", Command::analytic)
      .value("dispersion", Command::dispersion)
      .value("simulate", Command::simulate)
      .value("simulate_loaded", Command::simulate_loaded)
      .value("stability", Command::stability)
      .value("floquet", Command::floquet)
      .value("extrema_sweep", Command::extrema_sweep)
      .value("verify", Command::verify);
  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def_readonly("command", &ExperimentSpec::command)
      .def_readonly("params", &ExperimentSpec::params);
  m.def("parse_spec", &parse_spec, py::arg("args"),
        "Parse a command-line style argument list into a resolved experiment spec.");
  m.def("parse_spec_file", &parse_spec_file, py::arg("path"));
  m.def("spec_to_config_text", &spec_to_config_text, py::arg("spec"));
  m.def("format_number", &format_number, py::arg("value"));

  py::class_<Table>(m, "Table")
      .def_readonly("name", &Table::name)
      .def_readonly("columns", &Table::columns)
      .def_readonly("rows", &Table::rows);
  py::class_<RunArtifacts>(m, "RunArtifacts")
      .def_readonly("spec", &RunArtifacts::spec)
      .def_readonly("tables", &RunArtifacts::tables)
      .def_readonly("facts", &RunArtifacts::facts);
  m.def("execute_spec", &execute_spec, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  py::class_<EmitResult>(m, "EmitResult")
      .def_readonly("files", &EmitResult::files);
  m.def("emit", &emit, py::arg("artifacts"), py::arg("out_dir"));
  m.def("table_to_csv", &table_to_csv, py::arg("table"));

  // --- verification scenarios ----------------------------------------------------
  py::class_<CriterionCheck>(m, "CriterionCheck")
      .def_readonly("name", &CriterionCheck::name)
      .def_readonly("passed", &CriterionCheck::passed)
      .def_readonly("measured", &CriterionCheck::measured)
      .def_readonly("limit", &CriterionCheck::limit)
      .def_readonly("detail", &CriterionCheck::detail);
  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_readonly("scenario", &ScenarioResult::scenario)
      .def_readonly("checks", &ScenarioResult::checks)
      .def_readonly("passed", &ScenarioResult::passed)
      .def_readonly("seconds", &ScenarioResult::seconds);
  m.def("scenario_names", &scenario_names);
  m.def("run_scenario", &run_scenario, py::arg("name"),
        py::call_guard<py::gil_scoped_release>());
  m.def("format_result", &format_result, py::arg("result"));
}

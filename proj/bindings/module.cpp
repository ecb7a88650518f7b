// Copyright 2026 modebell contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modebell/analytic.hpp"
#include "modebell/montecarlo.hpp"

namespace py = pybind11;
using namespace modebell;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact simulator and analysis toolkit for a single-boson two-mode "
              "Bell test with beamsplitter-and-reference measurements.";
    m.attr("__version__") = "0.1.0";
    m.attr("TSIRELSON_BOUND") = 2.0 * std::numbers::sqrt2;

    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<PostSelectionError>(m, "PostSelectionError", PyExc_RuntimeError);
    py::register_exception<NoAcceptedEventsError>(m, "NoAcceptedEventsError",
                                                  PyExc_RuntimeError);

    py::class_<FockBasis, std::shared_ptr<FockBasis>>(m, "FockBasis")
        .def(py::init<int, int>(), py::arg("modes"), py::arg("max_total"))
        .def_property_readonly("modes", &FockBasis::modes)
        .def_property_readonly("max_total", &FockBasis::max_total)
        .def_property_readonly("dim", &FockBasis::dim)
        .def("occupation", &FockBasis::occupation, py::arg("index"))
        .def("index_of", &FockBasis::index_of, py::arg("occupation"));

    py::class_<PureState>(m, "PureState")
        .def_property_readonly("amplitudes",
                               [](const PureState& s) { return s.amplitudes(); })
        .def_property_readonly("norm", &PureState::norm);

    py::class_<SystemPrep>(m, "SystemPrep")
        .def(py::init<Complex, Complex>(), py::arg("alpha"), py::arg("beta"))
        .def_static("from_weights", &SystemPrep::from_weights, py::arg("alpha_sq"),
                    py::arg("gamma"))
        .def_readonly("alpha", &SystemPrep::alpha)
        .def_readonly("beta", &SystemPrep::beta)
        .def_property_readonly("gamma", &SystemPrep::gamma);

    py::class_<MixedPrep>(m, "MixedPrep")
        .def(py::init<double, SystemPrep, SystemPrep>(), py::arg("p"), py::arg("psi1"),
             py::arg("psi2"))
        .def_readonly("p", &MixedPrep::p)
        .def_readonly("psi1", &MixedPrep::psi1)
        .def_readonly("psi2", &MixedPrep::psi2);

    py::class_<ReferenceSpec>(m, "ReferenceSpec")
        .def(py::init<Complex, Complex, double>(), py::arg("q"), py::arg("r"),
             py::arg("theta") = 0.0)
        .def_static("balanced", &ReferenceSpec::balanced, py::arg("theta") = 0.0)
        .def_static("biased", &ReferenceSpec::biased, py::arg("q_sq"),
                    py::arg("theta") = 0.0)
        .def("with_theta", &ReferenceSpec::with_theta, py::arg("theta"))
        .def_readonly("q", &ReferenceSpec::q)
        .def_readonly("r", &ReferenceSpec::r)
        .def_readonly("theta", &ReferenceSpec::theta);

    py::class_<ChshSettings>(m, "ChshSettings")
        .def(py::init<double, double, double, double>(), py::arg("theta_a1"),
             py::arg("theta_a2"), py::arg("theta_b1"), py::arg("theta_b2"))
        .def_readwrite("theta_a1", &ChshSettings::theta_a1)
        .def_readwrite("theta_a2", &ChshSettings::theta_a2)
        .def_readwrite("theta_b1", &ChshSettings::theta_b1)
        .def_readwrite("theta_b2", &ChshSettings::theta_b2)
        .def("__repr__", [](const ChshSettings& s) {
            return "ChshSettings(" + std::to_string(s.theta_a1) + ", " +
                   std::to_string(s.theta_a2) + ", " + std::to_string(s.theta_b1) + ", " +
                   std::to_string(s.theta_b2) + ")";
        });

    py::class_<CoincidenceTable>(m, "CoincidenceTable")
        .def_readonly("p_cC", &CoincidenceTable::p_cC)
        .def_readonly("p_cD", &CoincidenceTable::p_cD)
        .def_readonly("p_dC", &CoincidenceTable::p_dC)
        .def_readonly("p_dD", &CoincidenceTable::p_dD)
        .def_readonly("p_select", &CoincidenceTable::p_select);

    py::class_<Outcome>(m, "Outcome")
        .def_readonly("occupation", &Outcome::occupation)
        .def_readonly("probability", &Outcome::probability);

    py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
        .def_property_readonly("probabilities",
                               [](const OutcomeDistribution& d) { return d.probabilities; })
        .def("outcomes", &OutcomeDistribution::outcomes)
        .def("total", &OutcomeDistribution::total);

    py::class_<SurfacePoint>(m, "SurfacePoint")
        .def_readonly("p", &SurfacePoint::p)
        .def_readonly("d", &SurfacePoint::d)
        .def_readonly("c", &SurfacePoint::c);

    py::class_<ViolationBoundary>(m, "ViolationBoundary")
        .def_readonly("lower", &ViolationBoundary::lower)
        .def_readonly("upper", &ViolationBoundary::upper);

    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def(py::init<Eigen::Matrix4cd>(), py::arg("matrix"))
        .def_static("from_pure",
                    static_cast<TwoQubitState (*)(const SystemPrep&)>(
                        &TwoQubitState::from_prep),
                    py::arg("prep"))
        .def_static("from_mixed",
                    static_cast<TwoQubitState (*)(const MixedPrep&)>(
                        &TwoQubitState::from_prep),
                    py::arg("prep"))
        .def_static("maximally_mixed", &TwoQubitState::maximally_mixed)
        .def_property_readonly("matrix",
                               [](const TwoQubitState& s) { return s.matrix(); })
        .def("correlation_matrix", &TwoQubitState::correlation_matrix);

    py::class_<BiasedScanPoint>(m, "BiasedScanPoint")
        .def_readonly("q_sq", &BiasedScanPoint::q_sq)
        .def_readonly("max_c", &BiasedScanPoint::max_c)
        .def_readonly("p_select", &BiasedScanPoint::p_select)
        .def_readonly("settings", &BiasedScanPoint::settings);

    py::class_<SeparableScanResult>(m, "SeparableScanResult")
        .def_readonly("max_c", &SeparableScanResult::max_c)
        .def_readonly("best_weights", &SeparableScanResult::best_weights)
        .def_readonly("best_settings", &SeparableScanResult::best_settings)
        .def_readonly("points_scanned", &SeparableScanResult::points_scanned);

    m.def("is_accepted", &is_accepted, py::arg("outcome"),
          "Post-selection rule: exactly one particle per party's detector pair.");

    py::class_<ShotRecord>(m, "ShotRecord")
        .def_static("from_outcome", &ShotRecord::from_outcome, py::arg("outcome"))
        .def_readonly("outcome", &ShotRecord::outcome)
        .def_readonly("accepted", &ShotRecord::accepted);

    py::class_<SettingEstimate>(m, "SettingEstimate")
        .def_readonly("e_hat", &SettingEstimate::e_hat)
        .def_readonly("std_err", &SettingEstimate::std_err)
        .def_readonly("accepted", &SettingEstimate::accepted);

    py::class_<ShotSummary>(m, "ShotSummary")
        .def_readonly("shots", &ShotSummary::shots)
        .def_readonly("accepted", &ShotSummary::accepted)
        .def_readonly("counts", &ShotSummary::counts)
        .def_readonly("seed", &ShotSummary::seed)
        .def_property_readonly("acceptance_rate", &ShotSummary::acceptance_rate);

    py::class_<EstimatorResult>(m, "EstimatorResult")
        .def_readonly("settings", &EstimatorResult::settings)
        .def_readonly("per_setting", &EstimatorResult::per_setting)
        .def_readonly("c_hat", &EstimatorResult::c_hat)
        .def_readonly("c_std_err", &EstimatorResult::c_std_err)
        .def_readonly("acceptance_rate", &EstimatorResult::acceptance_rate)
        .def_readonly("shots_total", &EstimatorResult::shots_total)
        .def_readonly("seed", &EstimatorResult::seed);

    m.def("run_experiment",
          py::overload_cast<const SystemPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double>(&run_experiment),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity") = 0.5,
          "Exact post-selected coincidence probabilities for a pure preparation.");
    m.def("run_experiment",
          py::overload_cast<const MixedPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double>(&run_experiment),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity") = 0.5);
    m.def("outcome_distribution",
          py::overload_cast<const SystemPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double>(&outcome_distribution),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity") = 0.5);
    m.def("outcome_distribution",
          py::overload_cast<const MixedPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double>(&outcome_distribution),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity") = 0.5);
    m.def("correlation", &correlation, py::arg("table"),
          "E = p_cC + p_dD - p_dC - p_cD of a coincidence table.");
    m.def("chsh",
          py::overload_cast<const SystemPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            const ChshSettings&, double>(&chsh),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"), py::arg("settings"),
          py::arg("transmittivity") = 0.5);
    m.def("chsh",
          py::overload_cast<const MixedPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            const ChshSettings&, double>(&chsh),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"), py::arg("settings"),
          py::arg("transmittivity") = 0.5);
    m.def("uniform_angle_grid", &uniform_angle_grid, py::arg("n"));
    m.def("separable_scan", &separable_scan, py::arg("total_n"), py::arg("weight_grid"),
          py::arg("angle_grid"), py::arg("transmittivity") = 0.5,
          "Maximum CHSH value over number-diagonal separable preparations.");

    m.def("e_analytic", &e_analytic, py::arg("alpha"), py::arg("beta"), py::arg("theta_a"),
          py::arg("theta_b"),
          "Closed-form correlator for balanced references at T = 1/2.");
    m.def("optimal_settings", &optimal_settings, py::arg("gamma"),
          py::arg("theta_a1") = 0.0);
    m.def("balanced_mixed_prep", &balanced_mixed_prep, py::arg("p"), py::arg("gamma1"));
    m.def("surface_settings", &surface_settings, py::arg("gamma1"), py::arg("d"));
    m.def("c_mixed", &c_mixed, py::arg("p"), py::arg("d"));
    m.def("c_mixed_surface", &c_mixed_surface, py::arg("p_grid"), py::arg("d_grid"));
    m.def("max_c_over_d", &max_c_over_d, py::arg("p"), py::arg("d_points") = 360);
    m.def("violation_boundary", &violation_boundary, py::arg("tol") = 1e-9,
          py::arg("d_points") = 360);
    m.def("horodecki_max_chsh", &horodecki_max_chsh, py::arg("state"),
          "Maximal CHSH value of a two-qubit state over all settings.");
    m.def("biased_reference_scan", &biased_reference_scan, py::arg("q_sq_grid"),
          py::arg("angle_points") = 72);

    m.def("sample_events",
          py::overload_cast<const SystemPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double, std::uint64_t, std::uint64_t>(&sample_events),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"), py::arg("transmittivity"),
          py::arg("n_shots"), py::arg("seed"),
          "Seeded i.i.d. draws from the exact outcome distribution.");
    m.def("sample_events",
          py::overload_cast<const MixedPrep&, const ReferenceSpec&, const ReferenceSpec&,
                            double, std::uint64_t, std::uint64_t>(&sample_events),
          py::arg("prep"), py::arg("ref_a"), py::arg("ref_b"), py::arg("transmittivity"),
          py::arg("n_shots"), py::arg("seed"));
    m.def("estimate_chsh",
          py::overload_cast<const SystemPrep&, const ChshSettings&, const ReferenceSpec&,
                            const ReferenceSpec&, double, std::uint64_t, std::uint64_t>(
              &estimate_chsh),
          py::arg("prep"), py::arg("settings"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity"), py::arg("shots_per_setting"), py::arg("seed"));
    m.def("estimate_chsh",
          py::overload_cast<const MixedPrep&, const ChshSettings&, const ReferenceSpec&,
                            const ReferenceSpec&, double, std::uint64_t, std::uint64_t>(
              &estimate_chsh),
          py::arg("prep"), py::arg("settings"), py::arg("ref_a"), py::arg("ref_b"),
          py::arg("transmittivity"), py::arg("shots_per_setting"), py::arg("seed"));
}

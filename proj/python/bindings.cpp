// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "corridor/allocator.hpp"
#include "corridor/antenna.hpp"
#include "corridor/channel.hpp"
#include "corridor/config.hpp"
#include "corridor/error.hpp"
#include "corridor/experiment.hpp"
#include "corridor/geometry.hpp"
#include "corridor/lsap.hpp"
#include "corridor/report.hpp"

namespace py = pybind11;
using namespace corridor;

namespace {

ScenarioConfig config_from_text(const std::string& text) {
    return scenario_from_json(text.empty() ? nlohmann::json::object() : nlohmann::json::parse(text));
}

std::vector<std::pair<int, int>> serving_pairs(const Assignment& a) {
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < a.m; ++m) {
        const auto s = a.serving(m);
        out.emplace_back(s.bs, s.beam);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Native core of the corridor package";

    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(mod, "ConfigError", base.ptr());
    py::register_exception<GeometryError>(mod, "GeometryError", base.ptr());
    py::register_exception<InfeasibleError>(mod, "InfeasibleError", base.ptr());
    py::register_exception<DimensionError>(mod, "DimensionError", base.ptr());
    py::register_exception<LoadError>(mod, "LoadError", base.ptr());

    py::class_<Position3D>(mod, "Position3D")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0)
        .def_readwrite("x", &Position3D::x)
        .def_readwrite("y", &Position3D::y)
        .def_readwrite("z", &Position3D::z)
        .def("__eq__", [](const Position3D& a, const Position3D& b) { return a == b; })
        .def("__repr__", [](const Position3D& p) {
            return "Position3D(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
        });

    py::class_<BaseStationSite>(mod, "BaseStationSite")
        .def(py::init<int, Position3D, double>(), py::arg("id"), py::arg("position"),
             py::arg("boresight_azimuth") = 0.0)
        .def_readwrite("id", &BaseStationSite::id)
        .def_readwrite("position", &BaseStationSite::position)
        .def_readwrite("boresight_azimuth", &BaseStationSite::boresight_azimuth);

    py::class_<LinkGeometry>(mod, "LinkGeometry")
        .def_readonly("distance_3d", &LinkGeometry::distance_3d)
        .def_readonly("theta", &LinkGeometry::theta)
        .def_readonly("phi", &LinkGeometry::phi);

    py::class_<AntennaConfig>(mod, "AntennaConfig")
        .def(py::init<>())
        .def_readwrite("n_h", &AntennaConfig::n_h)
        .def_readwrite("n_v", &AntennaConfig::n_v)
        .def_readwrite("d_h", &AntennaConfig::d_h)
        .def_readwrite("d_v", &AntennaConfig::d_v)
        .def_readwrite("g_e_max", &AntennaConfig::g_e_max)
        .def_readwrite("theta_3db", &AntennaConfig::theta_3db)
        .def_readwrite("phi_3db", &AntennaConfig::phi_3db)
        .def_readwrite("a_m", &AntennaConfig::a_m)
        .def_readwrite("sl_av", &AntennaConfig::sl_av)
        .def_readwrite("theta_tilt", &AntennaConfig::theta_tilt)
        .def("validate", &AntennaConfig::validate);

    py::class_<AnnealerConfig>(mod, "AnnealerConfig")
        .def(py::init<>())
        .def_readwrite("t_global", &AnnealerConfig::t_global)
        .def_readwrite("t_local", &AnnealerConfig::t_local)
        .def_readwrite("initial_temperature", &AnnealerConfig::initial_temperature)
        .def_readwrite("visiting_param", &AnnealerConfig::visiting_param)
        .def_readwrite("restart_stall", &AnnealerConfig::restart_stall)
        .def_readwrite("seed", &AnnealerConfig::seed);

    mod.def("generate_corridor", [](double cx, double cy, double radius, double altitude, int m) {
        return generate_corridor(CorridorSpec{{cx, cy, 0.0}, radius, altitude, m}, m);
    }, py::arg("center_x"), py::arg("center_y"), py::arg("radius"), py::arg("altitude"), py::arg("m"));
    mod.def("link_geometry", &link_geometry, py::arg("bs"), py::arg("uav"));
    mod.def("wrap_angle", &wrap_angle);

    mod.def("element_gain", &element_gain, py::arg("theta"), py::arg("phi"), py::arg("cfg") = AntennaConfig{});
    mod.def("array_gain", [](double theta, double phi, double scan, const AntennaConfig& cfg) {
        return array_gain({theta, phi}, scan, cfg);
    }, py::arg("theta"), py::arg("phi"), py::arg("scan"), py::arg("cfg") = AntennaConfig{});
    mod.def("total_gain", [](double theta, double phi, double scan, const AntennaConfig& cfg) {
        return total_gain({theta, phi}, scan, cfg);
    }, py::arg("theta"), py::arg("phi"), py::arg("scan"), py::arg("cfg") = AntennaConfig{});

    mod.def("free_space_path_gain", &free_space_path_gain, py::arg("distance_m"), py::arg("carrier_hz") = 3.5e9);
    mod.def("umi_path_loss_db", &umi_path_loss_db, py::arg("distance_m"), py::arg("carrier_hz") = 3.5e9);

    mod.def("optimize_scan_angle", [](double theta, double phi, double lo, double hi, const AntennaConfig& cfg,
                                      const AnnealerConfig& ann) {
        const auto r = optimize_scan_angle({theta, phi}, Sector{lo, hi}, cfg, ann);
        return py::make_tuple(r.x, r.value, r.evals);
    }, py::arg("theta"), py::arg("phi"), py::arg("lo"), py::arg("hi"), py::arg("cfg") = AntennaConfig{},
       py::arg("ann") = AnnealerConfig{});

    mod.def("solve_min_cost_assignment", [](const std::vector<std::vector<double>>& cost) {
        const int rows = static_cast<int>(cost.size());
        const int cols = rows == 0 ? 0 : static_cast<int>(cost.front().size());
        std::vector<double> flat;
        for (const auto& row : cost) {
            if (static_cast<int>(row.size()) != cols) throw DimensionError("cost matrix rows differ in length");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return solve_min_cost_assignment(flat, rows, cols);
    }, py::arg("cost"));

    mod.def("solve_assignment", [](const std::vector<double>& values, int m, int l, int n) {
        return serving_pairs(solve_assignment(UtilityTensor{m, l, n, values}));
    }, py::arg("utility"), py::arg("m"), py::arg("l"), py::arg("n"),
       "Maximum-utility assignment of a flattened (m, l, n) utility; returns (bs, beam) per UAV.");
    mod.def("allocate_random", [](int m, int l, int n, std::uint64_t seed) {
        return serving_pairs(allocate_random(m, l, n, seed));
    }, py::arg("m"), py::arg("l"), py::arg("n"), py::arg("seed"));

    mod.def("default_config_json", [] { return to_json(ScenarioConfig{}).dump(); });
    mod.def("normalize_config_json", [](const std::string& text) {
        return to_json(config_from_text(text)).dump();
    });
    mod.def("validate_config_json", [](const std::string& text) { config_from_text(text).validate(); });
    mod.def("config_digest_json", [](const std::string& text) { return config_digest(config_from_text(text)); });
    mod.def("run_scenario_json", [](const std::string& text, int threads) {
        const auto cfg = config_from_text(text);
        py::gil_scoped_release release;
        const std::vector<ExperimentResult> rs{run_scenario(cfg, threads)};
        return results_json(rs);
    }, py::arg("config"), py::arg("threads") = 1);
    mod.def("sweep_json", [](const std::string& text, const std::string& axis, const std::vector<double>& values,
                             int threads) {
        const auto cfg = config_from_text(text);
        const auto ax = parse_sweep_axis(axis);
        py::gil_scoped_release release;
        return results_json(sweep(cfg, ax, values, threads));
    }, py::arg("config"), py::arg("axis"), py::arg("values"), py::arg("threads") = 1);
}

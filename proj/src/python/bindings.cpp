#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "burgers/app.hpp"

namespace py = pybind11;
using namespace burgers;

namespace {

py::object to_py(const ordered_json& doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

py::array_t<double> to_array(const GridFn& u) {
    py::array_t<double> out({u.rows(), u.cols()});
    auto view = out.mutable_unchecked<2>();
    for (int n = 0; n < u.rows(); ++n)
        for (int i = 0; i < u.cols(); ++i) view(n, i) = u(n, i);
    return out;
}

TraceFn to_trace(const TileSpec& tile, const py::array_t<double, py::array::c_style | py::array::forcecast>& g) {
    if (g.ndim() != 1 || g.shape(0) != tile.nx)
        throw std::invalid_argument("bottom data must be a 1-D array of length nx");
    TraceFn out{tile.x0(), tile.hx(), std::vector<double>(g.data(), g.data() + g.shape(0))};
    return out;
}

OperatorParams make_params(const TileSpec& tile, const py::array_t<double, py::array::c_style | py::array::forcecast>& g,
                           double epsilon) {
    tile.validate();
    OperatorParams p = OperatorParams::with_data(tile, to_trace(tile, g), epsilon);
    p.validate();
    return p;
}

py::dict tile_dict(const TileSolution& s) {
    py::dict d;
    d["u"] = to_array(s.u);
    d["iterations"] = s.iterations;
    d["final_update"] = s.final_update;
    d["residual_sup"] = s.residual_sup;
    d["pde_residual_sup"] = s.pde_residual_sup;
    d["correction_shift"] = s.correction_shift;
    d["update_history"] = s.update_history;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tile-by-tile solver for the inviscid Burgers equation";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<PastShock>(m, "PastShock", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<TileSpec>(m, "TileSpec")
        .def(py::init([](int slab_k, int cell_j, int nt, int nx) {
                 TileSpec t{slab_k, cell_j, nt, nx};
                 t.validate();
                 return t;
             }),
             py::arg("slab_k") = 0, py::arg("cell_j") = 0, py::arg("nt") = 65, py::arg("nx") = 65)
        .def_readonly("slab_k", &TileSpec::slab_k)
        .def_readonly("cell_j", &TileSpec::cell_j)
        .def_readonly("nt", &TileSpec::nt)
        .def_readonly("nx", &TileSpec::nx)
        .def_property_readonly("ht", &TileSpec::ht)
        .def_property_readonly("hx", &TileSpec::hx)
        .def("t", &TileSpec::t)
        .def("x", &TileSpec::x)
        .def("refined", &TileSpec::refined)
        .def("__repr__", [](const TileSpec& t) {
            std::ostringstream s;
            s << "TileSpec(slab_k=" << t.slab_k << ", cell_j=" << t.cell_j << ", nt=" << t.nt << ", nx=" << t.nx << ")";
            return s.str();
        });

    py::class_<InitialData>(m, "InitialData")
        .def(py::init<>())
        .def("add_bump", &InitialData::add_bump, py::arg("cell"), py::arg("amplitude"),
             py::return_value_policy::reference_internal)
        .def_property_readonly("bumps",
                               [](const InitialData& phi) {
                                   std::vector<std::pair<int, double>> out;
                                   for (const auto& b : phi.bumps()) out.emplace_back(b.cell, b.amplitude);
                                   return out;
                               })
        .def("amplitude", &InitialData::amplitude)
        .def("max_amplitude", &InitialData::max_amplitude)
        .def("value", py::vectorize(&InitialData::value))
        .def("derivative", py::vectorize(&InitialData::derivative))
        .def("without_cell", &InitialData::without_cell)
        .def("sample_bottom", [](const InitialData& phi, const TileSpec& tile) {
            return py::array_t<double>(py::cast(sample_bottom(phi, tile).values));
        });

    m.def("bump", &bump, py::arg("cell"), py::arg("amplitude"));
    m.attr("BUMP_SLOPE_MAX") = kBumpSlopeMax;
    m.def("bump_profile", py::vectorize(&bump_profile));
    m.def("max_admissible_amplitude", &max_admissible_amplitude);
    m.def("l2_norm", &l2_norm, py::arg("phi"), py::arg("nodes_per_cell") = 65);
    m.def(
        "validate",
        [](const InitialData& phi, int lo, int hi) { return to_py(to_json(validate(phi, lo, hi))); },
        py::arg("phi"), py::arg("cell_lo") = -3, py::arg("cell_hi") = 3);

    m.def("epsilon_for_cell", &epsilon_for_cell, py::arg("cell"), py::arg("eps0") = 0.05);
    m.def(
        "residual",
        [](const TileSpec& tile, py::array_t<double, py::array::c_style | py::array::forcecast> u,
           py::array_t<double, py::array::c_style | py::array::forcecast> g, double epsilon) {
            if (u.ndim() != 2 || u.shape(0) != tile.nt || u.shape(1) != tile.nx)
                throw std::invalid_argument("u must have shape (nt, nx)");
            const GridFn grid(tile, std::vector<double>(u.data(), u.data() + u.size()));
            return to_array(residual_F(grid, make_params(tile, g, epsilon)));
        },
        py::arg("tile"), py::arg("u"), py::arg("g"), py::arg("epsilon") = 0.05);
    m.def(
        "operator_checks",
        [](const TileSpec& tile, py::array_t<double, py::array::c_style | py::array::forcecast> g, double epsilon,
           int n_samples, std::uint64_t seed) {
            const OperatorParams p = make_params(tile, g, epsilon);
            ordered_json out = to_json(check_S_bounds(p, n_samples, seed), check_expansive(p, n_samples, seed));
            out["identity_defect"] = check_fixed_point_identity(p, n_samples, seed).max_defect;
            return to_py(out);
        },
        py::arg("tile"), py::arg("g"), py::arg("epsilon") = 0.05, py::arg("n_samples") = 100,
        py::arg("seed") = 12345);

    m.def(
        "solve_tile",
        [](const TileSpec& tile, py::array_t<double, py::array::c_style | py::array::forcecast> g, double epsilon,
           double tol, int max_iter, double residual_tol) {
            return tile_dict(solve_tile(make_params(tile, g, epsilon), SolverConfig{tol, max_iter, residual_tol}));
        },
        py::arg("tile"), py::arg("g"), py::arg("epsilon") = 0.05, py::arg("tol") = 1e-10,
        py::arg("max_iter") = 200, py::arg("residual_tol") = 1e-8);

    m.def(
        "advance",
        [](const InitialData& phi, int slabs, int j_lo, int j_hi, int nt, int nx, double eps0, double tol,
           int max_iter, double residual_tol) {
            const GlobalSolution g =
                advance(phi, slabs, j_lo, j_hi, SolverConfig{tol, max_iter, residual_tol}, SlabOptions{nt, nx, eps0});
            py::list out_slabs;
            for (const auto& slab : g.slabs) {
                py::dict tiles;
                for (const auto& [j, t] : slab.tiles) tiles[py::int_(j)] = tile_dict(t);
                py::dict s;
                s["slab"] = slab.slab_k;
                s["tiles"] = tiles;
                s["envelope"] = to_py(to_json(check_envelope(slab)));
                s["interfaces"] = to_py(to_json(check_interfaces(slab)));
                out_slabs.append(s);
            }
            py::dict out;
            out["slabs"] = out_slabs;
            if (g.failure) {
                py::dict f;
                f["slab"] = g.failure->slab_k;
                f["cell"] = g.failure->cell_j;
                f["kind"] = to_string(g.failure->kind);
                f["iterations"] = g.failure->iterations;
                f["message"] = g.failure->message;
                out["failure"] = f;
            } else {
                out["failure"] = py::none();
                out["oracle"] = shock_time(phi) > slabs ? to_py(to_json(compare(g, phi))) : py::none();
            }
            return out;
        },
        py::arg("phi"), py::arg("slabs") = 1, py::arg("j_lo") = -3, py::arg("j_hi") = 3, py::arg("nt") = 65,
        py::arg("nx") = 65, py::arg("eps0") = 0.05, py::arg("tol") = 1e-10, py::arg("max_iter") = 200,
        py::arg("residual_tol") = 1e-8);

    m.def("shock_time", &shock_time);
    m.def(
        "eval_exact",
        [](const InitialData& phi, double t, py::array_t<double> x) {
            return py::vectorize([&](double xi) { return eval_exact(phi, t, xi); })(x);
        },
        py::arg("phi"), py::arg("t"), py::arg("x"));

    m.def(
        "run",
        [](const std::string& command, const std::string& config_json, const std::string& out_dir) {
            RunConfig cfg = parse_config(nlohmann::json::parse(config_json));
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            std::ostringstream log;
            int code = kExitFault;
            if (command == "validate") code = cmd_validate(cfg, log);
            else if (command == "solve") code = cmd_solve(cfg, log);
            else if (command == "oracle") code = cmd_oracle(cfg, log);
            else if (command == "opcheck") code = cmd_opcheck(cfg, log);
            else throw std::invalid_argument("unknown command " + command);
            return py::make_tuple(code, log.str());
        },
        py::arg("command"), py::arg("config_json"), py::arg("out_dir") = "");
}

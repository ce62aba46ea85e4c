// Python bindings for the separable-phase solution library.
//
// The module exposes the high-level operations: configured runs with file
// artifacts, residual verification, pointwise field sampling, the closed
// scenario formulas, and CSV table comparison. Configurations are accepted
// either as a JSON document (a string starting with '{') or as a path to one.

#include <complex>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "madelung/errors.hpp"
#include "madelung/field_table.hpp"
#include "madelung/free_particle.hpp"
#include "madelung/run_config.hpp"
#include "madelung/runner.hpp"
#include "madelung/waveguide.hpp"

namespace py = pybind11;

namespace {

madelung::RunConfig config_from(const std::string& spec) {
    const auto pos = spec.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && spec[pos] == '{') {
        return madelung::parse_config(spec);
    }
    return madelung::load_config(spec);
}

madelung::RunOptions make_options(const py::object& out_dir, int threads, bool rasters) {
    madelung::RunOptions opts;
    if (!out_dir.is_none()) {
        opts.out_dir_override = out_dir.cast<std::string>();
    }
    opts.threads = threads;
    opts.rasters = rasters;
    return opts;
}

py::dict result_dict(const madelung::RunResult& r) {
    py::list artifacts;
    for (const auto& p : r.artifacts) {
        artifacts.append(p.string());
    }
    py::dict d;
    d["report"] = r.report_text;
    d["report_path"] = r.report_path.string();
    d["artifacts"] = artifacts;
    d["passed"] = r.passed;
    return d;
}

py::dict sample_dict(const madelung::FieldSample& s) {
    py::dict d;
    d["A"] = s.A;
    d["S"] = s.S;
    d["V"] = s.V;
    d["V_B"] = s.V_B;
    d["psi"] = s.psi;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Separable-phase quantum solution family: runs, verification, sampling";

    py::register_exception<madelung::Error>(m, "Error");

    m.def(
        "run",
        [](const std::string& config, const py::object& out_dir, int threads,
           bool rasters) {
            return result_dict(
                madelung::run(config_from(config), make_options(out_dir, threads, rasters)));
        },
        py::arg("config"), py::arg("out_dir") = py::none(), py::arg("threads") = 0,
        py::arg("rasters") = false,
        "Evaluate the configured fields, write CSV tables (and optional PGM rasters)\n"
        "plus a JSON report. `config` is a JSON document or a path to one.");

    m.def(
        "verify",
        [](const std::string& config, const py::object& out_dir, int threads) {
            return result_dict(
                madelung::verify(config_from(config), make_options(out_dir, threads, false)));
        },
        py::arg("config"), py::arg("out_dir") = py::none(), py::arg("threads") = 0,
        "Probe the three governing equations with finite-difference stencils and\n"
        "write a residual report; `passed` reflects the configured thresholds.");

    m.def(
        "sample",
        [](const std::string& config, double x, double t) {
            return sample_dict(madelung::sample_fields(config_from(config), x, t));
        },
        py::arg("config"), py::arg("x"), py::arg("t"),
        "One field sample {A, S, V, V_B, psi} of the configured scenario at (x, t).");

    m.def(
        "config_hash",
        [](const std::string& config) { return config_from(config).hash; },
        py::arg("config"),
        "Canonical fingerprint of a configuration (16 hex digits); out_dir is not\n"
        "part of the fingerprint.");

    m.def(
        "canonical_config",
        [](const std::string& config) { return config_from(config).canonical_text; },
        py::arg("config"), "Canonical JSON text with every default materialized.");

    m.def("allowed_outputs", [] { return madelung::allowed_outputs(); },
          "Output-field names a configuration may request.");

    m.def(
        "free_particle_c2",
        [](double eta, double kappa, double c1, int sign) {
            return madelung::free_particle_c2(eta, kappa, c1, sign);
        },
        py::arg("eta"), py::arg("kappa"), py::arg("c1"), py::arg("sign") = 1,
        "Focal time of the spreading packet; the drive satisfies nu(0) = 0.");

    m.def(
        "free_particle_fields",
        [](double x, double t, double eta, double kappa, double c1, int c2_sign,
           double c3) {
            madelung::FreeParticleParams p;
            p.eta = eta;
            p.kappa = kappa;
            p.c1 = c1;
            p.c2_sign = c2_sign;
            p.c3 = c3;
            const auto f = madelung::free_particle_fields(x, t, p);
            py::dict d;
            d["A"] = f.A;
            d["S"] = f.S;
            d["V_B"] = f.V_B;
            return d;
        },
        py::arg("x"), py::arg("t"), py::arg("eta") = 0.1, py::arg("kappa") = 0.5,
        py::arg("c1") = 0.8, py::arg("c2_sign") = 1, py::arg("c3") = 0.0,
        "Closed spreading-packet fields {A, S, V_B}; the external potential is 0.");

    m.def(
        "waveguide_n1",
        [](double x, double t, double c) {
            const auto f = madelung::waveguide_n1_closed(x, t, c);
            py::dict d;
            d["density"] = f.density;
            d["S"] = f.S;
            d["V"] = f.V;
            d["V_B"] = f.V_B;
            return d;
        },
        py::arg("x"), py::arg("t"), py::arg("c") = 0.0,
        "Closed rigid-shift fields {density, S, V, V_B} of the linear-slope member.");

    m.def(
        "waveguide_flow",
        [](int n, std::complex<double> x, double nu) {
            return madelung::waveguide_F(n, x, nu);
        },
        py::arg("n"), py::arg("x"), py::arg("nu"),
        "Closed lattice flow F(x, nu) = (x^(1/n) - nu/(n!)^(1/n))^n (principal branch).");

    m.def(
        "compare_csv",
        [](const std::string& a, const std::string& b, double tol) {
            const auto d = madelung::compare_files(a, b, tol);
            py::dict out;
            out["max_abs"] = d.max_abs;
            out["max_rel"] = d.max_rel;
            out["worst_row"] = d.worst_row;
            out["tol"] = d.tol;
            out["passed"] = d.passed;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("tol"),
        "Compare two field tables row by row after checking their grids agree.");
}

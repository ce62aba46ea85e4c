// Acceptance gate for the separable-phase solution family.
//
// Each check prints one PASS/FAIL line with the measured quantity and its
// bound; the process exits nonzero if any check fails. The checks pin the
// end-to-end behavior the library promises:
//   1-3  the spreading-packet drive (focal time, zero start, V = 0)
//   4    flow series against closed flows (convergent and terminating)
//   5    the rigid-shift lattice member against its printed closed set
//   6    PDE residuals for every scenario, including the complex regime
//   7    characteristic-trace oracles for flow and amplitude transport
//   8    complex-regime structure on the negative half-line
//   9    stencil convergence order of the residual probes

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "madelung/characteristics.hpp"
#include "madelung/free_particle.hpp"
#include "madelung/residuals.hpp"
#include "madelung/runner.hpp"
#include "madelung/waveguide.hpp"

namespace {

using madelung::cplx;

// Pinned acceptance tolerances.
constexpr double kFocalTimeTol = 1e-12;        // |c2 - 2| for both parameter sets
constexpr double kDriveStartTol = 1e-12;       // |nu(0)|
constexpr double kFlatPotentialLinf = 1e-8;    // packet: reconstructed V over the full grid
constexpr double kQuadraticFlowRel = 1e-10;    // series vs x exp(-kappa nu)
constexpr double kTerminatingFlowRel = 1e-12;  // series vs closed lattice flow
constexpr double kClosedSetAbsTol = 1e-10;     // n = 1 printed set vs series evaluator
constexpr double kSchrodingerLinf = 1e-5;      // real scenarios, order-4 probes
constexpr double kTransportLinf = 1e-6;
constexpr double kPhaseLinf = 1e-6;
constexpr double kComplexRegimeLinf = 1e-4;    // n = 2 windows, all three equations
constexpr double kBacktraceRel = 1e-8;         // characteristic foot point vs F
constexpr double kTransportedAmpRel = 1e-7;    // transported amplitude vs A
constexpr double kImSignalMin = 1e-3;          // complex regime must be genuinely complex
constexpr double kImLeakMax = 1e-12;           // positive axis must stay real
constexpr double kOrderRatioLow = 8.0;         // residual Linf ratio under step halving
constexpr double kOrderRatioHigh = 24.0;       // (expected 16 for order-4 stencils)
constexpr int kTraceSamples = 500;
constexpr int kTraceSteps = 2500;
constexpr unsigned kTraceSeed = 20260817u;

int failures = 0;

void report(int index, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, label.c_str(),
                detail.c_str());
    if (!pass) {
        ++failures;
    }
}

void run_check(int index, const std::string& label,
               const std::function<std::pair<bool, std::string>()>& check) {
    try {
        const auto [pass, detail] = check();
        report(index, label, pass, detail);
    } catch (const std::exception& e) {
        report(index, label, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return std::string(buf);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

madelung::RunConfig config(const std::string& text) {
    return madelung::parse_config(text);
}

const char* kPacketConfig =
    "{\"scenario\": \"free_particle\","
    "\"params\": {\"eta\": 0.1, \"kappa\": 0.5, \"c1\": 0.8}}";
const char* kNarrowPacketConfig =
    "{\"scenario\": \"free_particle\","
    "\"params\": {\"eta\": 0.1, \"kappa\": 0.5, \"c1\": 0.2}}";
const char* kShiftConfig =
    "{\"scenario\": \"waveguide\", \"params\": {\"n\": 1, \"c\": 0.0}}";
const char* kLatticePositiveConfig =
    "{\"scenario\": \"waveguide\", \"params\": {\"n\": 2}}";
const char* kLatticeNegativeConfig =
    "{\"scenario\": \"waveguide\", \"params\": {\"n\": 2},"
    "\"grid\": {\"x_min\": -4.0, \"x_max\": -0.1}}";

madelung::FreeParticleParams packet_params(double c1) {
    madelung::FreeParticleParams p;
    p.eta = 0.1;
    p.kappa = 0.5;
    p.c1 = c1;
    return p;
}

struct ResidualTriple {
    madelung::ResidualReport schrodinger;
    madelung::ResidualReport continuity;
    madelung::ResidualReport qhj;
};

ResidualTriple probe_all(const madelung::RunConfig& cfg) {
    const madelung::FieldSet fields = madelung::make_field_set(cfg);
    const madelung::ResidualOptions opts{cfg.residual_cap};
    ResidualTriple r;
    r.schrodinger = madelung::residual_schrodinger(fields, cfg.grid, cfg.stencil, opts);
    r.continuity = madelung::residual_continuity(fields, cfg.grid, cfg.stencil, opts);
    r.qhj = madelung::residual_qhj(fields, cfg.grid, cfg.stencil, opts);
    return r;
}

}  // namespace

int main() {
    run_check(1, "focal-time constant of both packet parameter sets", [] {
        const double wide = madelung::free_particle_c2(0.1, 0.5, 0.8, +1);
        const double narrow = madelung::free_particle_c2(0.1, 0.5, 0.2, +1);
        const double dev = std::max(std::abs(wide - 2.0), std::abs(narrow - 2.0));
        return std::make_pair(dev <= kFocalTimeTol,
                              fmt("max |c2 - 2| = %.3g (bound %.3g)", dev, kFocalTimeTol));
    });

    run_check(2, "packet drive starts at nu(0) = 0", [] {
        const double wide = std::abs(madelung::free_particle_nu(0.0, packet_params(0.8)));
        const double narrow = std::abs(madelung::free_particle_nu(0.0, packet_params(0.2)));
        const double dev = std::max(wide, narrow);
        return std::make_pair(dev <= kDriveStartTol,
                              fmt("max |nu(0)| = %.3g (bound %.3g)", dev, kDriveStartTol));
    });

    run_check(3, "packet external potential vanishes on the full grid", [] {
        // The closed fields carry V = 0; the phase-equation residual is then
        // exactly the reconstructed external potential.
        const auto cfg = config(kPacketConfig);
        const auto fields = madelung::make_field_set(cfg);
        const auto r = madelung::residual_qhj(fields, cfg.grid, cfg.stencil,
                                              madelung::ResidualOptions{cfg.residual_cap});
        const bool pass = r.linf <= kFlatPotentialLinf && r.skipped == 0 &&
                          r.points == static_cast<long>(cfg.grid.nx) * cfg.grid.nt;
        return std::make_pair(
            pass, fmt("|V| Linf = %.3g over 201x201 (bound %.3g, no skips)", r.linf,
                      kFlatPotentialLinf));
    });

    run_check(4, "flow series matches the closed flows", [] {
        // Convergent case: Q' = 0.5 x driven by nu = sin t.
        const madelung::FSeries quad(madelung::PowerSum(0.5, madelung::RationalExp(1, 1)),
                                     madelung::TruncationPolicy());
        double worst_quad = 0.0;
        for (const double x : linspace(-5.0, 5.0, 21)) {
            if (x == 0.0) {
                continue;
            }
            for (const double t : linspace(0.0, 10.0, 101)) {
                const double nu = std::sin(t);
                const cplx got = quad.evaluate(cplx(x, 0.0), cplx(nu, 0.0));
                const cplx want(x * std::exp(-0.5 * nu), 0.0);
                worst_quad = std::max(worst_quad, std::abs(got - want) / std::abs(want));
            }
        }
        if (worst_quad > kQuadraticFlowRel) {
            return std::make_pair(false, fmt("convergent-series rel err %.3g (bound %.3g)",
                                             worst_quad, kQuadraticFlowRel));
        }

        // Terminating case: lattice slopes for n = 1, 2, 3 stop at k = n and
        // reproduce the closed power. Error is relative to the flow scale.
        double worst_term = 0.0;
        for (int n = 1; n <= 3; ++n) {
            const madelung::FSeries series(madelung::waveguide_q_prime(n),
                                           madelung::TruncationPolicy());
            if (!series.terminated() ||
                series.fks().size() != static_cast<std::size_t>(n) + 1) {
                return std::make_pair(false,
                                      fmt("series for n = %.0f did not stop at k = n",
                                          static_cast<double>(n)));
            }
            for (const double x : linspace(0.1, 4.0, 40)) {
                for (const double t : linspace(0.0, 10.0, 81)) {
                    const double nu = std::sin(t);
                    const cplx got = series.evaluate(cplx(x, 0.0), cplx(nu, 0.0));
                    const cplx want = madelung::waveguide_F(n, cplx(x, 0.0), nu);
                    const double scale = std::max(std::abs(want), std::abs(x));
                    worst_term = std::max(worst_term, std::abs(got - want) / scale);
                }
            }
        }
        const bool pass = worst_term <= kTerminatingFlowRel;
        return std::make_pair(
            pass, fmt("rel err: convergent %.3g, terminating %.3g (bounds 1e-10, 1e-12)",
                      worst_quad, worst_term));
    });

    run_check(5, "rigid-shift closed set matches the series evaluator", [] {
        const madelung::WaveguideParams p(1, 0.0);
        const auto pipe = madelung::waveguide_pipeline(p);
        double worst = 0.0;
        for (const double t : linspace(0.05, 9.95, 199)) {
            const auto slice = pipe.slice(t);
            for (const double x : linspace(-4.0, 4.0, 161)) {
                const auto s = slice.at(cplx(x, 0.0));
                const auto closed = madelung::waveguide_n1_closed(x, t, 0.0);
                worst = std::max(worst, std::abs(std::norm(s.psi) - closed.density));
                worst = std::max(worst, std::abs(s.S - cplx(closed.S, 0.0)));
                worst = std::max(worst, std::abs(s.V - cplx(closed.V, 0.0)));
                worst = std::max(worst, std::abs(s.V_B - cplx(closed.V_B, 0.0)));
            }
        }
        return std::make_pair(worst <= kClosedSetAbsTol,
                              fmt("max abs diff %.3g over density/S/V/V_B (bound %.3g)",
                                  worst, kClosedSetAbsTol));
    });

    run_check(6, "equation residuals across all scenarios", [] {
        std::string detail;
        bool pass = true;

        const auto judge_real = [&](const char* name, const ResidualTriple& r) {
            const bool ok = r.schrodinger.linf <= kSchrodingerLinf &&
                            r.continuity.linf <= kTransportLinf && r.qhj.linf <= kPhaseLinf;
            pass = pass && ok;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s wave %.2g transport %.2g phase %.2g; ",
                          name, r.schrodinger.linf, r.continuity.linf, r.qhj.linf);
            detail += buf;
        };
        judge_real("packet:", probe_all(config(kPacketConfig)));
        judge_real("shift:", probe_all(config(kShiftConfig)));

        const auto judge_complex = [&](const char* name, const ResidualTriple& r) {
            const double worst = std::max(
                {r.schrodinger.linf, r.continuity.linf, r.qhj.linf});
            const bool ok = worst <= kComplexRegimeLinf && r.schrodinger.points > 0;
            pass = pass && ok;
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s max %.2g; ", name, worst);
            detail += buf;
        };
        judge_complex("n2+:", probe_all(config(kLatticePositiveConfig)));
        judge_complex("n2-:", probe_all(config(kLatticeNegativeConfig)));

        detail += "(bounds 1e-5/1e-6/1e-6, complex windows 1e-4)";
        return std::make_pair(pass, detail);
    });

    run_check(7, "characteristic traces recover flow and amplitude", [] {
        std::mt19937 rng(kTraceSeed);
        double worst_flow = 0.0;
        double worst_amp = 0.0;

        {
            const auto p = packet_params(0.8);
            const auto ansatz = madelung::free_particle_ansatz(p);
            const auto a0 = madelung::free_particle_a0(p);
            std::uniform_real_distribution<double> xd(0.2, 6.0);
            std::uniform_real_distribution<double> td(0.05, 10.0);
            std::uniform_int_distribution<int> sd(0, 1);
            for (int i = 0; i < kTraceSamples; ++i) {
                const double x = xd(rng) * (sd(rng) ? 1.0 : -1.0);
                const double t = td(rng);
                const double f = x * std::exp(-p.kappa * madelung::free_particle_nu(t, p));
                const cplx foot = madelung::characteristics_backtrace(
                    ansatz, cplx(x, 0.0), t, kTraceSteps);
                worst_flow = std::max(worst_flow, std::abs(foot - cplx(f, 0.0)) /
                                                      std::abs(cplx(f, 0.0)));
                const cplx amp = madelung::characteristics_amplitude(
                    ansatz, a0, cplx(x, 0.0), t, kTraceSteps);
                const double want = madelung::free_particle_fields(x, t, p).A;
                worst_amp = std::max(worst_amp, std::abs(amp - cplx(want, 0.0)) / want);
            }
        }

        {
            const madelung::WaveguideParams p(2, 0.0);
            const auto ansatz = madelung::waveguide_ansatz(p);
            const auto pipe = madelung::waveguide_pipeline(p);
            std::uniform_real_distribution<double> xd(2.5, 4.0);
            std::uniform_real_distribution<double> td(0.05, 10.0);
            for (int i = 0; i < kTraceSamples; ++i) {
                const double x = xd(rng);
                const double t = td(rng);
                const cplx f = madelung::waveguide_F(2, cplx(x, 0.0), std::sin(t));
                const cplx foot = madelung::characteristics_backtrace(
                    ansatz, cplx(x, 0.0), t, kTraceSteps);
                worst_flow = std::max(worst_flow, std::abs(foot - f) / std::abs(f));
                const cplx amp = madelung::characteristics_amplitude(
                    ansatz, madelung::waveguide_a0(), cplx(x, 0.0), t, kTraceSteps);
                const cplx want = pipe.at(cplx(x, 0.0), t).A;
                worst_amp = std::max(worst_amp, std::abs(amp - want) / std::abs(want));
            }
        }

        const bool pass = worst_flow <= kBacktraceRel && worst_amp <= kTransportedAmpRel;
        return std::make_pair(
            pass, fmt("rel err: foot point %.3g (bound 1e-8), amplitude %.3g (bound 1e-7)",
                      worst_flow, worst_amp));
    });

    run_check(8, "complex regime is complex below zero and real above", [] {
        const madelung::WaveguideParams p(2, 0.0);
        const auto pipe = madelung::waveguide_pipeline(p);

        double im_a = 0.0, im_s = 0.0, im_v = 0.0, im_vb = 0.0, max_density = 0.0;
        for (const double t : linspace(0.05, 9.95, 199)) {
            const auto slice = pipe.slice(t);
            for (const double x : linspace(-4.0, -0.1, 79)) {
                const auto s = slice.at(cplx(x, 0.0));
                im_a = std::max(im_a, std::abs(s.A.imag()));
                im_s = std::max(im_s, std::abs(s.S.imag()));
                im_v = std::max(im_v, std::abs(s.V.imag()));
                im_vb = std::max(im_vb, std::abs(s.V_B.imag()));
                max_density = std::max(max_density, std::norm(s.psi));
            }
        }
        double leak = 0.0;
        for (const double t : linspace(0.05, 9.95, 199)) {
            const auto slice = pipe.slice(t);
            for (const double x : linspace(0.1, 4.0, 79)) {
                const auto s = slice.at(cplx(x, 0.0));
                leak = std::max({leak, std::abs(s.A.imag()), std::abs(s.S.imag()),
                                 std::abs(s.V.imag()), std::abs(s.V_B.imag())});
            }
        }

        const double weakest = std::min({im_a, im_s, im_v, im_vb});
        const bool pass =
            weakest > kImSignalMin && max_density > 1.0 && leak <= kImLeakMax;
        return std::make_pair(
            pass, fmt("below 0: weakest Im signal %.3g (floor 1e-3), max density %.3g > 1;",
                      weakest, max_density) +
                      fmt(" above 0: Im leak %.3g (cap 1e-12)", leak));
    });

    run_check(9, "residual probes converge at their stencil order", [] {
        const auto cfg = config(kPacketConfig);
        const auto fields = madelung::make_field_set(cfg);
        madelung::GridSpec grid;
        grid.x_min = -3.0;
        grid.x_max = 3.0;
        grid.nx = 31;
        grid.t_min = 0.5;
        grid.t_max = 3.5;
        grid.nt = 31;
        madelung::StencilConfig coarse;
        coarse.dx = 0.02;
        coarse.dt = 0.02;
        madelung::StencilConfig fine;
        fine.dx = 0.01;
        fine.dt = 0.01;

        using Probe = madelung::ResidualReport (*)(const madelung::FieldSet&,
                                                   const madelung::GridSpec&,
                                                   const madelung::StencilConfig&,
                                                   const madelung::ResidualOptions&);
        const Probe probes[] = {&madelung::residual_schrodinger,
                                &madelung::residual_continuity, &madelung::residual_qhj};
        bool pass = true;
        std::string detail = "Linf ratios under step halving:";
        for (const Probe probe : probes) {
            const auto big = probe(fields, grid, coarse, madelung::ResidualOptions{});
            const auto small = probe(fields, grid, fine, madelung::ResidualOptions{});
            const double ratio = big.linf / small.linf;
            pass = pass && ratio >= kOrderRatioLow && ratio <= kOrderRatioHigh;
            detail += fmt(" %.1f", ratio);
        }
        detail += " (bounds [8, 24], expected 16)";
        return std::make_pair(pass, detail);
    });

    std::printf("%d of 9 checks passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}

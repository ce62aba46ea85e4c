#include "madelung/waveguide.hpp"

#include <cmath>
#include <utility>

namespace madelung {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

void check_n(int n) {
    if (n < 1) {
        throw InvariantViolation("lattice index n must be at least 1");
    }
    if (n > 20) {
        throw InvariantViolation("lattice index n too large for exact factorials");
    }
}

}  // namespace

TimeFunctions waveguide_time() {
    return TimeFunctions([](double t) { return std::sin(t); },
                         [](double t) { return std::cos(t); },
                         [](double t) { return -std::sin(t); }, [](double t) { return t; },
                         [](double) { return 1.0; });
}

InitialAmplitude waveguide_a0() { return gaussian_amplitude(1.0); }

PowerSum waveguide_q_prime(int n) {
    check_n(n);
    const double coeff = n / std::pow(factorial(n), 1.0 / n);
    return PowerSum(cplx(coeff, 0.0), RationalExp(n - 1, n));
}

cplx waveguide_F(int n, cplx x, double nu) {
    check_n(n);
    const cplx root = pow_principal(x, RationalExp(1, n));
    const cplx u = root - nu / std::pow(factorial(n), 1.0 / n);
    return pow_principal(u, RationalExp(n, 1));
}

WaveguideParams::WaveguideParams(int n_index, double phase_constant)
    : WaveguideParams(n_index, phase_constant, waveguide_time(), waveguide_a0()) {}

WaveguideParams::WaveguideParams(int n_index, double phase_constant, TimeFunctions time_fns,
                                 InitialAmplitude initial)
    : n(n_index), c(phase_constant), time(std::move(time_fns)), a0(std::move(initial)) {
    check_n(n);
}

PhaseAnsatz waveguide_ansatz(const WaveguideParams& p) {
    return PhaseAnsatz(waveguide_q_prime(p.n), cplx(p.c, 0.0), p.time);
}

PipelineEvaluator waveguide_pipeline(const WaveguideParams& p, TruncationPolicy policy) {
    // The f recursion stops after n + 1 entries; make sure the policy allows it.
    if (policy.k_max < p.n + 1) {
        policy.k_max = p.n + 1;
    }
    return PipelineEvaluator(waveguide_ansatz(p), p.a0, policy);
}

FieldSample waveguide_fields(cplx x, double t, const WaveguideParams& p) {
    return waveguide_pipeline(p).at(x, t);
}

WaveguideN1Fields waveguide_n1_closed(double x, double t, double c) {
    const double s = std::sin(t);
    const double shifted = x - s;

    WaveguideN1Fields f;
    f.density = std::exp(-2.0 * shifted * shifted);
    f.S = t + (x + c) * std::cos(t);
    f.V = -1.25 + 2.0 * x * x - 1.25 * std::cos(2.0 * t) + (c - 3.0 * x) * s;
    f.V_B = std::cos(2.0 * t) - 2.0 * x * x + 4.0 * x * s;
    return f;
}

FieldSample waveguide_n1_sample(double x, double t, double c) {
    const WaveguideN1Fields f = waveguide_n1_closed(x, t, c);
    FieldSample out;
    out.A = std::exp(-(x - std::sin(t)) * (x - std::sin(t)));
    out.S = f.S;
    out.V = f.V;
    out.V_B = f.V_B;
    out.psi = wavefunction(out.A, out.S);
    return out;
}

}  // namespace madelung

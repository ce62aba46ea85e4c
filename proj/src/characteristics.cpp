#include "madelung/characteristics.hpp"

#include <cmath>

namespace madelung {

namespace {

struct State {
    cplx y;  // position along the characteristic
    cplx j;  // accumulated (1/2) integral of nu_dot Q''(y)
};

State rhs(const PhaseAnsatz& ansatz, double s, const State& st, bool with_amplitude) {
    const cplx nd = ansatz.time().nu_dot(s);
    cplx qp;
    cplx q2(0.0, 0.0);
    try {
        qp = ansatz.q_prime().evaluate(st.y);
        if (with_amplitude) {
            q2 = ansatz.q_second().evaluate(st.y);
        }
    } catch (const EvalAtSingularity&) {
        throw TrajectoryHitSingularity("characteristic reached a singular point of Q'");
    }
    return State{nd * qp, 0.5 * nd * q2};
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

State integrate(const PhaseAnsatz& ansatz, cplx x0, double s0, double s1, int steps,
                bool with_amplitude) {
    State st{x0, cplx(0.0, 0.0)};
    if (s0 == s1) {
        return st;  // zero path length: exact
    }
    if (steps < 1) {
        throw InvariantViolation("characteristic integration needs steps >= 1");
    }
    const double h = (s1 - s0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double s = s0 + i * h;
        const State k1 = rhs(ansatz, s, st, with_amplitude);
        const State k2 = rhs(ansatz, s + 0.5 * h,
                             State{st.y + 0.5 * h * k1.y, st.j + 0.5 * h * k1.j},
                             with_amplitude);
        const State k3 = rhs(ansatz, s + 0.5 * h,
                             State{st.y + 0.5 * h * k2.y, st.j + 0.5 * h * k2.j},
                             with_amplitude);
        const State k4 = rhs(ansatz, s + h, State{st.y + h * k3.y, st.j + h * k3.j},
                             with_amplitude);
        st.y += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        st.j += (h / 6.0) * (k1.j + 2.0 * k2.j + 2.0 * k3.j + k4.j);
        if (!finite(st.y)) {
            throw TrajectoryHitSingularity("characteristic diverged during integration");
        }
    }
    return st;
}

}  // namespace

cplx characteristics_trace(const PhaseAnsatz& ansatz, cplx x0, double s0, double s1,
                           int steps) {
    return integrate(ansatz, x0, s0, s1, steps, /*with_amplitude=*/false).y;
}

cplx characteristics_backtrace(const PhaseAnsatz& ansatz, cplx x, double t, int steps) {
    return characteristics_trace(ansatz, x, t, 0.0, steps);
}

cplx characteristics_amplitude(const PhaseAnsatz& ansatz, const InitialAmplitude& a0,
                               cplx x, double t, int steps) {
    const State st = integrate(ansatz, x, t, 0.0, steps, /*with_amplitude=*/true);
    return std::exp(st.j) * a0.value(st.y);
}

}  // namespace madelung

#include "madelung/ansatz.hpp"

#include <cmath>
#include <utility>

namespace madelung {

namespace {
constexpr double kNuAtZeroTol = 1e-12;
}

TimeFunctions::TimeFunctions(TimeFn nu_fn, TimeFn nu_dot_fn, TimeFn nu_ddot_fn, TimeFn mu_fn,
                             TimeFn mu_dot_fn)
    : nu(std::move(nu_fn)),
      nu_dot(std::move(nu_dot_fn)),
      nu_ddot(std::move(nu_ddot_fn)),
      mu(std::move(mu_fn)),
      mu_dot(std::move(mu_dot_fn)) {
    if (!nu || !nu_dot || !nu_ddot || !mu || !mu_dot) {
        throw InvariantViolation("time functions must all be callable");
    }
    if (std::abs(nu(0.0)) > kNuAtZeroTol) {
        throw InvariantViolation("nu(0) must vanish so that the flow starts at the identity");
    }
}

TruncationPolicy::TruncationPolicy(int k_max_terms, double tail_tolerance)
    : k_max(k_max_terms), tail_tol(tail_tolerance) {
    if (k_max < 1) {
        throw InvariantViolation("truncation order must be at least 1");
    }
    if (!(tail_tol > 0.0)) {
        throw InvariantViolation("tail tolerance must be positive");
    }
}

InitialAmplitude gaussian_amplitude(double width) {
    if (!(width > 0.0)) {
        throw InvariantViolation("gaussian amplitude width must be positive");
    }
    const double w = width;
    InitialAmplitude a0;
    a0.value = [w](cplx x) { return std::exp(-w * x * x); };
    a0.first = [w](cplx x) { return -2.0 * w * x * std::exp(-w * x * x); };
    a0.second = [w](cplx x) {
        return (4.0 * w * w * x * x - 2.0 * w) * std::exp(-w * x * x);
    };
    a0.description = "exp(-" + std::to_string(w) + "*x^2)";
    return a0;
}

PhaseAnsatz::PhaseAnsatz(PowerSum q_prime, cplx q_constant, TimeFunctions time)
    : q_prime_(std::move(q_prime)),
      q_(q_prime_.antiderivative(q_constant)),
      q_second_(q_prime_.derivative()),
      q_third_(q_second_.derivative()),
      time_(std::move(time)) {
    if (q_prime_.is_zero()) {
        throw InvariantViolation("Q' must not be identically zero");
    }
}

}  // namespace madelung

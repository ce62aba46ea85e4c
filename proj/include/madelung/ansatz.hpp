#pragma once

#include <functional>
#include <string>

#include "madelung/power_sum.hpp"

namespace madelung {

using TimeFn = std::function<cplx(double)>;

/// nu, mu and the time derivatives the field formulas need.
/// The construction of the flow F requires nu(0) = 0, so that F(x, 0) = x.
struct TimeFunctions {
    TimeFn nu;
    TimeFn nu_dot;
    TimeFn nu_ddot;
    TimeFn mu;
    TimeFn mu_dot;

    TimeFunctions(TimeFn nu_fn, TimeFn nu_dot_fn, TimeFn nu_ddot_fn, TimeFn mu_fn,
                  TimeFn mu_dot_fn);
};

/// Truncation controls for the flow series F = sum_k (-nu)^k/k! f_k.
struct TruncationPolicy {
    int k_max = 64;
    double tail_tol = 1e-14;

    TruncationPolicy() = default;
    TruncationPolicy(int k_max_terms, double tail_tolerance);
};

/// Initial profile A(x, 0) together with its first two derivatives, which the
/// exact chain-rule evaluation of the curvature term needs.
struct InitialAmplitude {
    std::function<cplx(cplx)> value;
    std::function<cplx(cplx)> first;
    std::function<cplx(cplx)> second;
    std::string description;
};

/// exp(-w x^2) with derivatives; w > 0.
InitialAmplitude gaussian_amplitude(double width);

/// Separable phase S(x, t) = Q(x) nu_dot(t) + mu(t), held via Q' (a power
/// sum) plus the integration constant of Q. Q and its higher derivatives are
/// computed once at construction, so an exponent of -1 in Q' surfaces here.
class PhaseAnsatz {
public:
    PhaseAnsatz(PowerSum q_prime, cplx q_constant, TimeFunctions time);

    const PowerSum& q() const { return q_; }
    const PowerSum& q_prime() const { return q_prime_; }
    const PowerSum& q_second() const { return q_second_; }
    const PowerSum& q_third() const { return q_third_; }
    const TimeFunctions& time() const { return time_; }

private:
    PowerSum q_prime_;
    PowerSum q_;
    PowerSum q_second_;
    PowerSum q_third_;
    TimeFunctions time_;
};

}  // namespace madelung

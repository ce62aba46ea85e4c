#pragma once

#include "madelung/fields.hpp"

namespace madelung {

/// nu = sin t, mu = t: the harmonic drive used by the lattice-like family.
TimeFunctions waveguide_time();

/// exp(-x^2) initial profile.
InitialAmplitude waveguide_a0();

/// Q' = n/(n!)^(1/n) * x^((n-1)/n); the f recursion then terminates at k = n.
PowerSum waveguide_q_prime(int n);

/// Closed form of the flow, F = (x^(1/n) - nu/(n!)^(1/n))^n on the principal
/// branch. Equals x (1 - nu/(n!x)^(1/n))^n but stays regular at x = 0.
cplx waveguide_F(int n, cplx x, double nu);

/// Parameters of the lattice-like family. For n > 1 the fields become
/// complex at x < 0 and the implied Hamiltonian is non-Hermitian.
struct WaveguideParams {
    int n;
    double c;  // integration constant of Q, a phase offset
    TimeFunctions time;
    InitialAmplitude a0;

    explicit WaveguideParams(int n_index = 1, double phase_constant = 0.0);
    WaveguideParams(int n_index, double phase_constant, TimeFunctions time_fns,
                    InitialAmplitude initial);
};

PhaseAnsatz waveguide_ansatz(const WaveguideParams& p);

/// Generic evaluator for this family (any n); exact up to roundoff because
/// the flow series terminates.
PipelineEvaluator waveguide_pipeline(const WaveguideParams& p,
                                     TruncationPolicy policy = TruncationPolicy());

/// One sample through the generic evaluator.
FieldSample waveguide_fields(cplx x, double t, const WaveguideParams& p);

/// The n = 1 fields in the closed form they reduce to (all real).
struct WaveguideN1Fields {
    double density;
    double S;
    double V;
    double V_B;
};

WaveguideN1Fields waveguide_n1_closed(double x, double t, double c);

/// Closed-form n = 1 sample: A = exp(-(x - sin t)^2) >= 0.
FieldSample waveguide_n1_sample(double x, double t, double c);

}  // namespace madelung

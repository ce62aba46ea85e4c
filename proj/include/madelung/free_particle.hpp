#pragma once

#include "madelung/fields.hpp"

namespace madelung {

/// Parameters of the quadratic-phase family whose external potential is
/// identically zero: a spreading Gaussian packet with a Gouy phase.
struct FreeParticleParams {
    double eta = 0.1;    // initial amplitude width: A(x, 0) = exp(-eta x^2)
    double kappa = 0.5;  // Q(x) = kappa x^2 / 2
    double c1 = 0.8;     // width scale; kappa^2 c1 >= 4 eta^2 required
    int c2_sign = 1;     // branch of c2 = +-sqrt(kappa^2 c1 - 4 eta^2)/(kappa^2 c1)
    double c3 = 0.0;     // constant phase offset

    /// Throws InvariantViolation for non-positive eta/kappa/c1 or a bad sign,
    /// NegativeDiscriminant when no real c2 can satisfy nu(0) = 0.
    void validate() const;
};

/// The focal-time constant fixed by nu(0) = 0.
/// Throws NegativeDiscriminant when kappa^2 c1 < 4 eta^2.
double free_particle_c2(double eta, double kappa, double c1, int sign);

double free_particle_nu(double t, const FreeParticleParams& p);
double free_particle_nu_dot(double t, const FreeParticleParams& p);
double free_particle_nu_ddot(double t, const FreeParticleParams& p);
double free_particle_mu(double t, const FreeParticleParams& p);
double free_particle_mu_dot(double t, const FreeParticleParams& p);

/// The three real fields of the closed-form solution (V is identically 0).
struct FreeParticleFields {
    double A;
    double S;
    double V_B;
};

FreeParticleFields free_particle_fields(double x, double t, const FreeParticleParams& p);

/// Closed-form sample with V = 0 and psi = A exp(iS).
FieldSample free_particle_sample(double x, double t, const FreeParticleParams& p);

TimeFunctions free_particle_time(const FreeParticleParams& p);
InitialAmplitude free_particle_a0(const FreeParticleParams& p);

/// Q' = kappa x with the scenario's time functions: feeds the generic
/// evaluator for cross-checks against the closed forms.
PhaseAnsatz free_particle_ansatz(const FreeParticleParams& p);

}  // namespace madelung

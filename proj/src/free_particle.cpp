#include "madelung/free_particle.hpp"

#include <cmath>

namespace madelung {

namespace {

/// 4 eta^2 + kappa^4 c1^2 (t - c2)^2, the recurring denominator.
double packet_denominator(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    const double u = k2c1 * (t - free_particle_c2(p.eta, p.kappa, p.c1, p.c2_sign));
    return 4.0 * p.eta * p.eta + u * u;
}

}  // namespace

void FreeParticleParams::validate() const {
    if (!(eta > 0.0)) {
        throw InvariantViolation("eta must be positive");
    }
    if (!(kappa > 0.0)) {
        throw InvariantViolation("kappa must be positive");
    }
    if (!(c1 > 0.0)) {
        throw InvariantViolation("c1 must be positive");
    }
    if (c2_sign != 1 && c2_sign != -1) {
        throw InvariantViolation("c2_sign must be +1 or -1");
    }
    free_particle_c2(eta, kappa, c1, c2_sign);  // throws NegativeDiscriminant
}

double free_particle_c2(double eta, double kappa, double c1, int sign) {
    const double k2c1 = kappa * kappa * c1;
    const double disc = k2c1 - 4.0 * eta * eta;
    if (disc < 0.0) {
        throw NegativeDiscriminant("kappa^2 c1 - 4 eta^2 < 0: nu(0) = 0 has no real solution");
    }
    return sign * std::sqrt(disc) / k2c1;
}

double free_particle_nu(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    return std::log(packet_denominator(t, p) / k2c1) / (2.0 * p.kappa);
}

double free_particle_nu_dot(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    const double c2 = free_particle_c2(p.eta, p.kappa, p.c1, p.c2_sign);
    const double u = k2c1 * (t - c2);
    return p.kappa * p.c1 * u / packet_denominator(t, p);
}

double free_particle_nu_ddot(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    const double c2 = free_particle_c2(p.eta, p.kappa, p.c1, p.c2_sign);
    const double u = k2c1 * (t - c2);
    const double d = 4.0 * p.eta * p.eta + u * u;
    return p.kappa * p.c1 * k2c1 * (4.0 * p.eta * p.eta - u * u) / (d * d);
}

double free_particle_mu(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    const double c2 = free_particle_c2(p.eta, p.kappa, p.c1, p.c2_sign);
    return -0.5 * std::atan(k2c1 * (t - c2) / (2.0 * p.eta)) + p.c3;
}

double free_particle_mu_dot(double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    return -p.eta * k2c1 / packet_denominator(t, p);
}

FreeParticleFields free_particle_fields(double x, double t, const FreeParticleParams& p) {
    const double k2c1 = p.kappa * p.kappa * p.c1;
    const double d = packet_denominator(t, p);
    const double beta = p.eta * k2c1 / d;  // instantaneous Gaussian width

    FreeParticleFields f;
    f.A = std::pow(k2c1 / d, 0.25) * std::exp(-beta * x * x);
    f.S = 0.5 * p.kappa * x * x * free_particle_nu_dot(t, p) + free_particle_mu(t, p);
    f.V_B = beta - 2.0 * beta * beta * x * x;
    return f;
}

FieldSample free_particle_sample(double x, double t, const FreeParticleParams& p) {
    const FreeParticleFields f = free_particle_fields(x, t, p);
    FieldSample s;
    s.A = f.A;
    s.S = f.S;
    s.V = 0.0;
    s.V_B = f.V_B;
    s.psi = wavefunction(s.A, s.S);
    return s;
}

TimeFunctions free_particle_time(const FreeParticleParams& p) {
    p.validate();
    return TimeFunctions([p](double t) { return free_particle_nu(t, p); },
                         [p](double t) { return free_particle_nu_dot(t, p); },
                         [p](double t) { return free_particle_nu_ddot(t, p); },
                         [p](double t) { return free_particle_mu(t, p); },
                         [p](double t) { return free_particle_mu_dot(t, p); });
}

InitialAmplitude free_particle_a0(const FreeParticleParams& p) {
    return gaussian_amplitude(p.eta);
}

PhaseAnsatz free_particle_ansatz(const FreeParticleParams& p) {
    return PhaseAnsatz(PowerSum(cplx(p.kappa, 0.0), RationalExp(1, 1)), cplx(0.0, 0.0),
                       free_particle_time(p));
}

}  // namespace madelung

#pragma once

#include "madelung/ansatz.hpp"

namespace madelung {

/// Integrate dy/ds = nu_dot(s) Q'(y) from (x0 at s = s0) to s = s1 with a
/// fixed-step classical Runge-Kutta scheme. The curves of constant F are
/// exactly these characteristics, so tracing back to s = 0 recovers F.
/// Throws TrajectoryHitSingularity when Q' cannot be evaluated on the way.
cplx characteristics_trace(const PhaseAnsatz& ansatz, cplx x0, double s0, double s1,
                           int steps);

/// Trace from (x, t) back to the initial time: an independent estimate of
/// F(x, t) that never builds the series.
cplx characteristics_backtrace(const PhaseAnsatz& ansatz, cplx x, double t, int steps);

/// Amplitude by transport along the characteristic:
/// d(ln A)/ds = (1/2) nu_dot(s) Q''(y(s)) integrated backwards, seeded with
/// A0 at the footpoint. Independent of the prefactor formula.
cplx characteristics_amplitude(const PhaseAnsatz& ansatz, const InitialAmplitude& a0,
                               cplx x, double t, int steps);

}  // namespace madelung

#pragma once

#include <vector>

#include "madelung/ansatz.hpp"

namespace madelung {

/// [f_0, ..., f_k_max] with f_0 = x and f_{k+1} = Q' * d f_k / dx. If some
/// f_k is exactly zero the list stops before it: every later term vanishes
/// too, so the flow series is a finite sum. k_max >= 0.
std::vector<PowerSum> fk_sequence(const PowerSum& q_prime, int k_max);

/// Truncated evaluation of the flow F(x, t) = sum_k (-nu(t))^k / k! * f_k(x).
class FSeries {
public:
    FSeries(const PowerSum& q_prime, TruncationPolicy policy);

    /// Point evaluation; stops once a term magnitude (k >= 1) drops below
    /// tail_tol or the f list is exhausted. Throws SeriesNotConverged when
    /// k_max terms of a non-terminating list were consumed while the last
    /// one was still significant.
    cplx evaluate(cplx x, cplx nu) const;

    /// The series collapsed to a single power sum in x for fixed nu. For a
    /// terminating f list this is exact; otherwise terms are added until the
    /// largest coefficient of a term drops below tail_tol.
    PowerSum collapse(cplx nu) const;

    const std::vector<PowerSum>& fks() const { return fks_; }
    bool terminated() const { return terminated_; }
    const TruncationPolicy& policy() const { return policy_; }

private:
    std::vector<PowerSum> fks_;
    TruncationPolicy policy_;
    bool terminated_;
};

/// F(x, t) for the given ansatz, via a freshly built series.
cplx evaluate_F_series(const PhaseAnsatz& ansatz, cplx x, double t,
                       const TruncationPolicy& policy);

/// A(x, t) = sqrt(Q'(F)/Q'(x)) * A0(F), principal square root.
/// Throws PrefactorSingular when Q'(x) = 0.
cplx amplitude(const PhaseAnsatz& ansatz, const InitialAmplitude& a0, cplx f_value, cplx x);

/// S(x, t) = Q(x) nu_dot(t) + mu(t).
cplx phase(const PhaseAnsatz& ansatz, cplx x, double t);

/// V_B = -A'' / (2 A). Throws AmplitudeZero when A = 0.
cplx bohm_potential(cplx a_second, cplx a_value);

/// V = -(1/2) S_x^2 - V_B - S_t, the potential the phase equation implies.
cplx external_potential(cplx s_x, cplx s_t, cplx v_bohm);

/// Psi = A exp(i S).
cplx wavefunction(cplx a_value, cplx s_value);

/// Every field of one (x, t) sample that the two coupled equations relate.
struct FieldSample {
    cplx A;
    cplx S;
    cplx V;
    cplx V_B;
    cplx psi;
};

/// Generic evaluator: the flow series F plus exact chain-rule derivatives
/// through Q' and the initial amplitude give A, A'' and hence V_B and V
/// without any finite differencing.
class PipelineEvaluator {
public:
    PipelineEvaluator(PhaseAnsatz ansatz, InitialAmplitude a0, TruncationPolicy policy);

    /// Per-t view that reuses the collapsed power sums of F, F' and F''
    /// across x samples.
    class TimeSlice {
    public:
        FieldSample at(cplx x) const;

    private:
        friend class PipelineEvaluator;
        const PipelineEvaluator* owner_;
        PowerSum f_ps_;
        PowerSum f1_ps_;
        PowerSum f2_ps_;
        cplx nu_dot_, nu_ddot_, mu_, mu_dot_;
    };

    TimeSlice slice(double t) const;
    FieldSample at(cplx x, double t) const;

    const PhaseAnsatz& ansatz() const { return ansatz_; }
    const InitialAmplitude& initial_amplitude() const { return a0_; }
    const FSeries& flow_series() const { return fseries_; }

private:
    PhaseAnsatz ansatz_;
    InitialAmplitude a0_;
    FSeries fseries_;
};

}  // namespace madelung

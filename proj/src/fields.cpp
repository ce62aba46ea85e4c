#include "madelung/fields.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace madelung {

std::vector<PowerSum> fk_sequence(const PowerSum& q_prime, int k_max) {
    if (k_max < 0) {
        throw InvariantViolation("fk sequence needs k_max >= 0");
    }
    std::vector<PowerSum> fks;
    fks.reserve(static_cast<std::size_t>(k_max) + 1);
    fks.push_back(PowerSum::identity());
    for (int k = 0; k < k_max; ++k) {
        PowerSum next = q_prime * fks.back().derivative();
        if (next.is_zero()) {
            break;  // all later terms vanish identically
        }
        fks.push_back(std::move(next));
    }
    return fks;
}

FSeries::FSeries(const PowerSum& q_prime, TruncationPolicy policy)
    : fks_(fk_sequence(q_prime, policy.k_max)),
      policy_(policy),
      terminated_(fks_.size() < static_cast<std::size_t>(policy.k_max) + 1) {}

cplx FSeries::evaluate(cplx x, cplx nu) const {
    cplx factor(1.0, 0.0);
    cplx sum(0.0, 0.0);
    double last_mag = 0.0;
    for (std::size_t k = 0; k < fks_.size(); ++k) {
        const cplx term = factor * fks_[k].evaluate(x);
        sum += term;
        last_mag = std::abs(term);
        if (k >= 1 && last_mag <= policy_.tail_tol) {
            return sum;
        }
        factor *= -nu / static_cast<double>(k + 1);
    }
    if (!terminated_ && last_mag > policy_.tail_tol) {
        std::ostringstream msg;
        msg << "flow series truncated at k_max = " << policy_.k_max
            << " with term magnitude " << last_mag;
        throw SeriesNotConverged(msg.str(), last_mag);
    }
    return sum;
}

PowerSum FSeries::collapse(cplx nu) const {
    cplx factor(1.0, 0.0);
    PowerSum acc;
    double last_mag = 0.0;
    for (std::size_t k = 0; k < fks_.size(); ++k) {
        const PowerSum term = fks_[k].scaled(factor);
        acc = acc + term;
        last_mag = term.max_coeff_magnitude();
        if (k >= 1 && last_mag <= policy_.tail_tol) {
            return acc;
        }
        factor *= -nu / static_cast<double>(k + 1);
    }
    if (!terminated_ && last_mag > policy_.tail_tol) {
        std::ostringstream msg;
        msg << "collapsed flow series truncated at k_max = " << policy_.k_max
            << " with coefficient magnitude " << last_mag;
        throw SeriesNotConverged(msg.str(), last_mag);
    }
    return acc;
}

cplx evaluate_F_series(const PhaseAnsatz& ansatz, cplx x, double t,
                       const TruncationPolicy& policy) {
    const FSeries series(ansatz.q_prime(), policy);
    return series.evaluate(x, ansatz.time().nu(t));
}

cplx amplitude(const PhaseAnsatz& ansatz, const InitialAmplitude& a0, cplx f_value, cplx x) {
    const cplx qp_x = ansatz.q_prime().evaluate(x);
    if (qp_x == cplx(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "Q'(x) = 0 at x = " << x.real();
        if (x.imag() != 0.0) {
            msg << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << "i";
        }
        throw PrefactorSingular(msg.str());
    }
    const cplx ratio = ansatz.q_prime().evaluate(f_value) / qp_x;
    return std::sqrt(ratio) * a0.value(f_value);
}

cplx phase(const PhaseAnsatz& ansatz, cplx x, double t) {
    return ansatz.q().evaluate(x) * ansatz.time().nu_dot(t) + ansatz.time().mu(t);
}

cplx bohm_potential(cplx a_second, cplx a_value) {
    if (a_value == cplx(0.0, 0.0)) {
        throw AmplitudeZero("Bohm potential undefined where the amplitude vanishes");
    }
    return -a_second / (2.0 * a_value);
}

cplx external_potential(cplx s_x, cplx s_t, cplx v_bohm) {
    return -0.5 * s_x * s_x - v_bohm - s_t;
}

cplx wavefunction(cplx a_value, cplx s_value) {
    return a_value * std::exp(cplx(0.0, 1.0) * s_value);
}

PipelineEvaluator::PipelineEvaluator(PhaseAnsatz ansatz, InitialAmplitude a0,
                                     TruncationPolicy policy)
    : ansatz_(std::move(ansatz)), a0_(std::move(a0)), fseries_(ansatz_.q_prime(), policy) {
    if (!a0_.value || !a0_.first || !a0_.second) {
        throw InvariantViolation(
            "pipeline evaluation needs the initial amplitude with two derivatives");
    }
}

PipelineEvaluator::TimeSlice PipelineEvaluator::slice(double t) const {
    TimeSlice s;
    s.owner_ = this;
    const cplx nu = ansatz_.time().nu(t);
    s.f_ps_ = fseries_.collapse(nu);
    s.f1_ps_ = s.f_ps_.derivative();
    s.f2_ps_ = s.f1_ps_.derivative();
    s.nu_dot_ = ansatz_.time().nu_dot(t);
    s.nu_ddot_ = ansatz_.time().nu_ddot(t);
    s.mu_ = ansatz_.time().mu(t);
    s.mu_dot_ = ansatz_.time().mu_dot(t);
    return s;
}

FieldSample PipelineEvaluator::at(cplx x, double t) const { return slice(t).at(x); }

FieldSample PipelineEvaluator::TimeSlice::at(cplx x) const {
    const PhaseAnsatz& an = owner_->ansatz_;
    const InitialAmplitude& a0 = owner_->a0_;

    const cplx F = f_ps_.evaluate(x);
    const cplx Fp = f1_ps_.evaluate(x);
    const cplx Fpp = f2_ps_.evaluate(x);

    const cplx a = an.q_prime().evaluate(x);
    if (a == cplx(0.0, 0.0)) {
        std::ostringstream msg;
        msg << "Q'(x) = 0 at x = " << x.real();
        throw PrefactorSingular(msg.str());
    }
    const cplx ap = an.q_second().evaluate(x);
    const cplx app = an.q_third().evaluate(x);

    const cplx bF = an.q_prime().evaluate(F);
    const cplx b1 = an.q_second().evaluate(F);
    const cplx b2 = an.q_third().evaluate(F);

    // G = Q'(F)/Q'(x) and its two x-derivatives by the chain rule.
    const cplx G = bF / a;
    const cplx Gp = b1 * Fp / a - bF * ap / (a * a);
    const cplx Gpp = (b2 * Fp * Fp + b1 * Fpp) / a - 2.0 * b1 * Fp * ap / (a * a) -
                     bF * app / (a * a) + 2.0 * bF * ap * ap / (a * a * a);

    // P = sqrt(G); P' and P'' follow from G without re-branching.
    const cplx P = std::sqrt(G);
    if (P == cplx(0.0, 0.0)) {
        throw AmplitudeZero("amplitude prefactor vanishes: Q'(F) = 0");
    }
    const cplx Pp = Gp / (2.0 * P);
    const cplx Ppp = Gpp / (2.0 * P) - Gp * Gp / (4.0 * P * P * P);

    const cplx a0_v = a0.value(F);
    const cplx a0_p = a0.first(F);
    const cplx a0_pp = a0.second(F);

    const cplx A = P * a0_v;
    const cplx App =
        Ppp * a0_v + 2.0 * Pp * a0_p * Fp + P * (a0_pp * Fp * Fp + a0_p * Fpp);

    const cplx Qx = an.q().evaluate(x);
    const cplx S = Qx * nu_dot_ + mu_;
    const cplx Sx = a * nu_dot_;
    const cplx St = Qx * nu_ddot_ + mu_dot_;

    const cplx VB = bohm_potential(App, A);
    const cplx V = external_potential(Sx, St, VB);

    return FieldSample{A, S, V, VB, wavefunction(A, S)};
}

}  // namespace madelung

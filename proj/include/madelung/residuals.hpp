#pragma once

#include <functional>
#include <string>
#include <vector>

#include "madelung/power_sum.hpp"

namespace madelung {

/// Open interval |x - center| < radius that sampling must avoid
/// (prefactor zeros, branch points).
struct ExclusionZone {
    double center = 0.0;
    double radius = 0.0;
};

/// Uniform sampling rectangle with optional excluded x-intervals.
struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    int nx = 201;
    double t_min = 0.0;
    double t_max = 10.0;
    int nt = 201;
    std::vector<ExclusionZone> exclusions;

    void validate() const;  // InvariantViolation
    std::vector<double> xs() const;
    std::vector<double> ts() const;

    /// x lies strictly inside some exclusion zone.
    bool excluded(double x) const;

    /// Any part of [x - half_span, x + half_span] touches a zone.
    bool footprint_excluded(double x, double half_span) const;
};

/// Central finite differences used to probe the PDEs. The fields are
/// analytic, so stencil points may fall outside the grid rectangle; they
/// must only keep clear of exclusion zones.
struct StencilConfig {
    double dx = 1e-3;
    double dt = 1e-3;
    int order = 4;  // 2 or 4

    /// Half-width of the stencil footprint in x (resp. t).
    double x_span() const { return (order / 2) * dx; }
    double t_span() const { return (order / 2) * dt; }

    /// Throws InvariantViolation for bad steps/order and
    /// StencilInExclusionZone when dx cannot resolve a zone boundary.
    void validate(const GridSpec& grid) const;
};

/// First derivative of f at x0 by a central difference of the given order.
cplx central_d1(const std::function<cplx(double)>& f, double x0, double h, int order);

/// Second derivative of f at x0 by a central difference of the given order.
cplx central_d2(const std::function<cplx(double)>& f, double x0, double h, int order);

/// Pointwise fields of (x, t), plus an optional guard marking stencil
/// footprints that must not be differenced (branch-cut crossings).
struct FieldSet {
    std::function<cplx(double, double)> A;
    std::function<cplx(double, double)> S;
    std::function<cplx(double, double)> V;
    std::function<cplx(double, double)> V_B;
    std::function<cplx(double, double)> psi;
    std::function<bool(double x, double t, double x_span, double t_span)> skip_guard;
};

/// Residual norms of one equation over a grid.
struct ResidualReport {
    std::string equation_id;  // "schrodinger", "continuity" or "qhj"
    double linf = 0.0;
    double l2 = 0.0;  // plain Euclidean norm over evaluated points
    double worst_x = 0.0;
    double worst_t = 0.0;
    StencilConfig stencil;
    long points = 0;   // residuals accumulated into the norms
    long skipped = 0;  // guarded or unevaluable points (not in the norms)
};

struct ResidualOptions {
    /// Points where |V| or |V_B| exceeds this anywhere on the stencil
    /// footprint are skipped (and counted): near-divergences would only
    /// measure floating-point noise, mirroring the masked plot regions.
    double value_cap = 50.0;
};

/// i psi_t + (1/2) psi_xx - V psi.
ResidualReport residual_schrodinger(const FieldSet& fields, const GridSpec& grid,
                                    const StencilConfig& stencil,
                                    const ResidualOptions& opts = ResidualOptions());

/// (1/2)(2 A_x S_x + A S_xx) + A_t.
ResidualReport residual_continuity(const FieldSet& fields, const GridSpec& grid,
                                   const StencilConfig& stencil,
                                   const ResidualOptions& opts = ResidualOptions());

/// (1/2) S_x^2 + V + V_B + S_t.
ResidualReport residual_qhj(const FieldSet& fields, const GridSpec& grid,
                            const StencilConfig& stencil,
                            const ResidualOptions& opts = ResidualOptions());

}  // namespace madelung

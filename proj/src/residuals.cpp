#include "madelung/residuals.hpp"

#include <cmath>

#include "madelung/errors.hpp"

namespace madelung {

void GridSpec::validate() const {
    if (!(x_min < x_max) || !(t_min < t_max)) {
        throw InvariantViolation("grid bounds must be strictly increasing");
    }
    if (nx < 3 || nt < 3) {
        throw InvariantViolation("grid needs at least 3 points per axis");
    }
    for (const ExclusionZone& z : exclusions) {
        if (!(z.radius > 0.0)) {
            throw InvariantViolation("exclusion zone radius must be positive");
        }
    }
}

std::vector<double> GridSpec::xs() const {
    std::vector<double> out(static_cast<std::size_t>(nx));
    const double step = (x_max - x_min) / (nx - 1);
    for (int i = 0; i < nx; ++i) {
        out[static_cast<std::size_t>(i)] = x_min + i * step;
    }
    return out;
}

std::vector<double> GridSpec::ts() const {
    std::vector<double> out(static_cast<std::size_t>(nt));
    const double step = (t_max - t_min) / (nt - 1);
    for (int i = 0; i < nt; ++i) {
        out[static_cast<std::size_t>(i)] = t_min + i * step;
    }
    return out;
}

bool GridSpec::excluded(double x) const {
    for (const ExclusionZone& z : exclusions) {
        if (std::abs(x - z.center) < z.radius) {
            return true;
        }
    }
    return false;
}

bool GridSpec::footprint_excluded(double x, double half_span) const {
    for (const ExclusionZone& z : exclusions) {
        if (std::abs(x - z.center) < z.radius + half_span) {
            return true;
        }
    }
    return false;
}

void StencilConfig::validate(const GridSpec& grid) const {
    if (!(dx > 0.0) || !(dt > 0.0)) {
        throw InvariantViolation("stencil steps must be positive");
    }
    if (order != 2 && order != 4) {
        throw InvariantViolation("stencil order must be 2 or 4");
    }
    for (const ExclusionZone& z : grid.exclusions) {
        if (dx >= 0.5 * z.radius) {
            throw StencilInExclusionZone(
                "stencil step dx cannot resolve an exclusion zone boundary");
        }
    }
}

cplx central_d1(const std::function<cplx(double)>& f, double x0, double h, int order) {
    if (order == 2) {
        return (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    }
    return (-f(x0 + 2.0 * h) + 8.0 * f(x0 + h) - 8.0 * f(x0 - h) + f(x0 - 2.0 * h)) /
           (12.0 * h);
}

cplx central_d2(const std::function<cplx(double)>& f, double x0, double h, int order) {
    if (order == 2) {
        return (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
    }
    return (-f(x0 + 2.0 * h) + 16.0 * f(x0 + h) - 30.0 * f(x0) + 16.0 * f(x0 - h) -
            f(x0 - 2.0 * h)) /
           (12.0 * h * h);
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// |V| or |V_B| beyond the cap anywhere on the stencil cross?
bool cap_exceeded(const FieldSet& fields, double x, double t, double xs, double ts,
                  double cap) {
    const double probe_x[] = {x, x - xs, x + xs, x, x};
    const double probe_t[] = {t, t, t, t - ts, t + ts};
    for (int i = 0; i < 5; ++i) {
        const cplx v = fields.V(probe_x[i], probe_t[i]);
        const cplx vb = fields.V_B(probe_x[i], probe_t[i]);
        if (!finite(v) || !finite(vb) || std::abs(v) > cap || std::abs(vb) > cap) {
            return true;
        }
    }
    return false;
}

template <typename ResidualFn>
ResidualReport accumulate(const std::string& equation_id, const FieldSet& fields,
                          const GridSpec& grid, const StencilConfig& stencil,
                          const ResidualOptions& opts, ResidualFn&& residual_at) {
    grid.validate();
    stencil.validate(grid);

    ResidualReport report;
    report.equation_id = equation_id;
    report.stencil = stencil;

    const double xs_span = stencil.x_span();
    const double ts_span = stencil.t_span();
    double sum_sq = 0.0;

    for (double t : grid.ts()) {
        for (double x : grid.xs()) {
            if (grid.excluded(x)) {
                continue;  // not part of the sample set at all
            }
            if (grid.footprint_excluded(x, xs_span)) {
                ++report.skipped;
                continue;
            }
            if (fields.skip_guard && fields.skip_guard(x, t, xs_span, ts_span)) {
                ++report.skipped;
                continue;
            }
            cplx r;
            try {
                if (cap_exceeded(fields, x, t, xs_span, ts_span, opts.value_cap)) {
                    ++report.skipped;
                    continue;
                }
                r = residual_at(x, t);
            } catch (const Error&) {
                ++report.skipped;
                continue;
            }
            if (!finite(r)) {
                ++report.skipped;
                continue;
            }
            const double mag = std::abs(r);
            sum_sq += mag * mag;
            ++report.points;
            if (mag > report.linf) {
                report.linf = mag;
                report.worst_x = x;
                report.worst_t = t;
            }
        }
    }
    report.l2 = std::sqrt(sum_sq);
    return report;
}

}  // namespace

ResidualReport residual_schrodinger(const FieldSet& fields, const GridSpec& grid,
                                    const StencilConfig& stencil,
                                    const ResidualOptions& opts) {
    return accumulate("schrodinger", fields, grid, stencil, opts, [&](double x, double t) {
        const cplx psi_t = central_d1([&](double s) { return fields.psi(x, s); }, t,
                                      stencil.dt, stencil.order);
        const cplx psi_xx = central_d2([&](double y) { return fields.psi(y, t); }, x,
                                       stencil.dx, stencil.order);
        return cplx(0.0, 1.0) * psi_t + 0.5 * psi_xx - fields.V(x, t) * fields.psi(x, t);
    });
}

ResidualReport residual_continuity(const FieldSet& fields, const GridSpec& grid,
                                   const StencilConfig& stencil,
                                   const ResidualOptions& opts) {
    return accumulate("continuity", fields, grid, stencil, opts, [&](double x, double t) {
        const cplx a_x = central_d1([&](double y) { return fields.A(y, t); }, x, stencil.dx,
                                    stencil.order);
        const cplx a_t = central_d1([&](double s) { return fields.A(x, s); }, t, stencil.dt,
                                    stencil.order);
        const cplx s_x = central_d1([&](double y) { return fields.S(y, t); }, x, stencil.dx,
                                    stencil.order);
        const cplx s_xx = central_d2([&](double y) { return fields.S(y, t); }, x,
                                     stencil.dx, stencil.order);
        return 0.5 * (2.0 * a_x * s_x + fields.A(x, t) * s_xx) + a_t;
    });
}

ResidualReport residual_qhj(const FieldSet& fields, const GridSpec& grid,
                            const StencilConfig& stencil, const ResidualOptions& opts) {
    return accumulate("qhj", fields, grid, stencil, opts, [&](double x, double t) {
        const cplx s_x = central_d1([&](double y) { return fields.S(y, t); }, x, stencil.dx,
                                    stencil.order);
        const cplx s_t = central_d1([&](double s) { return fields.S(x, s); }, t, stencil.dt,
                                    stencil.order);
        return 0.5 * s_x * s_x + fields.V(x, t) + fields.V_B(x, t) + s_t;
    });
}

}  // namespace madelung

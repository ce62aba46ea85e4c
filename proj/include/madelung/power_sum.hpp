#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "madelung/errors.hpp"

namespace madelung {

using cplx = std::complex<double>;

/// Exact rational exponent, always kept in lowest terms with den > 0.
struct RationalExp {
    std::int64_t num = 0;
    std::int64_t den = 1;

    RationalExp() = default;
    RationalExp(std::int64_t n, std::int64_t d);

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    RationalExp operator+(const RationalExp& other) const;
    RationalExp operator-(const RationalExp& other) const;
    bool operator==(const RationalExp& other) const = default;
    bool operator<(const RationalExp& other) const;

    std::string str() const;
};

/// One term c * x^e.
struct PowerTerm {
    cplx coeff{0.0, 0.0};
    RationalExp exponent{};
};

/// z^e on the principal branch: integer exponents by repeated multiplication
/// (so real input stays exactly real), fractional ones via exp(e * Log z)
/// with Arg in (-pi, pi].
cplx pow_principal(cplx base, const RationalExp& e);

/// Finite sum of power terms with exact rational exponents. Terms are kept
/// sorted by strictly increasing exponent; like terms are merged and exact
/// zeros dropped, so the empty sum is the zero function.
class PowerSum {
public:
    PowerSum() = default;
    PowerSum(cplx coeff, RationalExp exponent);
    explicit PowerSum(std::vector<PowerTerm> terms);

    static PowerSum zero() { return PowerSum(); }
    static PowerSum constant(cplx c) { return PowerSum(c, RationalExp(0, 1)); }
    static PowerSum identity() { return PowerSum(cplx(1.0, 0.0), RationalExp(1, 1)); }

    const std::vector<PowerTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Term-wise d/dx; constants vanish.
    PowerSum derivative() const;

    /// Term-wise antiderivative plus an integration constant.
    /// Throws ExponentMinusOne if any exponent equals -1.
    PowerSum antiderivative(cplx constant) const;

    PowerSum operator+(const PowerSum& other) const;
    PowerSum operator-(const PowerSum& other) const;
    PowerSum operator*(const PowerSum& other) const;
    PowerSum scaled(cplx factor) const;

    /// Sum of c * x^e over all terms, ascending exponent order.
    /// Throws EvalAtSingularity when x = 0 meets a negative exponent.
    cplx evaluate(cplx x) const;

    /// Largest |coeff| over all terms (0 for the zero sum).
    double max_coeff_magnitude() const;

    std::string str() const;

private:
    std::vector<PowerTerm> terms_;
    void normalize();
};

}  // namespace madelung

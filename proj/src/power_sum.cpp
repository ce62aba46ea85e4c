#include "madelung/power_sum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace madelung {

RationalExp::RationalExp(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) {
        throw InvariantViolation("rational exponent with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

RationalExp RationalExp::operator+(const RationalExp& other) const {
    return RationalExp(num * other.den + other.num * den, den * other.den);
}

RationalExp RationalExp::operator-(const RationalExp& other) const {
    return RationalExp(num * other.den - other.num * den, den * other.den);
}

bool RationalExp::operator<(const RationalExp& other) const {
    return num * other.den < other.num * den;
}

std::string RationalExp::str() const {
    std::ostringstream out;
    out << num;
    if (den != 1) {
        out << '/' << den;
    }
    return out.str();
}

cplx pow_principal(cplx base, const RationalExp& e) {
    if (e.num == 0) {
        return cplx(1.0, 0.0);
    }
    if (base == cplx(0.0, 0.0)) {
        if (e.num < 0) {
            throw EvalAtSingularity("x^(" + e.str() + ") evaluated at x = 0");
        }
        return cplx(0.0, 0.0);
    }
    if (e.is_integer()) {
        // Square-and-multiply keeps real inputs exactly real, including on
        // the negative axis where exp(e log z) would pick up spurious
        // imaginary parts.
        const bool negative = e.num < 0;
        std::uint64_t k = negative ? static_cast<std::uint64_t>(-e.num)
                                   : static_cast<std::uint64_t>(e.num);
        cplx acc(1.0, 0.0);
        cplx b = base;
        while (k != 0) {
            if (k & 1u) {
                acc *= b;
            }
            b *= b;
            k >>= 1u;
        }
        return negative ? cplx(1.0, 0.0) / acc : acc;
    }
    return std::exp(e.value() * std::log(base));
}

PowerSum::PowerSum(cplx coeff, RationalExp exponent) {
    terms_.push_back(PowerTerm{coeff, exponent});
    normalize();
}

PowerSum::PowerSum(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
    normalize();
}

void PowerSum::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const PowerTerm& a, const PowerTerm& b) {
        return a.exponent < b.exponent;
    });
    std::vector<PowerTerm> merged;
    merged.reserve(terms_.size());
    for (const PowerTerm& term : terms_) {
        if (!merged.empty() && merged.back().exponent == term.exponent) {
            merged.back().coeff += term.coeff;
        } else {
            merged.push_back(term);
        }
    }
    std::erase_if(merged, [](const PowerTerm& t) { return t.coeff == cplx(0.0, 0.0); });
    terms_ = std::move(merged);
}

PowerSum PowerSum::derivative() const {
    std::vector<PowerTerm> out;
    out.reserve(terms_.size());
    for (const PowerTerm& term : terms_) {
        if (term.exponent.num == 0) {
            continue;  // constant term
        }
        out.push_back(PowerTerm{term.coeff * term.exponent.value(),
                                term.exponent - RationalExp(1, 1)});
    }
    return PowerSum(std::move(out));
}

PowerSum PowerSum::antiderivative(cplx constant) const {
    std::vector<PowerTerm> out;
    out.reserve(terms_.size() + 1);
    for (const PowerTerm& term : terms_) {
        if (term.exponent == RationalExp(-1, 1)) {
            throw ExponentMinusOne("antiderivative of x^-1 is not a power sum");
        }
        const RationalExp up = term.exponent + RationalExp(1, 1);
        out.push_back(PowerTerm{term.coeff / up.value(), up});
    }
    if (constant != cplx(0.0, 0.0)) {
        out.push_back(PowerTerm{constant, RationalExp(0, 1)});
    }
    return PowerSum(std::move(out));
}

PowerSum PowerSum::operator+(const PowerSum& other) const {
    std::vector<PowerTerm> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return PowerSum(std::move(out));
}

PowerSum PowerSum::operator-(const PowerSum& other) const {
    return *this + other.scaled(cplx(-1.0, 0.0));
}

PowerSum PowerSum::operator*(const PowerSum& other) const {
    std::vector<PowerTerm> out;
    out.reserve(terms_.size() * other.terms_.size());
    for (const PowerTerm& a : terms_) {
        for (const PowerTerm& b : other.terms_) {
            out.push_back(PowerTerm{a.coeff * b.coeff, a.exponent + b.exponent});
        }
    }
    return PowerSum(std::move(out));
}

PowerSum PowerSum::scaled(cplx factor) const {
    std::vector<PowerTerm> out = terms_;
    for (PowerTerm& term : out) {
        term.coeff *= factor;
    }
    return PowerSum(std::move(out));
}

cplx PowerSum::evaluate(cplx x) const {
    cplx sum(0.0, 0.0);
    for (const PowerTerm& term : terms_) {
        sum += term.coeff * pow_principal(x, term.exponent);
    }
    return sum;
}

double PowerSum::max_coeff_magnitude() const {
    double m = 0.0;
    for (const PowerTerm& term : terms_) {
        m = std::max(m, std::abs(term.coeff));
    }
    return m;
}

std::string PowerSum::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const PowerTerm& term : terms_) {
        if (!first) {
            out << " + ";
        }
        first = false;
        out << '(' << term.coeff.real();
        if (term.coeff.imag() != 0.0) {
            out << (term.coeff.imag() < 0 ? "-" : "+") << std::abs(term.coeff.imag()) << 'i';
        }
        out << ')';
        if (term.exponent.num != 0) {
            out << "*x^" << term.exponent.str();
        }
    }
    return out.str();
}

}  // namespace madelung

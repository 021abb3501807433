// laurent.hpp — exact scalars for the symbolic engine
//
// A Coefficient is a Laurent polynomial in omega, omega0, g with complex
// rational coefficients; only g carries negative powers (alpha and alphabar
// expand to (omega0 -+ omega) * (2g)^-1). Choosing this ring instead of full
// rational functions keeps the arithmetic exact without polynomial GCDs.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace rabi::sym {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact complex number re + im*i.
struct CRational {
    Rational re{0};
    Rational im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const CRational&) const = default;

    CRational& operator+=(const CRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRational& operator-=(const CRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend CRational operator+(CRational a, const CRational& b) { return a += b; }
    friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
    friend CRational operator-(const CRational& a) { return CRational{-a.re, -a.im}; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return CRational{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CRational conj() const { return CRational{re, -im}; }
    CRational reciprocal() const {
        const Rational denom = re * re + im * im;
        if (denom == 0) throw std::domain_error("CRational: division by zero");
        return CRational{re / denom, -im / denom};
    }
};

// Monomial exponents; g may be negative.
struct Exponents {
    int omega{0};
    int omega0{0};
    int g{0};

    auto operator<=>(const Exponents&) const = default;
    Exponents operator+(const Exponents& o) const {
        return Exponents{omega + o.omega, omega0 + o.omega0, g + o.g};
    }
    Exponents operator*(int k) const { return Exponents{omega * k, omega0 * k, g * k}; }
};

class Coefficient {
  public:
    Coefficient() = default;

    static Coefficient from_crational(const CRational& q) {
        Coefficient c;
        if (!q.is_zero()) c.terms_[Exponents{}] = q;
        return c;
    }
    static Coefficient from_rational(const Rational& q) {
        return from_crational(CRational{q, 0});
    }
    static Coefficient one() { return from_rational(1); }
    static Coefficient imaginary() { return from_crational(CRational{0, 1}); }
    static Coefficient monomial(const Exponents& e, const CRational& q) {
        Coefficient c;
        if (!q.is_zero()) c.terms_[e] = q;
        return c;
    }
    static Coefficient omega() { return monomial({1, 0, 0}, {1, 0}); }
    static Coefficient omega0() { return monomial({0, 1, 0}, {1, 0}); }
    static Coefficient g() { return monomial({0, 0, 1}, {1, 0}); }
    // alpha = (omega0 - omega) / (2g), alpha_bar = (omega0 + omega) / (2g)
    static Coefficient alpha() {
        Coefficient c = monomial({0, 1, -1}, {Rational(1, 2), 0});
        c += monomial({1, 0, -1}, {Rational(-1, 2), 0});
        return c;
    }
    static Coefficient alpha_bar() {
        Coefficient c = monomial({0, 1, -1}, {Rational(1, 2), 0});
        c += monomial({1, 0, -1}, {Rational(1, 2), 0});
        return c;
    }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Coefficient&) const = default;
    const std::map<Exponents, CRational>& terms() const { return terms_; }

    // True when the value is a single monomial (invertible in the ring
    // extended by negative omega/omega0 powers).
    bool is_monomial() const { return terms_.size() == 1; }

    Coefficient& operator+=(const Coefficient& o) {
        for (const auto& [e, q] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_.emplace(e, q);
            } else {
                it->second += q;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    Coefficient& operator-=(const Coefficient& o) { return *this += -o; }
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator-(const Coefficient& a) {
        Coefficient out;
        for (const auto& [e, q] : a.terms_) out.terms_.emplace(e, -q);
        return out;
    }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        Coefficient out;
        for (const auto& [ea, qa] : a.terms_)
            for (const auto& [eb, qb] : b.terms_) {
                const Exponents e = ea + eb;
                auto it = out.terms_.find(e);
                if (it == out.terms_.end()) {
                    const CRational q = qa * qb;
                    if (!q.is_zero()) out.terms_.emplace(e, q);
                } else {
                    it->second += qa * qb;
                    if (it->second.is_zero()) out.terms_.erase(it);
                }
            }
        return out;
    }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

    Coefficient conj() const {
        Coefficient out;
        for (const auto& [e, q] : terms_) out.terms_.emplace(e, q.conj());
        return out;
    }

    Coefficient reciprocal() const {
        if (!is_monomial())
            throw std::domain_error("Coefficient: only monomials are invertible");
        const auto& [e, q] = *terms_.begin();
        return monomial(e * -1, q.reciprocal());
    }

    Coefficient pow(int k) const {
        if (k < 0) return reciprocal().pow(-k);
        Coefficient out = one();
        for (int i = 0; i < k; ++i) out *= *this;
        return out;
    }

    std::complex<double> evaluate(double omega_v, double omega0_v, double g_v) const {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [e, q] : terms_) {
            const double mono = std::pow(omega_v, e.omega) * std::pow(omega0_v, e.omega0) *
                                std::pow(g_v, e.g);
            acc += std::complex<double>(q.re.convert_to<double>(),
                                        q.im.convert_to<double>()) * mono;
        }
        return acc;
    }

  private:
    std::map<Exponents, CRational> terms_;  // canonical: sorted, no zeros
};

}  // namespace rabi::sym

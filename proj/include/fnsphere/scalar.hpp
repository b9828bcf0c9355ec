#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fnsphere/error.hpp"

namespace fnsphere {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; arithmetic never rounds and division by zero throws.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : v_(v) {}
    Scalar(long v) : v_(v) {}
    Scalar(long long v) : v_(mpz_class(std::to_string(v))) {}
    Scalar(const mpz_class& n) : v_(n) {}
    explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    Scalar(const mpz_class& num, const mpz_class& den) {
        if (den == 0)
            throw DomainError("zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses "n" or "n/d" (optional leading '-', decimal digits only).
    /// Non-reduced input is accepted and reduced.
    static Scalar parse(std::string_view text) {
        auto digits = [](std::string_view s) {
            if (s.empty())
                return false;
            for (char ch : s)
                if (ch < '0' || ch > '9')
                    return false;
            return true;
        };
        std::string_view body = text;
        bool negative = false;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }
        auto slash = body.find('/');
        std::string_view num = body.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
        if (!digits(num) || !digits(den))
            throw ParseError("malformed rational \"" + std::string(text) + "\"");
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (negative)
            n = -n;
        if (d == 0)
            throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        return Scalar(n, d);
    }

    const mpq_class& value() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Scalar inverse() const {
        if (is_zero())
            throw DomainError("division by zero");
        return Scalar(mpq_class(1 / v_));
    }

    /// "n" or "n/d" in lowest terms.
    std::string to_string() const { return v_.get_str(10); }

    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero())
            throw DomainError("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.v_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    mpq_class v_{0};
};

/// Exact square root when the argument is the square of a rational.
inline std::optional<Scalar> rational_sqrt(const Scalar& s) {
    if (s.sign() < 0)
        return std::nullopt;
    mpz_class n = s.numerator();
    mpz_class d = s.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Scalar(rn, rd);
}

} // namespace fnsphere

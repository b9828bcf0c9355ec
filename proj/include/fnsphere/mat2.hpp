#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fnsphere/scalar.hpp"

namespace fnsphere {

/// 2x2 matrix over the rationals, row-major.
class Mat2 {
public:
    Mat2() = default;
    Mat2(Scalar a, Scalar b, Scalar c, Scalar d) : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 scalar(const Scalar& s) { return {s, 0, 0, s}; }
    static Mat2 diag(const Scalar& a, const Scalar& d) { return {a, 0, 0, d}; }

    const Scalar& operator()(int r, int c) const { return e_[2 * r + c]; }
    Scalar& operator()(int r, int c) { return e_[2 * r + c]; }

    const Scalar& a() const { return e_[0]; }
    const Scalar& b() const { return e_[1]; }
    const Scalar& c() const { return e_[2]; }
    const Scalar& d() const { return e_[3]; }

    Scalar trace() const { return e_[0] + e_[3]; }
    Scalar det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

    bool is_scalar() const { return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3]; }
    bool is_lower_triangular() const { return e_[1].is_zero(); }
    bool is_upper_triangular() const { return e_[2].is_zero(); }

    Mat2 scaled(const Scalar& s) const { return {s * e_[0], s * e_[1], s * e_[2], s * e_[3]}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.e_[0] * y.e_[0] + x.e_[1] * y.e_[2], x.e_[0] * y.e_[1] + x.e_[1] * y.e_[3],
                x.e_[2] * y.e_[0] + x.e_[3] * y.e_[2], x.e_[2] * y.e_[1] + x.e_[3] * y.e_[3]};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.e_[0] + y.e_[0], x.e_[1] + y.e_[1], x.e_[2] + y.e_[2], x.e_[3] + y.e_[3]};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.e_[0] - y.e_[0], x.e_[1] - y.e_[1], x.e_[2] - y.e_[2], x.e_[3] - y.e_[3]};
    }
    friend Mat2 operator-(const Mat2& x) { return x.scaled(-1); }

    friend bool operator==(const Mat2&, const Mat2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
        return os << "[[" << m.e_[0] << "," << m.e_[1] << "],[" << m.e_[2] << "," << m.e_[3] << "]]";
    }

    std::string to_string() const {
        return "[[" + e_[0].to_string() + "," + e_[1].to_string() + "],[" + e_[2].to_string() + "," +
               e_[3].to_string() + "]]";
    }

private:
    std::array<Scalar, 4> e_{};
};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) { return x * y; }

inline Mat2 mat_inv(const Mat2& m) {
    Scalar det = m.det();
    if (det.is_zero())
        throw DomainError("singular matrix " + m.to_string());
    Scalar s = det.inverse();
    return {s * m.d(), -(s * m.b()), -(s * m.c()), s * m.a()};
}

/// Product of a sequence, left to right. Empty product is the identity.
inline Mat2 product(const std::vector<Mat2>& ms) {
    Mat2 acc = Mat2::identity();
    for (const auto& m : ms)
        acc = acc * m;
    return acc;
}

/// Point [p:q] of the projective line, scaled so the first nonzero
/// coordinate is 1.
class ProjPoint {
public:
    ProjPoint(const Scalar& p, const Scalar& q) {
        if (p.is_zero() && q.is_zero())
            throw DomainError("projective point [0:0]");
        if (!p.is_zero()) {
            p_ = 1;
            q_ = q / p;
        } else {
            p_ = 0;
            q_ = 1;
        }
    }

    const Scalar& p() const { return p_; }
    const Scalar& q() const { return q_; }

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend std::ostream& operator<<(std::ostream& os, const ProjPoint& x) {
        return os << "[" << x.p_ << ":" << x.q_ << "]";
    }

private:
    Scalar p_;
    Scalar q_;
};

/// Element of PGL2, stored as the representative whose first nonzero entry
/// (reading order) is 1. Equality is entrywise on that representative.
class ProjMat2 {
public:
    explicit ProjMat2(const Mat2& m) {
        if (m.det().is_zero())
            throw DomainError("singular matrix has no projective class: " + m.to_string());
        const Scalar* lead = nullptr;
        for (int i = 0; i < 4 && !lead; ++i)
            if (!m(i / 2, i % 2).is_zero())
                lead = &m(i / 2, i % 2);
        rep_ = m.scaled(lead->inverse());
    }

    const Mat2& rep() const { return rep_; }

    friend ProjMat2 operator*(const ProjMat2& x, const ProjMat2& y) { return ProjMat2(x.rep_ * y.rep_); }
    ProjMat2 inverse() const { return ProjMat2(mat_inv(rep_)); }

    friend bool operator==(const ProjMat2&, const ProjMat2&) = default;
    friend std::ostream& operator<<(std::ostream& os, const ProjMat2& m) { return os << m.rep_; }

private:
    Mat2 rep_;
};

inline ProjMat2 proj_normalize(const Mat2& m) { return ProjMat2(m); }

/// The two eigenvalues of m when they are rational (repeated root listed
/// twice, smaller first). Throws when the characteristic roots leave Q.
inline std::pair<Scalar, Scalar> rational_eigenvalues(const Mat2& m) {
    Scalar tr = m.trace();
    Scalar disc = tr * tr - Scalar(4) * m.det();
    auto root = rational_sqrt(disc);
    if (!root)
        throw DomainError("eigenvalue not in field: discriminant " + disc.to_string() + " of " + m.to_string() +
                          " is not a rational square");
    Scalar half(mpz_class(1), mpz_class(2));
    return {(tr - *root) * half, (tr + *root) * half};
}

/// Projective kernel direction of (m - lambda I).
inline ProjPoint eigenline(const Mat2& m, const Scalar& lambda) {
    Mat2 n = m - Mat2::scalar(lambda);
    if (!n.det().is_zero())
        throw DomainError(lambda.to_string() + " is not an eigenvalue of " + m.to_string());
    if (n == Mat2{})
        throw DomainError("eigenline not unique: " + m.to_string() + " is central");
    // A nonzero row (x, y) of a rank-1 matrix has kernel [y : -x].
    if (!n.a().is_zero() || !n.b().is_zero())
        return ProjPoint(n.b(), -n.a());
    return ProjPoint(n.d(), -n.c());
}

/// m maps the line through (p, q) into itself.
inline bool preserves_line(const Mat2& m, const ProjPoint& v) {
    Scalar x = m.a() * v.p() + m.b() * v.q();
    Scalar y = m.c() * v.p() + m.d() * v.q();
    return (v.p() * y - v.q() * x).is_zero();
}

} // namespace fnsphere

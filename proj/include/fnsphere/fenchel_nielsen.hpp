#pragma once

// Fenchel-Nielsen coordinates on the open stratum: one trace t_i and one
// twist direction [p_i:q_i] per cutting circle rho_i, i = 2..k-2.
//
// Conventions
// -----------
// For a tuple (B_1, ..., B_k) let S_i = B_{i+1}...B_k = (B_1...B_i)^-1, the
// loop around rho_i seen from the pants S_i. Then S_{i-1} = B_i S_i, which
// is the pants relation R'_{i-1} = A_i R_i of the normal form. The frame
// g_i of pants i is the unique-up-to-scalar matrix with
//
//     g_i B_i g_i^-1 = A_i = diag(c_i, 1/c_i),   g_i S_i g_i^-1 = R_i,
//
// and the glueing matrix is P_i = g_{i+1} g_i^-1, so R'_i P_i = P_i R_i.
// The half-power diag(c^1/2, c^-1/2) only ever acts by conjugation and is
// replaced by diag(c, 1), keeping everything rational:
//
//     Q_i = diag(1, c_{i+1}) U_{i+1} P_i U_i^-1   commutes with T_i.
//
// End traces are the constants t_1 = c_1 + 1/c_1 and t_{k-1} = c_k + 1/c_k.

#include <cstdint>
#include <string>
#include <vector>

#include "fnsphere/charvar.hpp"
#include "fnsphere/sampling.hpp"

namespace fnsphere {

/// (t, [p:q]) with t != +-2 and p^2 + t p q + q^2 != 0.
class QPoint {
public:
    QPoint(const Scalar& t, const ProjPoint& dir) : t_(t), dir_(dir) {
        if (t == Scalar(2) || t == Scalar(-2))
            throw DomainError("QPoint invariant violated: trace t = " + t.to_string() + " must differ from 2 and -2");
        if (quadratic_form(t, dir).is_zero())
            throw DomainError("QPoint invariant violated: p^2 + t p q + q^2 = 0 for t = " + t.to_string() + ", [" +
                              dir.p().to_string() + ":" + dir.q().to_string() + "]");
    }
    QPoint(const Scalar& t, const Scalar& p, const Scalar& q) : QPoint(t, ProjPoint(p, q)) {}

    static Scalar quadratic_form(const Scalar& t, const ProjPoint& d) {
        return d.p() * d.p() + t * d.p() * d.q() + d.q() * d.q();
    }

    const Scalar& t() const { return t_; }
    const ProjPoint& dir() const { return dir_; }

    friend bool operator==(const QPoint&, const QPoint&) = default;
    friend std::ostream& operator<<(std::ostream& os, const QPoint& x) { return os << "(" << x.t_ << ", " << x.dir_ << ")"; }

private:
    Scalar t_;
    ProjPoint dir_;
};

/// Coordinates for circles rho_2..rho_{k-2}, in that order.
struct FNCoords {
    std::vector<QPoint> points;

    friend bool operator==(const FNCoords&, const FNCoords&) = default;
};

struct PantsMatrices {
    Mat2 A;     ///< diag(c, 1/c)
    Mat2 R;     ///< [[u, 1], [w, t - u]]
    Mat2 Rprev; ///< A R, trace t_prev
    Scalar u;
    Scalar w;
};

namespace detail {
inline void require_class(const Scalar& c) {
    if (c.is_zero() || c == Scalar(1) || c == Scalar(-1))
        throw DomainError("class " + c.to_string() + " must differ from 0, 1 and -1");
}
} // namespace detail

/// (t_prev - t/c) / (c - 1/c): the unique u making tr(A R) = t_prev.
inline Scalar u_coeff(const Scalar& t_prev, const Scalar& t, const Scalar& c) {
    detail::require_class(c);
    Scalar ci = c.inverse();
    return (t_prev - ci * t) / (c - ci);
}

inline PantsMatrices pants_matrices(const Scalar& t_prev, const Scalar& t, const Scalar& c) {
    Scalar u = u_coeff(t_prev, t, c);
    Scalar w = u * (t - u) - Scalar(1);
    Mat2 A = Mat2::diag(c, c.inverse());
    Mat2 R(u, 1, w, t - u);
    return {A, R, A * R, u, w};
}

/// Normal form [[0, 1], [-1, t]] for trace t.
inline Mat2 t_matrix(const Scalar& t) { return {0, 1, -1, t}; }

inline Mat2 u_matrix(const Scalar& u) { return {1, 0, u, 1}; }

/// The class of [[p, q], [-q, p + t q]], the commutant of T(t) through [p:q].
inline ProjMat2 q_commutant(const QPoint& qp) {
    const Scalar& p = qp.dir().p();
    const Scalar& q = qp.dir().q();
    return ProjMat2(Mat2(p, q, -q, p + qp.t() * q));
}

inline QPoint qpoint_from_commutant(const Scalar& t, const ProjMat2& Q) {
    Mat2 T = t_matrix(t);
    if (Q.rep() * T != T * Q.rep())
        throw DomainError("matrix " + Q.rep().to_string() + " does not commute with T(" + t.to_string() + ")");
    return QPoint(t, Q.rep().a(), Q.rep().b());
}

namespace detail {

// Traces t_1..t_{k-1} (index 0 unused).
inline std::vector<Scalar> circle_traces(const FNCoords& coords, const Problem& problem) {
    const std::size_t k = problem.k();
    std::vector<Scalar> t(k);
    t[1] = problem.class_trace(1);
    for (std::size_t i = 2; i <= k - 2; ++i)
        t[i] = coords.points[i - 2].t();
    t[k - 1] = problem.class_trace(k);
    return t;
}

// Glueing-frame change diag(1, c_{i+1}) U_{i+1}.
inline Mat2 glue_left(const Scalar& c_next, const Scalar& u_next) {
    return Mat2::diag(1, c_next) * u_matrix(u_next);
}

} // namespace detail

/// Monodromy tuple of the point of the open stratum with the given
/// coordinates.
inline RepTuple fn_decode(const FNCoords& coords, const Problem& problem) {
    const std::size_t k = problem.k();
    if (auto bad = very_generic_violation(problem.classes()))
        throw DomainError("classes are not very generic (prefix/suffix " + std::to_string(bad->first) + ".." +
                          std::to_string(bad->last) + " has signed product " + bad->product.to_string() + ")");
    if (coords.points.size() != k - 3)
        throw DomainError("expected " + std::to_string(k - 3) + " coordinates for k = " + std::to_string(k) + ", got " +
                          std::to_string(coords.points.size()));

    auto t = detail::circle_traces(coords, problem);
    std::vector<PantsMatrices> pm(k);
    for (std::size_t i = 2; i <= k - 1; ++i)
        pm[i] = pants_matrices(t[i - 1], t[i], problem.c(i));

    // g_2 = I; g_{i+1} = P_i g_i, P_i = glue_left^-1 Q_i U_i.
    std::vector<Mat2> g(k);
    g[2] = Mat2::identity();
    for (std::size_t i = 2; i <= k - 2; ++i) {
        Mat2 Q = q_commutant(coords.points[i - 2]).rep();
        Mat2 P = mat_inv(detail::glue_left(problem.c(i + 1), pm[i + 1].u)) * Q * u_matrix(pm[i].u);
        g[i + 1] = ProjMat2(P * g[i]).rep();
    }

    RepTuple rep;
    rep.matrices.resize(k);
    rep.matrices[0] = mat_inv(pm[2].Rprev);
    for (std::size_t i = 2; i <= k - 1; ++i)
        rep.matrices[i - 1] = mat_inv(g[i]) * pm[i].A * g[i];
    rep.matrices[k - 1] = mat_inv(g[k - 1]) * pm[k - 1].R * g[k - 1];

    if (auto issues = rep_issues(rep, problem); !issues.empty())
        throw InternalError("decoded tuple failed validation: " + issues.front().reason);
    return rep;
}

class StratumError : public DomainError {
public:
    StratumError(std::size_t index, const std::string& what) : DomainError(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Coordinates of a tuple in the open stratum (all pants stable, all
/// interior traces != +-2).
inline FNCoords fn_encode(const RepTuple& rep, const Problem& problem) {
    const std::size_t k = problem.k();
    StratumDatum datum = classify_stratum(rep, problem);
    for (std::size_t i = 2; i <= k - 1; ++i)
        if (!datum.stable[i - 2])
            throw StratumError(i, "pants " + std::to_string(i) + " unstable");
    for (std::size_t i = 2; i <= k - 2; ++i)
        if (datum.gclass[i - 2].tag != MonodromyClass::Tag::regular)
            throw StratumError(i, "circle " + std::to_string(i) + " has trace " + datum.gclass[i - 2].trace.to_string() +
                                      " (" + to_string(datum.gclass[i - 2].tag) + "), outside the open stratum");

    std::vector<Scalar> t(k);
    t[1] = problem.class_trace(1);
    for (std::size_t i = 2; i <= k - 2; ++i)
        t[i] = datum.gclass[i - 2].trace;
    t[k - 1] = problem.class_trace(k);

    // suffix[i] = S_i = B_{i+1}...B_k
    std::vector<Mat2> suffix(k + 1);
    suffix[k] = Mat2::identity();
    for (std::size_t i = k; i-- > 1;)
        suffix[i] = rep.at(i + 1) * suffix[i + 1];

    std::vector<Mat2> g(k);
    std::vector<PantsMatrices> pm(k);
    for (std::size_t i = 2; i <= k - 1; ++i) {
        const Scalar& c = problem.c(i);
        ProjPoint e1 = eigenline(rep.at(i), c);
        ProjPoint e2 = eigenline(rep.at(i), c.inverse());
        Mat2 basis(e1.p(), e2.p(), e1.q(), e2.q());
        Scalar corner = (mat_inv(basis) * suffix[i] * basis).b();
        if (corner.is_zero())
            throw StratumError(i, "pants " + std::to_string(i) + " unstable");
        g[i] = mat_inv(basis * Mat2::diag(corner, 1));
        pm[i] = pants_matrices(t[i - 1], t[i], c);
        Mat2 gi = mat_inv(g[i]);
        if (g[i] * rep.at(i) * gi != pm[i].A || g[i] * suffix[i] * gi != pm[i].R)
            throw InternalError("frame of pants " + std::to_string(i) + " does not reach the normal form");
    }

    FNCoords out;
    for (std::size_t i = 2; i <= k - 2; ++i) {
        Mat2 P = g[i + 1] * mat_inv(g[i]);
        Mat2 Q = detail::glue_left(problem.c(i + 1), pm[i + 1].u) * P * mat_inv(u_matrix(pm[i].u));
        Mat2 T = t_matrix(t[i]);
        if (T * Q != Q * T)
            throw InternalError("glueing matrix at circle " + std::to_string(i) + " does not commute with T");
        out.points.push_back(qpoint_from_commutant(t[i], ProjMat2(Q)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting off the extension coordinate of an unstable pants.

/// (A_1, ..., A_i) with A_1...A_i R = I, R = diag(1/b, b), A_i lower
/// triangular with diagonal (c, 1/c), and b_prev = b / c.
struct SplitInput {
    std::vector<Mat2> tuple;
    Scalar b_prev;
    Scalar b;
    Scalar c;

    Mat2 R() const { return Mat2::diag(b.inverse(), b); }
    Mat2 Rprev() const { return Mat2::diag(b_prev.inverse(), b_prev); }

    friend bool operator==(const SplitInput&, const SplitInput&) = default;
};

struct SplitResult {
    Scalar y;
    std::vector<Mat2> tuple;
    Mat2 Rprev;

    friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

namespace detail {

inline void check_split_eigenvalues(const Scalar& b_prev, const Scalar& b, const Scalar& c) {
    require_class(c);
    if (b.is_zero() || b_prev.is_zero())
        throw DomainError("eigenvalues b, b_prev must be nonzero");
    if (b == b.inverse())
        throw DomainError("b = " + b.to_string() + " equals its inverse");
    if (b_prev == b_prev.inverse())
        throw DomainError("b_prev = " + b_prev.to_string() + " equals its inverse");
    if (b_prev * c != b)
        throw DomainError("eigenvalue relation b_prev = b / c violated: b_prev = " + b_prev.to_string() + ", b = " +
                          b.to_string() + ", c = " + c.to_string());
}

// u with U (A_i R) U^-1 = R'.
inline Scalar split_u(const Scalar& y, const Scalar& b_prev, const Scalar& b) {
    return -(b.inverse() * y) / (b_prev.inverse() - b_prev);
}

} // namespace detail

inline SplitResult unstable_split(const SplitInput& in) {
    detail::check_split_eigenvalues(in.b_prev, in.b, in.c);
    if (in.tuple.size() < 2)
        throw DomainError("split needs at least two matrices");
    const Mat2& last = in.tuple.back();
    if (!last.is_lower_triangular() || last.a() != in.c || last.d() != in.c.inverse())
        throw DomainError("last matrix " + last.to_string() + " is not lower triangular with diagonal (c, 1/c)");
    if (product(in.tuple) * in.R() != Mat2::identity())
        throw DomainError("relation A_1...A_i R = I violated");

    Scalar y = last.c();
    Mat2 U = u_matrix(detail::split_u(y, in.b_prev, in.b));
    Mat2 Ui = mat_inv(U);
    SplitResult out{y, {}, in.Rprev()};
    for (std::size_t j = 0; j + 1 < in.tuple.size(); ++j)
        out.tuple.push_back(U * in.tuple[j] * Ui);
    if (product(out.tuple) * out.Rprev != Mat2::identity())
        throw InternalError("split tuple fails A'_1...A'_{i-1} R' = I");
    return out;
}

inline SplitInput unstable_unsplit(const Scalar& y, const std::vector<Mat2>& tuple2, const Scalar& b_prev,
                                   const Scalar& b, const Scalar& c) {
    detail::check_split_eigenvalues(b_prev, b, c);
    if (tuple2.empty())
        throw DomainError("unsplit needs at least one matrix");
    if (product(tuple2) * Mat2::diag(b_prev.inverse(), b_prev) != Mat2::identity())
        throw DomainError("relation A'_1...A'_{i-1} R' = I violated");

    Mat2 U = u_matrix(detail::split_u(y, b_prev, b));
    Mat2 Ui = mat_inv(U);
    SplitInput out{{}, b_prev, b, c};
    for (const auto& m : tuple2)
        out.tuple.push_back(Ui * m * U);
    out.tuple.push_back(Mat2(c, 0, y, c.inverse()));
    if (product(out.tuple) * out.R() != Mat2::identity())
        throw InternalError("unsplit tuple fails A_1...A_i R = I");
    return out;
}

// ---------------------------------------------------------------------------

/// Deterministic pseudorandom coordinates with numerators and denominators
/// bounded by `height`.
inline FNCoords sample_fn(const Problem& problem, std::uint64_t seed, std::int64_t height) {
    if (height < 1)
        throw DomainError("height must be >= 1");
    std::string context = "sample_fn;h=" + std::to_string(height);
    for (const auto& c : problem.classes())
        context += ";" + c.to_string();
    SeededRng rng(seed, context);

    FNCoords out;
    for (std::size_t i = 0; i + 3 < problem.k(); ++i) {
        Scalar t;
        do {
            t = rng.rational(height);
        } while (t == Scalar(2) || t == Scalar(-2));
        Scalar p, q;
        do {
            p = rng.rational(height);
            q = rng.rational(height);
        } while ((p.is_zero() && q.is_zero()) || (p * p + t * p * q + q * q).is_zero());
        out.points.emplace_back(t, p, q);
    }
    return out;
}

} // namespace fnsphere

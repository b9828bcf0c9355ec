#pragma once

// Representation tuples (B_1, ..., B_k) on the k-punctured sphere: the
// genericity conditions on the eigenvalue data, validation against the
// conjugacy classes, irreducibility, restriction to the pants S_i and the
// stratum datum (stability flag per pants, trace class per cutting circle).
//
// Indices in this API are 1-based, matching the puncture labels: the pants
// S_i (2 <= i <= k-1) encloses puncture i and is bounded by the cutting
// circles rho_{i-1} and rho_i; the loop around rho_i is B_1...B_i.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fnsphere/mat2.hpp"

namespace fnsphere {

inline constexpr std::size_t kMaxGenericityLength = 24;

/// Eigenvalue data (c_1, ..., c_k) of a moduli problem; C_i is the class of
/// determinant-one matrices with eigenvalues c_i, 1/c_i.
class Problem {
public:
    explicit Problem(std::vector<Scalar> classes) : classes_(std::move(classes)) {
        if (classes_.size() < 4)
            throw DomainError("need k >= 4 punctures, got k = " + std::to_string(classes_.size()));
        for (std::size_t i = 0; i < classes_.size(); ++i) {
            const Scalar& c = classes_[i];
            if (c.is_zero() || c == Scalar(1) || c == Scalar(-1))
                throw DomainError("class c_" + std::to_string(i + 1) + " = " + c.to_string() +
                                  " must differ from 0, 1 and -1");
        }
    }

    std::size_t k() const { return classes_.size(); }
    const std::vector<Scalar>& classes() const { return classes_; }
    /// c_i, 1-based.
    const Scalar& c(std::size_t i) const { return classes_.at(i - 1); }
    /// c_i + 1/c_i, the trace shared by every element of C_i.
    Scalar class_trace(std::size_t i) const { return c(i) + c(i).inverse(); }

    friend bool operator==(const Problem&, const Problem&) = default;

private:
    std::vector<Scalar> classes_;
};

/// (B_1, ..., B_k). Plain value: validity is checked by rep_validate.
struct RepTuple {
    std::vector<Mat2> matrices;

    std::size_t size() const { return matrices.size(); }
    /// B_i, 1-based.
    const Mat2& at(std::size_t i) const { return matrices.at(i - 1); }

    friend bool operator==(const RepTuple&, const RepTuple&) = default;
};

/// g B_i g^-1 for every i.
inline RepTuple conjugate(const RepTuple& rep, const Mat2& g) {
    Mat2 gi = mat_inv(g);
    RepTuple out;
    out.matrices.reserve(rep.size());
    for (const auto& m : rep.matrices)
        out.matrices.push_back(g * m * gi);
    return out;
}

// ---------------------------------------------------------------------------
// Genericity

namespace detail {

inline void check_genericity_input(std::span<const Scalar> classes) {
    if (classes.size() > kMaxGenericityLength)
        throw DomainError("genericity check limited to " + std::to_string(kMaxGenericityLength) + " classes, got " +
                          std::to_string(classes.size()));
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].is_zero())
            throw DomainError("class c_" + std::to_string(i + 1) + " is zero");
}

// Depth-first walk over sign vectors of `seq`. `visit(depth, product, signs)`
// is called at every node of depth >= 1 and returns true to stop. The first
// sign is fixed to +1: a product equals +-1 iff its inverse does.
inline bool walk_sign_products(std::span<const Scalar> seq,
                               const std::function<bool(std::size_t, const Scalar&, const std::vector<int>&)>& visit) {
    if (seq.empty())
        return false;
    std::vector<Scalar> inv;
    inv.reserve(seq.size());
    for (const auto& c : seq)
        inv.push_back(c.inverse());
    std::vector<int> signs(seq.size(), 0);
    std::function<bool(std::size_t, const Scalar&)> rec = [&](std::size_t depth, const Scalar& prod) -> bool {
        if (visit(depth, prod, signs))
            return true;
        if (depth == seq.size())
            return false;
        for (int s : {1, -1}) {
            signs[depth] = s;
            if (rec(depth + 1, prod * (s > 0 ? seq[depth] : inv[depth])))
                return true;
        }
        signs[depth] = 0;
        return false;
    };
    signs[0] = 1;
    return rec(1, seq[0]);
}

} // namespace detail

/// A sign vector e with prod c_i^{e_i} = 1, if one exists.
inline std::optional<std::vector<int>> kostov_violation(std::span<const Scalar> classes) {
    detail::check_genericity_input(classes);
    std::optional<std::vector<int>> found;
    const Scalar one(1);
    detail::walk_sign_products(classes, [&](std::size_t depth, const Scalar& prod, const std::vector<int>& signs) {
        if (depth == classes.size() && prod == one) {
            found = signs;
            return true;
        }
        return false;
    });
    return found;
}

inline bool kostov_generic(std::span<const Scalar> classes) { return !kostov_violation(classes); }

struct VeryGenericViolation {
    std::size_t first = 0; ///< 1-based, inclusive
    std::size_t last = 0;  ///< 1-based, inclusive
    std::vector<int> signs; ///< one sign per entry of c_first..c_last
    Scalar product;         ///< 1 or -1
};

/// A prefix (c_1..c_i) or suffix (c_i..c_k) and sign vector whose signed
/// product is 1 or -1, if one exists.
inline std::optional<VeryGenericViolation> very_generic_violation(std::span<const Scalar> classes) {
    detail::check_genericity_input(classes);
    const std::size_t k = classes.size();
    const Scalar one(1), minus_one(-1);
    std::optional<VeryGenericViolation> found;

    detail::walk_sign_products(classes, [&](std::size_t depth, const Scalar& prod, const std::vector<int>& signs) {
        if (prod == one || prod == minus_one) {
            found = VeryGenericViolation{1, depth, {signs.begin(), signs.begin() + static_cast<long>(depth)}, prod};
            return true;
        }
        return false;
    });
    if (found)
        return found;

    std::vector<Scalar> reversed(classes.rbegin(), classes.rend());
    detail::walk_sign_products(reversed, [&](std::size_t depth, const Scalar& prod, const std::vector<int>& signs) {
        if (prod == one || prod == minus_one) {
            std::vector<int> s(signs.begin(), signs.begin() + static_cast<long>(depth));
            found = VeryGenericViolation{k - depth + 1, k, {s.rbegin(), s.rend()}, prod};
            return true;
        }
        return false;
    });
    return found;
}

inline bool very_generic(std::span<const Scalar> classes) { return !very_generic_violation(classes); }

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
    std::size_t index; ///< 1-based matrix index, 0 for tuple-level issues
    std::string reason;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues)
        : Error(describe(issues)), issues_(std::move(issues)) {}

    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    static std::string describe(const std::vector<ValidationIssue>& issues) {
        std::string out = "invalid representation tuple:";
        for (const auto& is : issues)
            out += " " + is.reason + ";";
        return out;
    }

    std::vector<ValidationIssue> issues_;
};

/// Every failed membership check: det B_i = 1, tr B_i = c_i + 1/c_i,
/// B_i != +-I, and B_1...B_k = I.
inline std::vector<ValidationIssue> rep_issues(const RepTuple& rep, const Problem& problem) {
    std::vector<ValidationIssue> issues;
    if (rep.size() != problem.k()) {
        issues.push_back({0, "length mismatch: " + std::to_string(rep.size()) + " matrices for k = " +
                                 std::to_string(problem.k())});
        return issues;
    }
    for (std::size_t i = 1; i <= rep.size(); ++i) {
        const Mat2& b = rep.at(i);
        const std::string at = " at " + std::to_string(i);
        if (b.det() != Scalar(1))
            issues.push_back({i, "determinant != 1" + at});
        if (b.trace() != problem.class_trace(i))
            issues.push_back({i, "trace mismatch" + at});
        if (b.is_scalar())
            issues.push_back({i, "central matrix" + at});
    }
    if (product(rep.matrices) != Mat2::identity())
        issues.push_back({0, "product B_1...B_k != I"});
    return issues;
}

inline void rep_validate(const RepTuple& rep, const Problem& problem) {
    auto issues = rep_issues(rep, problem);
    if (!issues.empty())
        throw ValidationError(std::move(issues));
}

// ---------------------------------------------------------------------------
// Irreducibility

/// No line (over Q or over the splitting field of any B_i) is invariant
/// under every B_i.
inline bool is_irreducible(const RepTuple& rep) {
    const Mat2* pivot = nullptr;
    for (const auto& m : rep.matrices)
        if (!m.is_scalar()) {
            pivot = &m;
            break;
        }
    if (!pivot)
        return false;

    // A common invariant line is an eigenline of the pivot.
    Scalar tr = pivot->trace();
    Scalar disc = tr * tr - Scalar(4) * pivot->det();
    if (rational_sqrt(disc)) {
        auto [l1, l2] = rational_eigenvalues(*pivot);
        std::vector<ProjPoint> lines{eigenline(*pivot, l1)};
        if (l1 != l2)
            lines.push_back(eigenline(*pivot, l2));
        for (const auto& line : lines) {
            bool common = true;
            for (const auto& m : rep.matrices)
                common = common && preserves_line(m, line);
            if (common)
                return false;
        }
        return true;
    }
    // Eigenlines are Galois-conjugate over Q(sqrt(disc)) and the B_i are
    // rational, so one is invariant iff both are, iff every B_i is diagonal
    // in the pivot's eigenbasis, iff every B_i commutes with the pivot.
    for (const auto& m : rep.matrices)
        if (m * *pivot != *pivot * m)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Circles, pants, strata

/// tr(B_1...B_i), the trace around the cutting circle rho_i, 2 <= i <= k-2.
inline Scalar circle_trace(const RepTuple& rep, std::size_t i) {
    if (rep.size() < 4 || i < 2 || i > rep.size() - 2)
        throw DomainError("circle index " + std::to_string(i) + " out of range [2, " +
                          std::to_string(rep.size() < 2 ? 0 : rep.size() - 2) + "]");
    return product({rep.matrices.begin(), rep.matrices.begin() + static_cast<long>(i)}).trace();
}

struct MonodromyClass {
    enum class Tag { central_plus, central_minus, unipotent_plus, unipotent_minus, regular };
    Tag tag;
    Scalar trace;

    friend bool operator==(const MonodromyClass&, const MonodromyClass&) = default;
};

inline const char* to_string(MonodromyClass::Tag t) {
    switch (t) {
    case MonodromyClass::Tag::central_plus: return "central_plus";
    case MonodromyClass::Tag::central_minus: return "central_minus";
    case MonodromyClass::Tag::unipotent_plus: return "unipotent_plus";
    case MonodromyClass::Tag::unipotent_minus: return "unipotent_minus";
    case MonodromyClass::Tag::regular: return "regular";
    }
    return "?";
}

inline MonodromyClass classify_circle_monodromy(const Mat2& m) {
    if (m.det() != Scalar(1))
        throw DomainError("monodromy " + m.to_string() + " is not in SL2");
    using Tag = MonodromyClass::Tag;
    Scalar tr = m.trace();
    if (m == Mat2::identity())
        return {Tag::central_plus, tr};
    if (m == Mat2::scalar(-1))
        return {Tag::central_minus, tr};
    if (tr == Scalar(2))
        return {Tag::unipotent_plus, tr};
    if (tr == Scalar(-2))
        return {Tag::unipotent_minus, tr};
    return {Tag::regular, tr};
}

/// Monodromy of the restriction to the pants S_i: the incoming circle
/// (B_1...B_{i-1}), the puncture (B_i) and the outgoing circle (B_1...B_i).
struct PantsData {
    std::size_t index;
    Mat2 prev;
    Mat2 local;
    Mat2 exit;
};

inline PantsData pants_restriction(const RepTuple& rep, std::size_t i) {
    if (rep.size() < 3 || i < 2 || i > rep.size() - 1)
        throw DomainError("pants index " + std::to_string(i) + " out of range [2, " +
                          std::to_string(rep.size() < 1 ? 0 : rep.size() - 1) + "]");
    Mat2 prev = product({rep.matrices.begin(), rep.matrices.begin() + static_cast<long>(i - 1)});
    const Mat2& local = rep.at(i);
    return {i, prev, local, prev * local};
}

/// Unstable iff the 1/c-eigenline of the puncture monodromy is invariant
/// under the incoming circle monodromy (hence under the whole pants group).
inline bool is_pants_stable(const PantsData& p, const Scalar& c) {
    if (c.is_zero() || c == Scalar(1) || c == Scalar(-1))
        throw DomainError("class " + c.to_string() + " must differ from 0, 1 and -1");
    if (p.local.trace() != c + c.inverse() || p.local.det() != Scalar(1))
        throw DomainError("puncture monodromy " + p.local.to_string() + " of pants " + std::to_string(p.index) +
                          " is not in the class of eigenvalue " + c.to_string());
    ProjPoint line = eigenline(p.local, c.inverse());
    return !preserves_line(p.prev, line);
}

/// Stability flag per pants S_2..S_{k-1} and trace class per cutting circle
/// rho_2..rho_{k-2}.
struct StratumDatum {
    std::vector<bool> stable;
    std::vector<MonodromyClass> gclass;

    bool in_open_stratum() const {
        for (bool s : stable)
            if (!s)
                return false;
        for (const auto& g : gclass)
            if (g.tag != MonodromyClass::Tag::regular)
                return false;
        return true;
    }

    friend bool operator==(const StratumDatum&, const StratumDatum&) = default;
};

inline StratumDatum classify_stratum(const RepTuple& rep, const Problem& problem) {
    rep_validate(rep, problem);
    const std::size_t k = problem.k();
    StratumDatum out;
    for (std::size_t i = 2; i <= k - 1; ++i)
        out.stable.push_back(is_pants_stable(pants_restriction(rep, i), problem.c(i)));
    Mat2 acc = rep.at(1);
    for (std::size_t i = 2; i <= k - 2; ++i) {
        acc = acc * rep.at(i);
        out.gclass.push_back(classify_circle_monodromy(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conjugator search

namespace detail {

// Basis of the nullspace of a dense rational matrix (rows x cols).
inline std::vector<std::vector<Scalar>> nullspace(std::vector<std::vector<Scalar>> a, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t sel = row;
        while (sel < a.size() && a[sel][col].is_zero())
            ++sel;
        if (sel == a.size())
            continue;
        std::swap(a[row], a[sel]);
        Scalar inv = a[row][col].inverse();
        for (auto& x : a[row])
            x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col].is_zero())
                continue;
            Scalar f = a[r][col];
            for (std::size_t j = 0; j < cols; ++j)
                a[r][j] -= f * a[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end())
            continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            v[pivot_cols[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

/// g in PGL2 with g B_i g^-1 = B'_i for all i, if one exists.
inline std::optional<ProjMat2> find_conjugator(const RepTuple& from, const RepTuple& to) {
    if (from.size() != to.size())
        throw DomainError("tuples of different lengths");
    // Unknown g = [[x0, x1], [x2, x3]]; each i contributes B'_i g - g B_i = 0.
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const Mat2& b = from.matrices[i];
        const Mat2& bp = to.matrices[i];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::vector<Scalar> row(4, Scalar(0));
                for (int m = 0; m < 2; ++m) {
                    row[2 * m + c] += bp(r, m); // (B' g)_{rc} = sum_m B'_{rm} g_{mc}
                    row[2 * r + m] -= b(m, c);  // (g B)_{rc} = sum_m g_{rm} B_{mc}
                }
                rows.push_back(std::move(row));
            }
    }
    auto basis = detail::nullspace(std::move(rows), 4);
    if (basis.empty())
        return std::nullopt;

    auto accept = [&](const std::vector<Scalar>& v) -> std::optional<ProjMat2> {
        Mat2 g(v[0], v[1], v[2], v[3]);
        if (g.det().is_zero())
            return std::nullopt;
        if (conjugate(from, g) != to)
            throw InternalError("conjugator solution failed verification");
        return ProjMat2(g);
    };

    // det is a quadratic form on the kernel; if it is not identically zero
    // it is nonzero somewhere on the grid {0,1,2}^d.
    const std::size_t d = basis.size();
    std::vector<int> coef(d, 0);
    while (true) {
        std::size_t pos = 0;
        while (pos < d && coef[pos] == 2)
            coef[pos++] = 0;
        if (pos == d)
            break;
        ++coef[pos];
        std::vector<Scalar> v(4, Scalar(0));
        for (std::size_t j = 0; j < d; ++j)
            if (coef[j] != 0)
                for (int e = 0; e < 4; ++e)
                    v[e] += Scalar(coef[j]) * basis[j][e];
        if (auto g = accept(v))
            return g;
    }
    return std::nullopt;
}

} // namespace fnsphere

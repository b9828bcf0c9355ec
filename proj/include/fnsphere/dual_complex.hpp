#pragma once

// Delta-complexes and their reduced integer homology.
//
// A d-cell lists d+1 faces; face j is the (d-1)-cell opposite its j-th
// vertex, and the boundary is sum_j (-1)^j face_j. Distinct cells may share
// the same faces, so two edges on the same pair of vertices are allowed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fnsphere/error.hpp"

namespace fnsphere {

struct Cell {
    std::string id; ///< may be empty; serializers then generate a name
    std::vector<std::size_t> faces;

    friend bool operator==(const Cell&, const Cell&) = default;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class DeltaComplex {
public:
    /// The empty complex.
    DeltaComplex() = default;

    /// cells[d] lists the d-cells. Validates face counts, face ranges and
    /// d o d = 0.
    explicit DeltaComplex(std::vector<std::vector<Cell>> cells) : cells_(std::move(cells)) {
        while (!cells_.empty() && cells_.back().empty())
            cells_.pop_back();
        for (std::size_t d = 0; d < cells_.size(); ++d) {
            if (cells_[d].empty())
                throw DomainError("no " + std::to_string(d) + "-cells below a nonempty dimension");
            for (std::size_t i = 0; i < cells_[d].size(); ++i) {
                const Cell& cell = cells_[d][i];
                const std::size_t expected = d == 0 ? 0 : d + 1;
                if (cell.faces.size() != expected)
                    throw DomainError(describe(d, i) + " has " + std::to_string(cell.faces.size()) + " faces, expected " +
                                      std::to_string(expected));
                for (std::size_t f : cell.faces)
                    if (f >= cells_[d - 1].size())
                        throw DomainError(describe(d, i) + " references missing face " + std::to_string(f));
            }
        }
        for (std::size_t d = 1; d + 1 < cells_.size(); ++d)
            if (!is_zero(multiply(boundary(d), boundary(d + 1))))
                throw DomainError("boundary of boundary is nonzero in degree " + std::to_string(d + 1));
    }

    bool empty() const { return cells_.empty(); }
    /// -1 for the empty complex.
    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t count(std::size_t d) const { return d < cells_.size() ? cells_[d].size() : 0; }
    const std::vector<Cell>& cells(std::size_t d) const { return cells_.at(d); }
    const std::vector<std::vector<Cell>>& all_cells() const { return cells_; }

    /// Matrix of the boundary C_d -> C_{d-1} (rows: (d-1)-cells). For d = 0
    /// this is the augmentation C_0 -> Z, a single row of ones.
    IntMatrix boundary(std::size_t d) const {
        if (d == 0)
            return IntMatrix(1, std::vector<std::int64_t>(count(0), 1));
        IntMatrix m(count(d - 1), std::vector<std::int64_t>(count(d), 0));
        for (std::size_t i = 0; i < count(d); ++i) {
            const auto& faces = cells_[d][i].faces;
            for (std::size_t j = 0; j < faces.size(); ++j)
                m[faces[j]][i] += (j % 2 == 0) ? 1 : -1;
        }
        return m;
    }

    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t d = 0; d < cells_.size(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(cells_[d].size());
        return chi;
    }

    /// Display name of a cell: its id, or a generated one.
    std::string name(std::size_t d, std::size_t i) const {
        const std::string& id = cells_.at(d).at(i).id;
        if (!id.empty())
            return id;
        static const char* prefix[] = {"v", "e", "f"};
        return d < 3 ? prefix[d] + std::to_string(i) : "s" + std::to_string(d) + "_" + std::to_string(i);
    }

    friend bool operator==(const DeltaComplex&, const DeltaComplex&) = default;

private:
    static std::string describe(std::size_t d, std::size_t i) {
        return std::to_string(d) + "-cell #" + std::to_string(i);
    }

    static IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
        if (a.empty() || b.empty())
            return {};
        IntMatrix out(a.size(), std::vector<std::int64_t>(b.front().size(), 0));
        for (std::size_t r = 0; r < a.size(); ++r)
            for (std::size_t m = 0; m < b.size(); ++m)
                if (a[r][m] != 0)
                    for (std::size_t c = 0; c < b[m].size(); ++c)
                        out[r][c] += a[r][m] * b[m][c];
        return out;
    }

    static bool is_zero(const IntMatrix& m) {
        for (const auto& row : m)
            for (auto x : row)
                if (x != 0)
                    return false;
        return true;
    }

    std::vector<std::vector<Cell>> cells_;
};

// ---------------------------------------------------------------------------
// Smith normal form

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<mpz_class> smith_invariants(const IntMatrix& input) {
    const std::size_t rows = input.size();
    const std::size_t cols = rows ? input.front().size() : 0;
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a[r][c] = static_cast<long>(input[r][c]);

    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
            bool found = false;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (!found || abs(a[r][c]) < abs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                        found = true;
                    }
            return found;
        };
        std::size_t pr = t, pc = t;
        if (!find_pivot(pr, pc))
            break;

        while (true) {
            std::swap(a[t], a[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0)
                    continue;
                mpz_class q = a[r][t] / a[t][t];
                for (std::size_t c = t; c < cols; ++c)
                    a[r][c] -= q * a[t][c];
                clean = clean && a[r][t] == 0;
            }
            for (std::size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0)
                    continue;
                mpz_class q = a[t][c] / a[t][t];
                for (std::size_t r = t; r < rows; ++r)
                    a[r][c] -= q * a[r][t];
                clean = clean && a[t][c] == 0;
            }
            if (clean) {
                // Divisibility: fold any non-multiple into row t and retry.
                std::size_t bad_r = rows;
                for (std::size_t r = t + 1; r < rows && bad_r == rows; ++r)
                    for (std::size_t c = t + 1; c < cols; ++c)
                        if (a[r][c] % a[t][t] != 0) {
                            bad_r = r;
                            break;
                        }
                if (bad_r == rows)
                    break;
                for (std::size_t c = t; c < cols; ++c)
                    a[t][c] += a[bad_r][c];
            }
            pr = t;
            pc = t;
            find_pivot(pr, pc);
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyGroup {
    int dim;
    std::size_t rank;
    std::vector<mpz_class> torsion; ///< coefficients > 1 in divisibility order

    friend bool operator==(const HomologyGroup& x, const HomologyGroup& y) {
        return x.dim == y.dim && x.rank == y.rank && x.torsion == y.torsion;
    }
};

/// Reduced integer homology in degrees >= 0; only nonzero groups are listed.
/// (The empty complex has reduced H_{-1} = Z, which is outside this range,
/// so its profile is empty, as is that of any acyclic complex.)
struct HomologyProfile {
    std::vector<HomologyGroup> groups;

    std::size_t rank(int d) const {
        for (const auto& g : groups)
            if (g.dim == d)
                return g.rank;
        return 0;
    }
    bool has_torsion() const {
        return std::any_of(groups.begin(), groups.end(), [](const auto& g) { return !g.torsion.empty(); });
    }
    bool trivial() const { return groups.empty(); }

    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

inline HomologyProfile reduced_homology(const DeltaComplex& k) {
    HomologyProfile out;
    if (k.empty())
        return out;
    const std::size_t top = static_cast<std::size_t>(k.dim());

    // rank of boundary(d) and its invariant factors, d = 0..top
    std::vector<std::size_t> ranks(top + 2, 0);
    std::vector<std::vector<mpz_class>> factors(top + 2);
    for (std::size_t d = 0; d <= top; ++d) {
        factors[d] = smith_invariants(k.boundary(d));
        ranks[d] = factors[d].size();
    }
    for (std::size_t d = 0; d <= top; ++d) {
        HomologyGroup g{static_cast<int>(d), k.count(d) - ranks[d] - ranks[d + 1], {}};
        for (const auto& f : factors[d + 1])
            if (f > 1)
                g.torsion.push_back(f);
        if (g.rank > 0 || !g.torsion.empty())
            out.groups.push_back(std::move(g));
    }
    return out;
}

/// Euler characteristic read off the homology profile of `k`.
inline std::int64_t euler_from_homology(const HomologyProfile& h, bool complex_empty) {
    if (complex_empty)
        return 0;
    std::int64_t chi = 1;
    for (const auto& g : h.groups)
        chi += (g.dim % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(g.rank);
    return chi;
}

/// Reduced homology is Z in degree n, zero elsewhere, no torsion.
inline bool is_homology_sphere(const DeltaComplex& k, int n) {
    if (n < 0)
        throw DomainError("sphere dimension must be >= 0");
    auto h = reduced_homology(k);
    return h.groups.size() == 1 && h.groups[0].dim == n && h.groups[0].rank == 1 && h.groups[0].torsion.empty();
}

// ---------------------------------------------------------------------------
// Constructions

/// Simplicial complex generated by the given facets, with the vertices of
/// every simplex in increasing order.
inline DeltaComplex from_facets(const std::vector<std::set<int>>& facets) {
    std::vector<std::map<std::vector<int>, std::size_t>> index;
    auto add = [&](const std::vector<int>& s) {
        std::size_t d = s.size() - 1;
        if (index.size() <= d)
            index.resize(d + 1);
        index[d].emplace(s, 0);
    };
    for (const auto& f : facets) {
        if (f.empty())
            throw DomainError("empty facet");
        if (f.size() > 20)
            throw DomainError("facet too large");
        std::vector<int> verts(f.begin(), f.end());
        const std::uint32_t n = static_cast<std::uint32_t>(verts.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (std::uint32_t j = 0; j < n; ++j)
                if (mask & (1u << j))
                    s.push_back(verts[j]);
            add(s);
        }
    }
    std::vector<std::vector<Cell>> cells(index.size());
    for (std::size_t d = 0; d < index.size(); ++d) {
        std::size_t next = 0;
        for (auto& [s, idx] : index[d])
            idx = next++;
    }
    for (std::size_t d = 0; d < index.size(); ++d)
        for (const auto& [s, idx] : index[d]) {
            Cell cell;
            if (d == 0) {
                cell.id = "v" + std::to_string(s[0]);
            } else {
                for (std::size_t j = 0; j < s.size(); ++j) {
                    std::vector<int> face = s;
                    face.erase(face.begin() + static_cast<long>(j));
                    cell.faces.push_back(index[d - 1].at(face));
                }
            }
            cells[d].push_back(std::move(cell));
        }
    return DeltaComplex(std::move(cells));
}

/// Join K * L: cells are pairs (s, t) of a cell or the empty cell from each
/// side, not both empty, with dim = dim s + dim t + 1. Vertices of s come
/// before those of t, so the faces are (d_j s, t) followed by (s, d_j t).
inline DeltaComplex join(const DeltaComplex& K, const DeltaComplex& L) {
    const int dk = K.dim(), dl = L.dim();
    const int top = dk + dl + 1;
    if (top < 0)
        return {};
    // key: (dim s, index s, dim t, index t); dim -1 is the empty cell.
    using Key = std::tuple<int, std::size_t, int, std::size_t>;
    std::map<Key, std::size_t> index;
    std::vector<std::vector<Key>> order(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n)
        for (int p = -1; p <= std::min(n, dk); ++p) {
            int q = n - 1 - p;
            if (q < -1 || q > dl)
                continue;
            std::size_t ns = p < 0 ? 1 : K.count(static_cast<std::size_t>(p));
            std::size_t nt = q < 0 ? 1 : L.count(static_cast<std::size_t>(q));
            for (std::size_t s = 0; s < ns; ++s)
                for (std::size_t t = 0; t < nt; ++t) {
                    Key key{p, s, q, t};
                    index.emplace(key, order[static_cast<std::size_t>(n)].size());
                    order[static_cast<std::size_t>(n)].push_back(key);
                }
        }

    auto face_of = [](const DeltaComplex& X, int d, std::size_t i, std::size_t j) -> std::pair<int, std::size_t> {
        if (d == 0)
            return {-1, 0};
        return {d - 1, X.cells(static_cast<std::size_t>(d))[i].faces[j]};
    };

    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n)
        for (const auto& [p, s, q, t] : order[static_cast<std::size_t>(n)]) {
            Cell cell;
            if (n > 0) {
                for (int j = 0; j <= p; ++j) {
                    auto [fp, fs] = face_of(K, p, s, static_cast<std::size_t>(j));
                    cell.faces.push_back(index.at({fp, fs, q, t}));
                }
                for (int j = 0; j <= q; ++j) {
                    auto [fq, ft] = face_of(L, q, t, static_cast<std::size_t>(j));
                    cell.faces.push_back(index.at({p, s, fq, ft}));
                }
            }
            cells[static_cast<std::size_t>(n)].push_back(std::move(cell));
        }
    return DeltaComplex(std::move(cells));
}

inline DeltaComplex point_complex() { return DeltaComplex({{Cell{"apex", {}}}}); }

inline DeltaComplex cone(const DeltaComplex& K) { return join(point_complex(), K); }

/// Two vertices joined by two edges: the incidence complex at infinity of
/// one Fenchel-Nielsen factor (the fiber over t = infinity and the conic
/// p^2 + t p q + q^2 = 0 in P1 x P1, meeting in two points).
inline DeltaComplex q_boundary_model() {
    return DeltaComplex({{Cell{"fiber", {}}, Cell{"conic", {}}}, {Cell{"x1", {0, 1}}, Cell{"x2", {0, 1}}}});
}

/// (k-3)-fold join of the circle model.
inline DeltaComplex mprime_boundary_model(int k) {
    if (k < 4)
        throw DomainError("need k >= 4, got " + std::to_string(k));
    DeltaComplex out = q_boundary_model();
    for (int i = 1; i < k - 3; ++i)
        out = join(out, q_boundary_model());
    return out;
}

/// Two projective lines meeting in two points: the boundary complex of the
/// compactification is empty, while removing both lines leaves a circle.
inline std::pair<DeltaComplex, DeltaComplex> caution_example() {
    DeltaComplex boundary_of_x;
    DeltaComplex boundary_of_u({{Cell{"D1", {}}, Cell{"D2", {}}}, {Cell{"p1", {0, 1}}, Cell{"p2", {0, 1}}}});
    return {boundary_of_x, boundary_of_u};
}

} // namespace fnsphere

#pragma once

// JSON forms of the library values. Scalars are strings "n" or "n/d" in
// lowest terms; matrices are row-major [[a, b], [c, d]].

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fnsphere/charvar.hpp"
#include "fnsphere/dual_complex.hpp"
#include "fnsphere/fenchel_nielsen.hpp"

namespace fnsphere::io {

using nlohmann::json;

inline json to_json(const Scalar& s) { return s.to_string(); }

inline Scalar scalar_from_json(const json& j) {
    if (j.is_string())
        return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer())
        return Scalar(j.get<long long>());
    throw ParseError("expected a rational string, got " + j.dump());
}

inline json to_json(const Mat2& m) {
    return json::array({json::array({to_json(m.a()), to_json(m.b())}), json::array({to_json(m.c()), to_json(m.d())})});
}

inline Mat2 mat2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
        throw ParseError("expected a 2x2 matrix [[a,b],[c,d]], got " + j.dump());
    return {scalar_from_json(j[0][0]), scalar_from_json(j[0][1]), scalar_from_json(j[1][0]), scalar_from_json(j[1][1])};
}

namespace detail {
inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}
inline const json& array_field(const json& j, const char* key) {
    const json& a = field(j, key);
    if (!a.is_array())
        throw ParseError(std::string("field \"") + key + "\" must be an array");
    return a;
}
} // namespace detail

// --- Problem ---------------------------------------------------------------

inline json to_json(const Problem& p) {
    json classes = json::array();
    for (const auto& c : p.classes())
        classes.push_back(to_json(c));
    return {{"k", p.k()}, {"classes", classes}};
}

inline Problem problem_from_json(const json& j) {
    std::vector<Scalar> classes;
    for (const auto& c : detail::array_field(j, "classes"))
        classes.push_back(scalar_from_json(c));
    if (j.contains("k")) {
        if (!j["k"].is_number_integer() || j["k"].get<long long>() != static_cast<long long>(classes.size()))
            throw ParseError("field \"k\" disagrees with the number of classes");
    }
    return Problem(std::move(classes));
}

// --- RepTuple --------------------------------------------------------------

inline json to_json(const RepTuple& r) {
    json ms = json::array();
    for (const auto& m : r.matrices)
        ms.push_back(to_json(m));
    return {{"matrices", ms}};
}

inline RepTuple rep_from_json(const json& j) {
    RepTuple r;
    for (const auto& m : detail::array_field(j, "matrices"))
        r.matrices.push_back(mat2_from_json(m));
    return r;
}

// --- FNCoords --------------------------------------------------------------

inline json to_json(const FNCoords& c) {
    json pts = json::array();
    for (const auto& q : c.points)
        pts.push_back({{"t", to_json(q.t())}, {"p", to_json(q.dir().p())}, {"q", to_json(q.dir().q())}});
    return {{"coords", pts}};
}

inline FNCoords coords_from_json(const json& j) {
    FNCoords c;
    for (const auto& q : detail::array_field(j, "coords"))
        c.points.emplace_back(scalar_from_json(detail::field(q, "t")), scalar_from_json(detail::field(q, "p")),
                              scalar_from_json(detail::field(q, "q")));
    return c;
}

// --- StratumDatum ----------------------------------------------------------

inline json to_json(const StratumDatum& s) {
    json sigma = json::array(), gclass = json::array();
    for (bool b : s.stable)
        sigma.push_back(b ? "stable" : "unstable");
    for (const auto& g : s.gclass)
        gclass.push_back(to_string(g.tag));
    return {{"sigma", sigma}, {"gclass", gclass}};
}

// --- DeltaComplex ----------------------------------------------------------

inline json to_json(const DeltaComplex& k) {
    json cells = json::object();
    for (std::size_t d = 0; d < k.all_cells().size(); ++d) {
        json level = json::array();
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (d == 0) {
                level.push_back(k.name(0, i));
                continue;
            }
            json faces = json::array();
            for (std::size_t f : k.cells(d)[i].faces)
                faces.push_back(k.name(d - 1, f));
            level.push_back({{"id", k.name(d, i)}, {"faces", faces}});
        }
        cells[std::to_string(d)] = level;
    }
    return {{"cells", cells}};
}

inline DeltaComplex complex_from_json(const json& j) {
    const json& cells = detail::field(j, "cells");
    if (!cells.is_object())
        throw ParseError("field \"cells\" must be an object keyed by dimension");
    std::size_t levels = 0;
    for (auto it = cells.begin(); it != cells.end(); ++it) {
        std::size_t d;
        try {
            std::size_t used = 0;
            d = std::stoul(it.key(), &used);
            if (used != it.key().size())
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("dimension key \"" + it.key() + "\" is not a nonnegative integer");
        }
        levels = std::max(levels, d + 1);
    }
    std::vector<std::vector<Cell>> out(levels);
    std::vector<std::map<std::string, std::size_t>> ids(levels);
    for (std::size_t d = 0; d < levels; ++d) {
        const std::string key = std::to_string(d);
        if (!cells.contains(key))
            throw ParseError("missing cells for dimension " + key);
        const json& level = cells.at(key);
        if (!level.is_array())
            throw ParseError("cells of dimension " + key + " must be an array");
        for (const auto& entry : level) {
            Cell cell;
            if (d == 0) {
                if (!entry.is_string())
                    throw ParseError("vertices must be given as id strings");
                cell.id = entry.get<std::string>();
            } else {
                const json& id = detail::field(entry, "id");
                if (!id.is_string())
                    throw ParseError("cell id must be a string");
                cell.id = id.get<std::string>();
                for (const auto& f : detail::array_field(entry, "faces")) {
                    if (!f.is_string())
                        throw ParseError("face references must be id strings");
                    auto hit = ids[d - 1].find(f.get<std::string>());
                    if (hit == ids[d - 1].end())
                        throw ParseError("cell \"" + cell.id + "\" references unknown face \"" + f.get<std::string>() +
                                         "\"");
                    cell.faces.push_back(hit->second);
                }
            }
            if (!ids[d].emplace(cell.id, out[d].size()).second)
                throw ParseError("duplicate cell id \"" + cell.id + "\"");
            out[d].push_back(std::move(cell));
        }
    }
    return DeltaComplex(std::move(out));
}

inline json to_json(const HomologyProfile& h) {
    json groups = json::array();
    for (const auto& g : h.groups) {
        json torsion = json::array();
        for (const auto& t : g.torsion)
            torsion.push_back(t.get_si());
        groups.push_back({{"dim", g.dim}, {"rank", g.rank}, {"torsion", torsion}});
    }
    return {{"reduced", groups}};
}

} // namespace fnsphere::io

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>

#include "fnsphere/fnsphere.hpp"
#include "oracles.hpp"

using namespace fnsphere;
using oracle::q;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

// Runs one criterion; exceptions count as failures.
bool criterion(const char* id, const char* title, std::optional<double> limit_s, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = !limit_s || secs < *limit_s;
    bool ok = o.pass && in_time;
    std::string timing = limit_s ? "limit " + std::to_string(static_cast<int>(*limit_s)) + " s" : "no limit";
    std::printf("[%s] %s %s: %s (%.3f s, %s)%s\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                timing.c_str(), in_time ? "" : " over time limit");
    return ok;
}

Outcome tally(int passed, int total, const std::string& first_failure) {
    std::string d = std::to_string(passed) + "/" + std::to_string(total);
    if (!first_failure.empty())
        d += "; first failure: " + first_failure;
    return {passed == total, d};
}

Scalar random_class(SeededRng& rng) { return oracle::rational_avoiding(rng, 9, {0, 1, -1}); }

Outcome pants_identities() {
    SeededRng rng(1, "acceptance-pants");
    int passed = 0;
    std::string first;
    for (int trial = 0; trial < 200; ++trial) {
        Scalar c = random_class(rng);
        Scalar t_prev = rng.rational(12), t = rng.rational(12);
        auto pm = pants_matrices(t_prev, t, c);
        Mat2 U = u_matrix(pm.u);
        Mat2 D = Mat2::diag(c, 1);
        bool ok = pm.R.trace() == t && (pm.A * pm.R).trace() == t_prev && pm.R.det() == Scalar(1) &&
                  mat_inv(U) * t_matrix(t) * U == pm.R &&
                  ProjMat2(U * pm.A * mat_inv(U) * t_matrix(t)) == ProjMat2(D * t_matrix(t_prev) * mat_inv(D));
        if (ok)
            ++passed;
        else if (first.empty())
            first = "c=" + c.to_string() + " t_prev=" + t_prev.to_string() + " t=" + t.to_string();
    }
    return tally(passed, 200, first);
}

Outcome commutants() {
    SeededRng rng(2, "acceptance-commutant");
    int passed = 0;
    std::string first;
    for (int trial = 0; trial < 200; ++trial) {
        Scalar t = oracle::rational_avoiding(rng, 10, {2, -2});
        Scalar p, r;
        do {
            p = rng.rational(10);
            r = rng.rational(10);
        } while ((p.is_zero() && r.is_zero()) || (p * p + t * p * r + r * r).is_zero());
        QPoint x(t, p, r);
        Mat2 Q = q_commutant(x).rep();
        bool ok = Q * t_matrix(t) == t_matrix(t) * Q && qpoint_from_commutant(t, q_commutant(x)) == x;
        if (ok)
            ++passed;
        else if (first.empty())
            first = "valid point t=" + t.to_string();
    }
    for (int trial = 0; trial < 50; ++trial) {
        bool threw = false;
        std::string label;
        try {
            if (trial % 2 == 0) {
                Scalar t = trial % 4 == 0 ? 2 : -2;
                label = "t=" + t.to_string();
                QPoint(t, rng.rational(10), oracle::rational_avoiding(rng, 10, {0}));
            } else {
                // p = r, q = 1 is a root of p^2 + t p q + q^2 when t = -(r + 1/r)
                Scalar r = oracle::rational_avoiding(rng, 10, {0, 1, -1});
                Scalar t = -(r + r.inverse());
                label = "t=" + t.to_string() + " [" + r.to_string() + ":1]";
                QPoint(t, r, 1);
            }
        } catch (const DomainError&) {
            threw = true;
        }
        if (threw)
            ++passed;
        else if (first.empty())
            first = "invalid point accepted: " + label;
    }
    return tally(passed, 250, first);
}

// Empty on success, otherwise the reason.
std::optional<std::string> fn_trial(const Problem& problem, std::uint64_t seed, SeededRng& rng) {
    FNCoords x = sample_fn(problem, seed, 10);
    RepTuple r = fn_decode(x, problem);
    if (!rep_issues(r, problem).empty())
        return "decode output invalid";
    Mat2 prefix = r.at(1);
    for (std::size_t i = 2; i + 2 <= problem.k(); ++i) {
        prefix = prefix * r.at(i);
        if (prefix.trace() != x.points[i - 2].t())
            return "prefix trace " + std::to_string(i);
    }
    StratumDatum s = classify_stratum(r, problem);
    for (bool b : s.stable)
        if (!b)
            return "unstable pants";
    for (const auto& g : s.gclass)
        if (g.tag != MonodromyClass::Tag::regular)
            return "interior trace +-2";
    if (!is_irreducible(r))
        return "reducible";
    if (fn_encode(r, problem) != x)
        return "encode(decode(x)) != x";

    Mat2 g = oracle::random_invertible(rng, 6);
    RepTuple moved = conjugate(r, g);
    RepTuple back = fn_decode(fn_encode(moved, problem), problem);
    auto h = find_conjugator(back, moved);
    if (!h || conjugate(back, h->rep()) != moved)
        return "decode(encode(r)) not conjugate to r";
    return std::nullopt;
}

Outcome fn_round_trip() {
    int passed = 0, total = 0;
    std::string first;
    for (std::size_t k = 4; k <= 8; ++k) {
        Problem problem(oracle::first_primes(k));
        SeededRng rng(3, "acceptance-roundtrip-k" + std::to_string(k));
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            ++total;
            std::optional<std::string> failure;
            try {
                failure = fn_trial(problem, seed, rng);
            } catch (const std::exception& e) {
                failure = e.what();
            }
            if (!failure)
                ++passed;
            else if (first.empty())
                first = "k=" + std::to_string(k) + " seed " + std::to_string(seed) + ": " + *failure;
        }
    }
    return tally(passed, total, first);
}

Outcome injectivity() {
    int passed = 0;
    std::string first;
    for (int pair = 0; pair < 50; ++pair) {
        std::size_t k = 4 + static_cast<std::size_t>(pair % 3);
        Problem problem(oracle::first_primes(k));
        auto seed = static_cast<std::uint64_t>(pair + 1);
        FNCoords x = sample_fn(problem, seed, 8);
        FNCoords y;
        if (pair % 2 == 0) {
            // same traces, one direction moved
            y = x;
            std::size_t j = static_cast<std::size_t>(pair) % y.points.size();
            const QPoint& old = y.points[j];
            for (int shift = 1;; ++shift) {
                ProjPoint d(old.dir().p() + Scalar(shift) * old.dir().q(), old.dir().q() - Scalar(shift) * old.dir().p());
                if (!QPoint::quadratic_form(old.t(), d).is_zero() && !(d == old.dir())) {
                    y.points[j] = QPoint(old.t(), d);
                    break;
                }
            }
        } else {
            y = sample_fn(problem, seed + 1000, 8);
        }
        bool ok = x != y && !find_conjugator(fn_decode(x, problem), fn_decode(y, problem));
        if (ok)
            ++passed;
        else if (first.empty())
            first = "pair " + std::to_string(pair);
    }
    return tally(passed, 50, first);
}

Outcome split_round_trip() {
    SeededRng rng(5, "acceptance-split");
    int passed = 0;
    std::string first;
    for (int trial = 0; trial < 100; ++trial) {
        Scalar c = random_class(rng);
        Scalar b_prev = oracle::rational_avoiding(rng, 7, {0, 1, -1, c.inverse(), -c.inverse()});
        Scalar b = b_prev * c;
        Scalar y = rng.rational(9);
        std::size_t n = 1 + rng.below(4);
        std::vector<Mat2> tuple2;
        Mat2 acc = Mat2::identity();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            tuple2.push_back(oracle::random_invertible(rng, 5));
            acc = acc * tuple2.back();
        }
        tuple2.push_back(mat_inv(acc) * Mat2::diag(b_prev, b_prev.inverse()));

        SplitInput in = unstable_unsplit(y, tuple2, b_prev, b, c);
        SplitResult out = unstable_split(in);
        bool ok = product(in.tuple) * in.R() == Mat2::identity() && out.y == y && out.tuple == tuple2 &&
                  product(out.tuple) * out.Rprev == Mat2::identity() &&
                  unstable_unsplit(out.y, out.tuple, b_prev, b, c) == in;
        if (ok)
            ++passed;
        else if (first.empty())
            first = "trial " + std::to_string(trial);
    }
    return tally(passed, 100, first);
}

Outcome genericity() {
    std::vector<std::string> bad;
    if (!very_generic(std::vector<Scalar>{2, 3, 5, 7}))
        bad.push_back("(2,3,5,7) not very generic");
    auto w = kostov_violation(std::vector<Scalar>{2, 2, 2, 8});
    if (!w || oracle::signed_product({2, 2, 2, 8}, 0b1000) != Scalar(1) || *w != std::vector<int>{1, 1, 1, -1})
        bad.push_back("(2,2,2,8) witness");
    if (very_generic(std::vector<Scalar>{2, 3, q(1, 6), 5}))
        bad.push_back("(2,3,1/6,5) very generic");
    if (very_generic(std::vector<Scalar>{2, -2, 3, 5}))
        bad.push_back("(2,-2,3,5) very generic");
    std::string d = "4/4 examples";
    if (!bad.empty())
        d = bad.front();
    else
        d += "; (2,2,2,8) witness eps=(1,1,1,-1)";
    return {bad.empty(), d};
}

Outcome spheres() {
    std::string d;
    bool ok = is_homology_sphere(q_boundary_model(), 1);
    d += std::string("Q: S^1 ") + (ok ? "yes" : "no");
    for (int k = 4; k <= 6; ++k) {
        int n = 2 * (k - 3) - 1;
        bool s = is_homology_sphere(mprime_boundary_model(k), n);
        ok = ok && s;
        d += "; k=" + std::to_string(k) + ": S^" + std::to_string(n) + " " + (s ? "yes" : "no");
    }
    return {ok, d};
}

Outcome homology_regressions() {
    std::vector<std::string> bad;
    if (!is_homology_sphere(oracle::hollow_triangle(), 1))
        bad.push_back("hollow triangle");
    if (!is_homology_sphere(oracle::tetrahedron_boundary(), 2))
        bad.push_back("tetrahedron boundary");
    auto h = reduced_homology(oracle::projective_plane());
    HomologyProfile z2{{HomologyGroup{1, 0, {mpz_class(2)}}}};
    if (!(h == z2))
        bad.push_back("projective plane");
    for (const auto& k : {oracle::hollow_triangle(), oracle::tetrahedron_boundary(), oracle::projective_plane()})
        if (!reduced_homology(cone(k)).trivial())
            bad.push_back("cone not acyclic");

    SeededRng rng(8, "acceptance-euler");
    int euler_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        DeltaComplex k = from_facets(oracle::random_facets(rng, 7, 6, 4));
        if (euler_from_homology(reduced_homology(k), k.empty()) == k.euler_characteristic())
            ++euler_ok;
    }
    if (euler_ok != 100)
        bad.push_back("euler " + std::to_string(euler_ok) + "/100");
    std::string d = bad.empty() ? "S^1, S^2, Z/2 in degree 1, cones acyclic, euler 100/100" : bad.front();
    return {bad.empty(), d};
}

Outcome caution() {
    auto [x, u] = caution_example();
    auto hx = reduced_homology(x), hu = reduced_homology(u);
    bool ok = x.empty() && hx.trivial() && is_homology_sphere(u, 1) && !(hx == hu);
    return {ok, std::string("first ") + (x.empty() ? "empty" : "nonempty") + ", second " +
                    (is_homology_sphere(u, 1) ? "homology S^1" : "not S^1")};
}

} // namespace

int main() {
    bool ok = true;
    ok &= criterion("AC1", "pants-matrix identities", 1.0, pants_identities);
    ok &= criterion("AC2", "commutant suite", 1.0, commutants);
    ok &= criterion("AC3", "coordinate round trip k=4..8", 30.0, fn_round_trip);
    ok &= criterion("AC4", "injectivity evidence", std::nullopt, injectivity);
    ok &= criterion("AC5", "unstable split round trip", 1.0, split_round_trip);
    ok &= criterion("AC6", "genericity examples", std::nullopt, genericity);
    ok &= criterion("AC7", "sphere certificates", 10.0, spheres);
    ok &= criterion("AC8", "homology regressions", 5.0, homology_regressions);
    ok &= criterion("AC9", "caution example", std::nullopt, caution);
    std::printf("overall: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fnsphere/cli.hpp"

using namespace fnsphere;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
    const char* dir = std::getenv("FNSPHERE_SAMPLES");
    return (fs::path(dir ? dir : "samples") / name).string();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fnsphere_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string scratch(const std::string& name, const std::string& contents = {}) {
    fs::path p = scratch_dir() / name;
    if (!contents.empty())
        std::ofstream(p, std::ios::binary) << contents;
    return p.string();
}

std::string slurp(const std::string& path) { return cli::read_file(path); }

} // namespace

TEST_CASE("check-generic", "[cli]") {
    auto ok = run({"check-generic", sample("problem_2357.json")});
    CHECK(ok.code == 0);
    CHECK_THAT(ok.out, ContainsSubstring("[pass] kostov_generic"));
    CHECK_THAT(ok.out, ContainsSubstring("[pass] very_generic"));
    CHECK_THAT(ok.out, ContainsSubstring("overall: pass"));

    auto bad = run({"check-generic", sample("problem_2228.json")});
    CHECK(bad.code == 1);
    CHECK_THAT(bad.out, ContainsSubstring("[FAIL] kostov_generic: eps=(1,1,1,-1) gives product 1"));
    CHECK_THAT(bad.out, ContainsSubstring("overall: fail"));

    auto one = run({"check-generic", scratch("one.json", R"({"classes": ["2", "1", "5", "7"]})")});
    CHECK(one.code == 2);
    CHECK_THAT(one.err, ContainsSubstring("c_2"));
}

TEST_CASE("fn decode and encode round trip through files", "[cli]") {
    std::string rep1 = scratch("rep1.json"), coords = scratch("coords.json"), rep2 = scratch("rep2.json");
    auto dec = run({"fn", "decode", sample("problem_2357.json"), sample("coords_2357.json"), "-o", rep1});
    REQUIRE(dec.code == 0);
    CHECK_THAT(dec.out, ContainsSubstring("[pass] rep_validate"));
    CHECK_THAT(dec.out, ContainsSubstring("[pass] prefix_traces: t2=0"));
    CHECK_THAT(dec.out, ContainsSubstring("[pass] irreducible"));
    CHECK_THAT(slurp(rep1), ContainsSubstring("\"-5/16\""));

    auto enc = run({"fn", "encode", sample("problem_2357.json"), rep1, "-o", coords});
    REQUIRE(enc.code == 0);
    CHECK_THAT(enc.out, ContainsSubstring("[pass] open_stratum"));
    CHECK(io::json::parse(slurp(coords)) == io::json::parse(slurp(sample("coords_2357.json"))));

    REQUIRE(run({"fn", "decode", sample("problem_2357.json"), coords, "-o", rep2}).code == 0);
    CHECK(slurp(rep1) == slurp(rep2));

    std::string coords2 = scratch("coords2.json");
    REQUIRE(run({"fn", "encode", sample("problem_2357.json"), rep2, "-o", coords2}).code == 0);
    CHECK(slurp(coords) == slurp(coords2));
}

TEST_CASE("fn decode rejects invalid coordinates", "[cli]") {
    auto r = run({"fn", "decode", sample("problem_2357.json"),
                  scratch("t2.json", R"({"coords": [{"t": "2", "p": "1", "q": "0"}]})")});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("QPoint invariant violated"));

    auto count = run({"fn", "decode", sample("problem_primes8.json"), sample("coords_2357.json")});
    CHECK(count.code == 2);
    CHECK_THAT(count.err, ContainsSubstring("expected 5 coordinates"));
}

TEST_CASE("fn encode reports tuples outside the open stratum", "[cli]") {
    auto r = run({"fn", "encode", sample("problem_2357.json"), sample("unstable_rep_2357.json")});
    CHECK(r.code == 1);
    CHECK_THAT(r.out, ContainsSubstring("[pass] rep_validate"));
    CHECK_THAT(r.out, ContainsSubstring("[FAIL] open_stratum: pants 2 unstable"));

    auto invalid = run({"fn", "encode", sample("problem_2228.json"), sample("unstable_rep_2357.json")});
    CHECK(invalid.code == 1);
    CHECK_THAT(invalid.out, ContainsSubstring("[FAIL] rep_validate: trace mismatch at 2"));
}

TEST_CASE("roundtrip", "[cli]") {
    auto r = run({"roundtrip", sample("problem_2357.json"), "--seed", "1", "--trials", "100"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("[pass] roundtrip: 100/100"));

    auto big = run({"roundtrip", sample("problem_primes8.json"), "--trials", "25", "--height", "6"});
    CHECK(big.code == 0);
    CHECK_THAT(big.out, ContainsSubstring("[pass] roundtrip: 25/25"));

    CHECK(run({"roundtrip", sample("problem_2357.json"), "--trials", "0"}).code == 2);
    CHECK(run({"roundtrip", sample("problem_2357.json")}).code == 2);
    auto nongeneric = run({"roundtrip", sample("problem_2228.json"), "--trials", "3"});
    CHECK(nongeneric.code == 2);
    CHECK_THAT(nongeneric.err, ContainsSubstring("not very generic"));
}

TEST_CASE("homology", "[cli]") {
    auto q = run({"homology", "--model", "q"});
    CHECK(q.code == 0);
    CHECK_THAT(q.out, ContainsSubstring("cells: 2 2"));
    CHECK_THAT(q.out, ContainsSubstring("[pass] homology_sphere S^1"));

    auto s = run({"homology", "--model", "sphere-check", "--k", "5"});
    CHECK(s.code == 0);
    CHECK_THAT(s.out, ContainsSubstring("[pass] homology_sphere S^3"));

    std::string out = scratch("tri_h.json");
    auto tri = run({"homology", sample("hollow_triangle.json"), "-o", out});
    CHECK(tri.code == 0);
    CHECK_THAT(tri.out, ContainsSubstring(R"("dim":1,"rank":1)"));
    CHECK_THAT(tri.out, ContainsSubstring("[pass] euler_characteristic: 0"));
    CHECK(io::json::parse(slurp(out)) == io::json::parse(R"({"reduced":[{"dim":1,"rank":1,"torsion":[]}]})"));

    auto rp2 = run({"homology", sample("projective_plane.json")});
    CHECK(rp2.code == 0);
    CHECK_THAT(rp2.out, ContainsSubstring(R"({"dim":1,"rank":0,"torsion":[2]})"));

    auto bad = run({"homology", sample("bad_boundary.json")});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("boundary of boundary"));

    CHECK(run({"homology"}).code == 2);
    CHECK(run({"homology", "--model", "sphere-check"}).code == 2);
    CHECK(run({"homology", "--model", "torus"}).code == 2);
}

TEST_CASE("stratify", "[cli]") {
    std::string rep = scratch("strat_rep.json");
    REQUIRE(run({"fn", "decode", sample("problem_2357.json"), sample("coords_2357.json"), "-o", rep}).code == 0);
    auto yes = run({"stratify", sample("problem_2357.json"), rep});
    CHECK(yes.code == 0);
    CHECK_THAT(yes.out, ContainsSubstring("M-prime: yes"));

    auto no = run({"stratify", sample("problem_2357.json"), sample("unstable_rep_2357.json")});
    CHECK(no.code == 0);
    CHECK_THAT(no.out, ContainsSubstring("M-prime: no"));
    CHECK_THAT(no.out, ContainsSubstring("unstable"));

    auto cancel = run({"stratify", sample("problem_2233.json"), sample("cancel_rep_2233.json")});
    CHECK(cancel.code == 0);
    CHECK_THAT(cancel.out, ContainsSubstring(R"("gclass":["central_plus"])"));
    CHECK_THAT(cancel.out, ContainsSubstring("M-prime: no"));

    auto invalid = run({"stratify", sample("problem_2357.json"), sample("cancel_rep_2233.json")});
    CHECK(invalid.code == 1);
    CHECK_THAT(invalid.out, ContainsSubstring("invalid: trace mismatch at 2"));

    auto matrix = run({"stratify", sample("problem_2357.json"),
                       scratch("bad_matrix.json", R"({"matrices": [[["1", "0"], ["0"]]]})")});
    CHECK(matrix.code == 2);
    CHECK_THAT(matrix.err, ContainsSubstring("2x2 matrix"));
}

TEST_CASE("malformed input", "[cli]") {
    auto r = run({"check-generic", scratch("broken.json", "{\"classes\": [\"2\", ")});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("malformed JSON"));
    CHECK(run({"check-generic", scratch("missing.json", "{}")}).code == 2);
    CHECK(run({"check-generic", scratch("float.json", R"({"classes": [2.5, "3", "5", "7"]})")}).code == 2);
    CHECK(run({"check-generic", (scratch_dir() / "absent.json").string()}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("output is byte deterministic", "[cli]") {
    std::vector<std::string> args{"roundtrip", sample("problem_2357.json"), "--seed", "7", "--trials", "10"};
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    std::vector<std::string> dec{"fn", "decode", sample("problem_2357.json"), sample("coords_2357.json")};
    CHECK(run(dec).out == run(dec).out);
}

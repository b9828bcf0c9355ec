#pragma once

// Command implementations for the fnsphere tool. `run` is the whole CLI and
// is callable in-process, which is how the tests drive it.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 bad input.

#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fnsphere/charvar.hpp"
#include "fnsphere/dual_complex.hpp"
#include "fnsphere/fenchel_nielsen.hpp"
#include "fnsphere/json_io.hpp"
#include "fnsphere/report.hpp"

namespace fnsphere::cli {

class InputError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline io::json parse_json(const std::string& bytes, const std::string& path) {
    try {
        return io::json::parse(bytes);
    } catch (const io::json::parse_error& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
}

inline void write_file(const std::string& path, const io::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

// Loads and converts a JSON input; conversion failures are input errors.
template <class F>
auto load(Report& report, const std::string& path, F convert) {
    std::string bytes = read_file(path);
    report.add_input(bytes);
    io::json j = parse_json(bytes, path);
    try {
        return convert(j);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    } catch (const io::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline std::string signs_to_string(const std::vector<int>& signs) {
    std::string out = "(";
    for (std::size_t i = 0; i < signs.size(); ++i)
        out += (i ? "," : "") + std::to_string(signs[i]);
    return out + ")";
}

// ---------------------------------------------------------------------------

inline Report check_generic(const std::string& command, const std::string& problem_path) {
    Report report(command);
    Problem problem = load(report, problem_path, io::problem_from_json);
    if (auto v = kostov_violation(problem.classes()))
        report.check("kostov_generic", false, "eps=" + signs_to_string(*v) + " gives product 1");
    else
        report.check("kostov_generic", true);
    if (auto v = very_generic_violation(problem.classes())) {
        std::string range = (v->first == 1 ? "prefix c_1..c_" + std::to_string(v->last)
                                           : "suffix c_" + std::to_string(v->first) + "..c_" + std::to_string(v->last));
        report.check("very_generic", false, range + " eps=" + signs_to_string(v->signs) + " gives product " +
                                                v->product.to_string());
    } else {
        report.check("very_generic", true);
    }
    return report;
}

/// Postcondition checks of a decoded tuple.
inline void check_decoded(Report& report, const RepTuple& rep, const FNCoords& coords, const Problem& problem) {
    auto issues = rep_issues(rep, problem);
    report.check("rep_validate", issues.empty(), issues.empty() ? "" : issues.front().reason);
    report.check("product_identity", product(rep.matrices) == Mat2::identity(), product(rep.matrices).to_string());

    bool traces_ok = true;
    std::string traces;
    for (std::size_t i = 2; i + 2 <= problem.k(); ++i) {
        Scalar t = circle_trace(rep, i);
        traces_ok = traces_ok && t == coords.points[i - 2].t();
        traces += (traces.empty() ? "" : " ") + ("t" + std::to_string(i) + "=" + t.to_string());
    }
    report.check("prefix_traces", traces_ok, traces);

    if (issues.empty()) {
        StratumDatum s = classify_stratum(rep, problem);
        bool stable = std::all_of(s.stable.begin(), s.stable.end(), [](bool b) { return b; });
        bool regular = std::all_of(s.gclass.begin(), s.gclass.end(),
                                   [](const auto& g) { return g.tag == MonodromyClass::Tag::regular; });
        report.check("pants_stable", stable, io::to_json(s)["sigma"].dump());
        report.check("interior_regular", regular, io::to_json(s)["gclass"].dump());
    }
    report.check("irreducible", is_irreducible(rep));
}

inline Report fn_decode_cmd(const std::string& command, const std::string& problem_path,
                            const std::string& coords_path, const std::string& output) {
    Report report(command);
    Problem problem = load(report, problem_path, io::problem_from_json);
    FNCoords coords = load(report, coords_path, io::coords_from_json);
    RepTuple rep;
    try {
        rep = fn_decode(coords, problem);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    check_decoded(report, rep, coords, problem);
    if (!output.empty()) {
        write_file(output, io::to_json(rep));
        report.note("output: " + output);
    } else {
        report.note("rep: " + io::to_json(rep).dump());
    }
    return report;
}

inline Report fn_encode_cmd(const std::string& command, const std::string& problem_path,
                            const std::string& rep_path, const std::string& output) {
    Report report(command);
    Problem problem = load(report, problem_path, io::problem_from_json);
    RepTuple rep = load(report, rep_path, io::rep_from_json);
    auto issues = rep_issues(rep, problem);
    report.check("rep_validate", issues.empty(), issues.empty() ? "" : issues.front().reason);
    if (!issues.empty())
        return report;
    StratumDatum s = classify_stratum(rep, problem);
    report.note("stratum: " + io::to_json(s).dump());
    try {
        FNCoords coords = fn_encode(rep, problem);
        report.check("open_stratum", true);
        report.check("recovered_coords", true, io::to_json(coords)["coords"].dump());
        if (!output.empty()) {
            write_file(output, io::to_json(coords));
            report.note("output: " + output);
        }
    } catch (const StratumError& e) {
        report.check("open_stratum", false, e.what());
    }
    return report;
}

/// Seed of trial j for a roundtrip run with base seed s.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed * 1000003ULL + trial; }

/// A nonsingular matrix with small rational entries, used to move a tuple
/// away from its decode frame.
inline Mat2 random_conjugator(SeededRng& rng) {
    while (true) {
        Mat2 g(rng.rational(5), rng.rational(5), rng.rational(5), rng.rational(5));
        if (!g.det().is_zero())
            return g;
    }
}

/// One decode -> validate -> encode -> compare trial. Empty on success,
/// otherwise the reason.
inline std::optional<std::string> roundtrip_trial(const Problem& problem, std::uint64_t seed, std::int64_t height) {
    FNCoords x = sample_fn(problem, seed, height);
    RepTuple r = fn_decode(x, problem);
    Report scratch("");
    check_decoded(scratch, r, x, problem);
    for (const auto& c : scratch.checks())
        if (!c.pass)
            return "decode postcondition " + c.name + " failed";
    if (fn_encode(r, problem) != x)
        return "encode(decode(x)) != x";

    SeededRng rng(seed, "conjugator");
    RepTuple moved = conjugate(r, random_conjugator(rng));
    FNCoords y = fn_encode(moved, problem);
    if (y != x)
        return "encode is not conjugation invariant";
    RepTuple back = fn_decode(y, problem);
    auto g = find_conjugator(back, moved);
    if (!g)
        return "decode(encode(r)) not conjugate to r";
    if (conjugate(back, g->rep()) != moved)
        return "conjugator witness does not verify";
    return std::nullopt;
}

inline Report roundtrip_cmd(const std::string& command, const std::string& problem_path, std::uint64_t seed,
                            long long trials, long long height) {
    Report report(command);
    if (trials < 1)
        throw InputError("--trials must be >= 1");
    if (height < 1)
        throw InputError("--height must be >= 1");
    Problem problem = load(report, problem_path, io::problem_from_json);
    if (auto v = very_generic_violation(problem.classes()))
        throw InputError(problem_path + ": classes are not very generic");

    long long passed = 0;
    std::string first_failure;
    for (long long j = 0; j < trials; ++j) {
        std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(j));
        std::optional<std::string> failure;
        try {
            failure = roundtrip_trial(problem, s, height);
        } catch (const Error& e) {
            failure = e.what();
        }
        if (!failure)
            ++passed;
        else if (first_failure.empty())
            first_failure = "seed " + std::to_string(seed) + " trial " + std::to_string(j) + ": " + *failure;
    }
    report.check("roundtrip", passed == trials,
                 std::to_string(passed) + "/" + std::to_string(trials) +
                     (first_failure.empty() ? "" : "; first failure " + first_failure));
    return report;
}

inline std::string cell_counts(const DeltaComplex& k) {
    std::string out;
    for (std::size_t d = 0; d < k.all_cells().size(); ++d)
        out += (d ? " " : "") + std::to_string(k.count(d));
    return out.empty() ? "(empty)" : out;
}

inline Report homology_cmd(const std::string& command, const std::string& complex_path, const std::string& model,
                           int k) {
    Report report(command);
    DeltaComplex complex;
    std::optional<int> sphere_dim;
    if (!complex_path.empty()) {
        if (!model.empty())
            throw InputError("give either a complex file or --model, not both");
        complex = load(report, complex_path, io::complex_from_json);
    } else if (model == "q") {
        complex = q_boundary_model();
        sphere_dim = 1;
    } else if (model == "sphere-check") {
        if (k < 4)
            throw InputError("--model sphere-check needs --k >= 4");
        complex = mprime_boundary_model(k);
        sphere_dim = 2 * (k - 3) - 1;
    } else {
        throw InputError("need a complex file or --model q|sphere-check");
    }
    HomologyProfile h = reduced_homology(complex);
    report.note("cells: " + cell_counts(complex));
    report.note("homology: " + io::to_json(h).dump());
    report.check("euler_characteristic", complex.euler_characteristic() == euler_from_homology(h, complex.empty()),
                 std::to_string(complex.euler_characteristic()));
    if (sphere_dim)
        report.check("homology_sphere S^" + std::to_string(*sphere_dim), is_homology_sphere(complex, *sphere_dim));
    return report;
}

inline Report stratify_cmd(const std::string& command, const std::string& problem_path, const std::string& rep_path) {
    Report report(command);
    Problem problem = load(report, problem_path, io::problem_from_json);
    RepTuple rep = load(report, rep_path, io::rep_from_json);
    auto issues = rep_issues(rep, problem);
    for (const auto& is : issues)
        report.note("invalid: " + is.reason);
    report.check("rep_validate", issues.empty(), issues.empty() ? "" : issues.front().reason);
    if (!issues.empty())
        return report;
    StratumDatum s = classify_stratum(rep, problem);
    report.note("stratum: " + io::to_json(s).dump());
    report.note(std::string("M-prime: ") + (s.in_open_stratum() ? "yes" : "no"));
    return report;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Fenchel-Nielsen coordinates and boundary-complex homology for SL2 character varieties"};
    app.name("fnsphere");
    app.require_subcommand(1);

    std::string problem_path, second_path, output, model;
    std::uint64_t seed = 1;
    long long trials = 0, height = 10;
    int k = 0;

    auto* generic = app.add_subcommand("check-generic", "Kostov and very-generic conditions on the classes");
    generic->add_option("problem", problem_path, "problem JSON")->required();

    auto* fn = app.add_subcommand("fn", "Fenchel-Nielsen decode / encode");
    fn->require_subcommand(1);
    auto* decode = fn->add_subcommand("decode", "coordinates -> monodromy tuple");
    decode->add_option("problem", problem_path, "problem JSON")->required();
    decode->add_option("coords", second_path, "coordinates JSON")->required();
    decode->add_option("-o,--output", output, "write the tuple here");
    auto* encode = fn->add_subcommand("encode", "monodromy tuple -> coordinates");
    encode->add_option("problem", problem_path, "problem JSON")->required();
    encode->add_option("rep", second_path, "tuple JSON")->required();
    encode->add_option("-o,--output", output, "write the coordinates here");

    auto* roundtrip = app.add_subcommand("roundtrip", "seeded decode/encode property run");
    roundtrip->add_option("problem", problem_path, "problem JSON")->required();
    roundtrip->add_option("--seed", seed, "base seed")->capture_default_str();
    roundtrip->add_option("--trials", trials, "number of trials")->required();
    roundtrip->add_option("--height", height, "bound on numerators/denominators")->capture_default_str();

    auto* homology = app.add_subcommand("homology", "reduced integer homology of a complex or built-in model");
    homology->add_option("complex", second_path, "complex JSON");
    homology->add_option("--model", model, "q | sphere-check");
    homology->add_option("--k", k, "number of punctures for sphere-check");
    homology->add_option("-o,--output", output, "write the homology JSON here");

    auto* stratify = app.add_subcommand("stratify", "stratum datum of a tuple");
    stratify->add_option("problem", problem_path, "problem JSON")->required();
    stratify->add_option("rep", second_path, "tuple JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string command = "fnsphere";
    for (const auto& a : args)
        command += " " + a;

    try {
        std::optional<Report> report;
        if (generic->parsed()) {
            report = check_generic(command, problem_path);
        } else if (decode->parsed()) {
            report = fn_decode_cmd(command, problem_path, second_path, output);
        } else if (encode->parsed()) {
            report = fn_encode_cmd(command, problem_path, second_path, output);
        } else if (roundtrip->parsed()) {
            report = roundtrip_cmd(command, problem_path, seed, trials, height);
        } else if (homology->parsed()) {
            report = homology_cmd(command, second_path, model, k);
            if (!output.empty()) {
                DeltaComplex c = second_path.empty()
                                     ? (model == "q" ? q_boundary_model() : mprime_boundary_model(k))
                                     : io::complex_from_json(parse_json(read_file(second_path), second_path));
                write_file(output, io::to_json(reduced_homology(c)));
            }
        } else if (stratify->parsed()) {
            report = stratify_cmd(command, problem_path, second_path);
        }
        out << report->render();
        return report->pass() ? 0 : 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace fnsphere::cli

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "fnsphere/sampling.hpp"

namespace fnsphere {

/// Outcome of one CLI command: named checks with exact witnesses plus free
/// informational lines. Rendering is byte-deterministic.
class Report {
public:
    struct Check {
        std::string name;
        bool pass;
        std::string witness;
    };

    explicit Report(std::string command) : command_(std::move(command)) {}

    void add_input(const std::string& bytes) { digest_input_ += bytes; digest_input_.push_back('\0'); }
    void check(std::string name, bool pass, std::string witness = {}) {
        checks_.push_back({std::move(name), pass, std::move(witness)});
    }
    void note(std::string line) { notes_.push_back(std::move(line)); }

    bool pass() const {
        for (const auto& c : checks_)
            if (!c.pass)
                return false;
        return true;
    }

    const std::vector<Check>& checks() const { return checks_; }

    std::string render() const {
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(SeededRng::fnv1a(digest_input_)));
        std::string out = "command: " + command_ + "\n";
        out += "inputs: fnv1a64=" + std::string(digest) + "\n";
        for (const auto& n : notes_)
            out += n + "\n";
        for (const auto& c : checks_) {
            out += std::string(c.pass ? "[pass] " : "[FAIL] ") + c.name;
            if (!c.witness.empty())
                out += ": " + c.witness;
            out += "\n";
        }
        out += std::string("overall: ") + (pass() ? "pass" : "fail") + "\n";
        return out;
    }

private:
    std::string command_;
    std::string digest_input_;
    std::vector<Check> checks_;
    std::vector<std::string> notes_;
};

} // namespace fnsphere

#pragma once

// Command-line front end. Every subcommand produces a Report; the report is
// rendered as a text table, JSON or CSV. Exit codes:
//   0 certified, 1 mismatch, 2 inconclusive, 3 usage error.

#include "freefft/hopf.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace freefft::cli {

enum ExitCode : int { Certified = 0, Mismatch = 1, Inconclusive = 2, UsageError = 3 };

/// Bad arguments, malformed or singular F.
class UsageFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "preset:identity", "preset:diag:1,2", "preset:jordan" or "file:path";
/// the file holds a t x t JSON array of rational strings.
FMatrix parse_f(const std::string& spec, int t);
FMatrix parse_f_json(const std::string& text, int t);

struct Case {
    std::string label;
    int i = 0;
    int j = 0;
    std::size_t dim_coinv = 0;
    std::size_t dim_theta = 0;
    bool certified = false;
    int witness_degree = 0;
    std::int64_t millis = 0;
    std::string status = "certified"; // or "inconclusive", "mismatch"
    std::string note;
};

struct Report {
    std::string command;
    int m = 1;
    int n = 1;
    int t = 1;
    std::string f;      // JSON text of F
    std::optional<int> k;
    std::string d;      // number or "auto"
    std::uint64_t seed = 0;
    std::vector<Case> cases;

    std::string status() const;
    int exit_code() const;
    std::string to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// args[0] is the program name.
RunResult run(const std::vector<std::string>& args);
int main(int argc, char** argv);

} // namespace freefft::cli

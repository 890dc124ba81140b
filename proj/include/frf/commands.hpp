#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "frf/coefficients.hpp"
#include "frf/export.hpp"
#include "frf/series.hpp"

namespace frf {

// One CLI invocation.  Identical configs (including seed) must render
// byte-identical output at any thread count, so `threads` and `out`
// never appear in emitted metadata.
struct RunConfig {
    std::string command;  // eval | alpha | holder | boxdim | table | report

    std::string source = "moebius";  // const|moebius|liouville|random|custom:<path>
    int k = 1;
    double p = 1.0;
    // Weierstrass family when both are set.
    double a = std::numeric_limits<double>::quiet_NaN();
    std::int64_t b = 0;
    std::string alpha;  // "", numeric, "grh", "conj", "trivial"
    double alpha_constant = 1.0;

    std::int64_t samples = std::int64_t{1} << 14;
    std::string scales = "4:10";    // box-count levels, r = 2^-j
    std::string h_ladder = "4:12";  // increment steps, h = 2^-j
    std::string x_ladder = "10:20";  // growth rungs, x = 2^j
    std::int64_t t_grid = 512;
    std::uint64_t seed = 1;
    std::int64_t sieve_limit = 10000000;
    double accuracy = 0.01;
    double slack = 0.1;

    int threads = 1;
    std::string out;  // empty -> stdout
    std::string format = "csv";
};

void validate_config(const RunConfig& config);

CoefficientSource make_source(const RunConfig& config);

// Rendered file content (CSV, or SVG for `eval --format svg`).
std::string cmd_eval(const RunConfig& config);
std::string cmd_alpha(const RunConfig& config);
std::string cmd_holder(const RunConfig& config);
std::string cmd_boxdim(const RunConfig& config);
std::string cmd_table(const RunConfig& config);
std::string cmd_report(const RunConfig& config);

std::string run_command(const RunConfig& config);

// Runs a command, writes the result to config.out (or stdout), prints
// library errors to stderr, and maps them to the documented exit codes:
// 0 ok, 2 argument/contract, 3 resource, 4 degenerate data or numeric,
// 5 I/O.
int execute(const RunConfig& config);

}  // namespace frf

#pragma once

#include "tqk/serialize.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tqk {

struct RunConfig {
    std::string command;
    i64 a = 2, b = 3;
    std::optional<i64> k;
    std::optional<i64> k_min, k_max;
    i64 k_factor = 2;
    unsigned precision = 16;
    std::string format = "json";
    std::string out;  // empty: stdout
    std::uint64_t seed = 0;
    std::string suite = "all";
    std::optional<i64> ell;
    double q = 0.13;
    double t_frac = 0.5;
    std::string plot_script;

    // Checks every field; throws Error naming the offending one.
    void validate() const;
    // Explicit k, else the dyadic ladder, else the given default.
    std::vector<i64> levels(const std::vector<i64>& fallback) const;
    json echo() const;
};

int cmd_jones(const RunConfig& cfg, std::ostream& out);
int cmd_charvar(const RunConfig& cfg, std::ostream& out);
int cmd_gamma(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

// Full front end: parses argv, runs the command, maps errors to exit codes
// (0 pass, 2 check failure, 1 usage error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tqk

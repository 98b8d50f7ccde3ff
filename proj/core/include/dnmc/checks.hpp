#ifndef DNMC_CHECKS_HPP
#define DNMC_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dnmc {

/// Outcome of one seeded property suite. Expected law violations (the
/// negative controls) count as passes; `failures` counts only unexpected
/// outcomes.
struct SuiteReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

struct CheckReport {
    std::vector<SuiteReport> suites;
    bool pass() const;
};

const std::vector<std::string>& check_suite_names();

/// Runs one suite by name, or every suite for "all". Unknown names throw.
CheckReport run_checks(const std::string& suite, std::uint64_t seed);

std::string render_text(const CheckReport& report);
std::string render_machine(const CheckReport& report);

} // namespace dnmc

#endif // DNMC_CHECKS_HPP

// SPDX-License-Identifier: MIT
#pragma once

#include "report.hpp"

#include "stackel/catalog.hpp"
#include "stackel/tolerances.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stackel::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

/// A malformed or incomplete job description; `field` names the offending flag.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class Format { report, csv };

struct JobConfig {
    std::string command;
    std::optional<Mat3> c;
    std::optional<int> family;
    /// name -> sampled values; single-valued outside `sweep`
    std::vector<std::pair<std::string, std::vector<double>>> params;
    double lambda = 0.0;
    std::optional<int> xi;
    SignTriple signs;
    std::optional<std::array<double, 2>> tau;
    std::size_t points = 50;
    bool finite_difference = false;
    Tolerances tolerances = kDefaultTolerances;
    std::string output_path;
    Format format = Format::report;

    /// Command-specific presence rules, points >= 10, positive tolerances.
    void validate() const;

    [[nodiscard]] ParamMap single_params() const;
    [[nodiscard]] nlohmann::json echo() const;
};

// Flag value parsers; each throws ConfigError naming its flag.
Mat3 parse_matrix(const std::string& text);
std::array<double, 2> parse_tau(const std::string& text);
SignTriple parse_signs(const std::string& text);
/// "k=v,k2=v2". Values are numbers, optionally with a pi factor ("pi/3",
/// "2pi/3"), lists "v1|v2|v3", or ranges "lo:hi:n" (n equally spaced points).
std::vector<std::pair<std::string, std::vector<double>>> parse_params(const std::string& text);
double parse_value(const std::string& text, const std::string& field);

/// Parse argv into a JobConfig. Returns nullopt when only help was requested.
std::optional<JobConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Execute a validated job. Math-layer errors propagate as stackel::Error.
RunReport run(const JobConfig& config);

/// CSV table for sweep reports, with a trailing "worst" summary row.
std::string sweep_csv(const RunReport& report, const JobConfig& config);

/// Full front-end: parse, run, write output, map outcome to an exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stackel::cli

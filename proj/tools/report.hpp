// SPDX-License-Identifier: MIT
#pragma once

// Machine-readable run report. Field names are documented in
// docs/report-schema.md and are part of the tool's interface.

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stackel::cli {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    bool operator==(const Check&) const = default;
};

struct CanonicalSummary {
    std::string variant;
    std::map<std::string, double> params;
    Matrix3 transform{};
    Matrix3 structure{};
    double trace = 0.0;

    bool operator==(const CanonicalSummary&) const = default;
};

struct FailedPoint {
    double tau = 0.0;
    std::string message;

    bool operator==(const FailedPoint&) const = default;
};

struct ResidualTable {
    std::vector<double> tau;
    std::vector<double> per_point_max;
    std::vector<double> scalar_dev;
    std::vector<FailedPoint> failures;

    bool operator==(const ResidualTable&) const = default;
};

struct SweepRow {
    std::size_t index = 0;
    std::map<std::string, double> params;
    std::optional<int> epsilon;
    std::optional<double> p;
    std::optional<double> lambda_cosmo;
    std::optional<double> residual_max;
    std::optional<double> ricci_scalar_dev;
    std::string verdict;
    std::string error;

    bool operator==(const SweepRow&) const = default;
};

struct LedgerEntry {
    std::string id;
    std::string location;
    std::string printed;
    std::string resolution;
    std::string evidence;
    double printed_residual = 0.0;
    double resolved_residual = 0.0;
    bool confirmed = false;

    bool operator==(const LedgerEntry&) const = default;
};

struct RunReport {
    int schema_version = 1;
    std::string command;
    nlohmann::json config = nlohmann::json::object();

    std::optional<std::string> variant;
    std::optional<int> epsilon;
    std::optional<double> p;
    std::optional<double> lambda_cosmo;
    std::optional<int> xi;
    std::optional<int> family;
    std::optional<CanonicalSummary> canonical;

    std::optional<double> residual_max;
    std::optional<double> ricci_scalar_dev;
    std::optional<ResidualTable> residuals;

    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::vector<LedgerEntry> discrepancies;
    nlohmann::json families = nlohmann::json::array();
    std::vector<SweepRow> rows;

    std::string verdict = "pass";
    double wall_time_s = 0.0;

    bool operator==(const RunReport&) const = default;

    /// Recompute `verdict` from the checks (and sweep rows).
    void finalise();
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

}  // namespace stackel::cli

// SPDX-License-Identifier: MIT
#include "report.hpp"

#include <algorithm>

namespace stackel::cli {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json to_json(const Check& c) {
    return {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

Check check_from(const json& j) {
    return {j.at("name").get<std::string>(), j.at("value").get<double>(),
            j.at("tolerance").get<double>(), j.at("pass").get<bool>()};
}

json to_json(const CanonicalSummary& c) {
    return {{"variant", c.variant},     {"params", c.params}, {"transform", c.transform},
            {"structure", c.structure}, {"trace", c.trace}};
}

CanonicalSummary canonical_from(const json& j) {
    CanonicalSummary c;
    c.variant = j.at("variant").get<std::string>();
    c.params = j.at("params").get<std::map<std::string, double>>();
    c.transform = j.at("transform").get<Matrix3>();
    c.structure = j.at("structure").get<Matrix3>();
    c.trace = j.at("trace").get<double>();
    return c;
}

json to_json(const ResidualTable& t) {
    json failures = json::array();
    for (const auto& f : t.failures) failures.push_back({{"tau", f.tau}, {"message", f.message}});
    return {{"tau", t.tau},
            {"per_point_max", t.per_point_max},
            {"scalar_dev", t.scalar_dev},
            {"failures", failures}};
}

ResidualTable table_from(const json& j) {
    ResidualTable t;
    t.tau = j.at("tau").get<std::vector<double>>();
    t.per_point_max = j.at("per_point_max").get<std::vector<double>>();
    t.scalar_dev = j.at("scalar_dev").get<std::vector<double>>();
    for (const auto& f : j.at("failures")) {
        t.failures.push_back({f.at("tau").get<double>(), f.at("message").get<std::string>()});
    }
    return t;
}

json to_json(const SweepRow& r) {
    return {{"index", r.index},
            {"params", r.params},
            {"epsilon", opt(r.epsilon)},
            {"p", opt(r.p)},
            {"lambda_cosmo", opt(r.lambda_cosmo)},
            {"residual_max", opt(r.residual_max)},
            {"ricci_scalar_dev", opt(r.ricci_scalar_dev)},
            {"verdict", r.verdict},
            {"error", r.error}};
}

SweepRow row_from(const json& j) {
    SweepRow r;
    r.index = j.at("index").get<std::size_t>();
    r.params = j.at("params").get<std::map<std::string, double>>();
    r.epsilon = get_opt<int>(j, "epsilon");
    r.p = get_opt<double>(j, "p");
    r.lambda_cosmo = get_opt<double>(j, "lambda_cosmo");
    r.residual_max = get_opt<double>(j, "residual_max");
    r.ricci_scalar_dev = get_opt<double>(j, "ricci_scalar_dev");
    r.verdict = j.at("verdict").get<std::string>();
    r.error = j.at("error").get<std::string>();
    return r;
}

json to_json(const LedgerEntry& e) {
    return {{"id", e.id},
            {"location", e.location},
            {"printed", e.printed},
            {"resolution", e.resolution},
            {"evidence", e.evidence},
            {"printed_residual", e.printed_residual},
            {"resolved_residual", e.resolved_residual},
            {"confirmed", e.confirmed}};
}

LedgerEntry entry_from(const json& j) {
    return {j.at("id").get<std::string>(),
            j.at("location").get<std::string>(),
            j.at("printed").get<std::string>(),
            j.at("resolution").get<std::string>(),
            j.at("evidence").get<std::string>(),
            j.at("printed_residual").get<double>(),
            j.at("resolved_residual").get<double>(),
            j.at("confirmed").get<bool>()};
}

}  // namespace

void RunReport::finalise() {
    const bool checks_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    const bool rows_ok =
        std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.verdict == "pass"; });
    verdict = checks_ok && rows_ok ? "pass" : "fail";
}

json to_json(const RunReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    json ledger = json::array();
    for (const auto& e : r.discrepancies) ledger.push_back(to_json(e));

    return {{"schema_version", r.schema_version},
            {"command", r.command},
            {"config", r.config},
            {"variant", opt(r.variant)},
            {"epsilon", opt(r.epsilon)},
            {"p", opt(r.p)},
            {"lambda_cosmo", opt(r.lambda_cosmo)},
            {"xi", opt(r.xi)},
            {"family", opt(r.family)},
            {"canonical", r.canonical ? to_json(*r.canonical) : json(nullptr)},
            {"residual_max", opt(r.residual_max)},
            {"ricci_scalar_dev", opt(r.ricci_scalar_dev)},
            {"residuals", r.residuals ? to_json(*r.residuals) : json(nullptr)},
            {"checks", checks},
            {"notes", r.notes},
            {"discrepancies", ledger},
            {"families", r.families},
            {"rows", rows},
            {"verdict", r.verdict},
            {"wall_time_s", r.wall_time_s}};
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.variant = get_opt<std::string>(j, "variant");
    r.epsilon = get_opt<int>(j, "epsilon");
    r.p = get_opt<double>(j, "p");
    r.lambda_cosmo = get_opt<double>(j, "lambda_cosmo");
    r.xi = get_opt<int>(j, "xi");
    r.family = get_opt<int>(j, "family");
    if (!j.at("canonical").is_null()) r.canonical = canonical_from(j.at("canonical"));
    r.residual_max = get_opt<double>(j, "residual_max");
    r.ricci_scalar_dev = get_opt<double>(j, "ricci_scalar_dev");
    if (!j.at("residuals").is_null()) r.residuals = table_from(j.at("residuals"));
    for (const auto& c : j.at("checks")) r.checks.push_back(check_from(c));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& e : j.at("discrepancies")) r.discrepancies.push_back(entry_from(e));
    r.families = j.at("families");
    for (const auto& row : j.at("rows")) r.rows.push_back(row_from(row));
    r.verdict = j.at("verdict").get<std::string>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

}  // namespace stackel::cli

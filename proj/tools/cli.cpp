// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include "stackel/discrepancy.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

namespace stackel::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands{"classify", "solve", "verify", "catalog", "sweep", "discrepancies"};

// Flags each command accepts beyond --out.
const std::map<std::string, std::set<std::string>> kAllowed{
    {"classify", {"c", "xi", "signs", "lambda", "format"}},
    {"solve", {"c", "xi", "signs", "lambda", "tau", "points", "tol", "format"}},
    {"verify", {"c", "family", "params", "xi", "signs", "lambda", "tau", "points", "tol", "fd", "format"}},
    {"catalog", {"family", "params", "signs", "lambda", "format"}},
    {"sweep", {"family", "params", "signs", "lambda", "tau", "points", "tol", "fd", "format"}},
    {"discrepancies", {"format"}},
};

Matrix3 to_array(const Mat3& m) {
    Matrix3 a{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
    }
    return a;
}

std::map<std::string, double> params_of(const CanonicalParams& p) {
    if (const auto* d = std::get_if<DiagonalParams>(&p)) {
        return {{"a1", d->a1}, {"a2", d->a2}, {"a3", d->a3}};
    }
    if (const auto* r = std::get_if<RotationParams>(&p)) {
        return {{"c", r->c}, {"angle", r->angle}, {"modulus", r->modulus}, {"sense", r->sense}};
    }
    const auto& j = std::get<JordanParams>(p);
    return {{"c1", j.c1}, {"a", j.a}, {"coupling", j.coupling}};
}

CanonicalSummary summarise(const CanonicalClass& cls) {
    return {to_string(cls.variant), params_of(cls.params), to_array(cls.transform),
            to_array(cls.original), cls.trace};
}

Check check(std::string name, double value, double tol) {
    return {std::move(name), value, tol, value <= tol};
}

int default_xi(int epsilon) { return epsilon == -1 ? -1 : 1; }

struct Pipeline {
    CanonicalClass cls;
    SpatialSolution eta;
    PhiSolution phi;
};

Pipeline pipeline_from_matrix(const JobConfig& cfg) {
    const CanonicalClass cls = classify(StructureMatrix(*cfg.c));
    SpatialSolution eta = solve_eta_original(cls, cfg.signs);
    const int xi = cfg.xi.value_or(default_xi(cls.epsilon));
    PhiSolution phi(cls.epsilon, xi, cls.p);
    return {cls, std::move(eta), std::move(phi)};
}

TauGrid grid_for(const JobConfig& cfg, const PhiSolution& phi, const TauDomain& domain) {
    if (!cfg.tau) return domain.grid(cfg.points);
    const auto [a, b] = *cfg.tau;
    const std::vector<double> singular = phi.singular_points(a - 1.0, b + 1.0);
    return TauGrid::uniform(a, b, cfg.points, singular, domain.margin);
}

void fill_metric_fields(RunReport& r, const AssembledMetric& m) {
    r.variant = to_string(m.canonical_class().variant);
    r.epsilon = m.phi().epsilon();
    r.p = m.phi().p();
    r.xi = m.phi().xi();
    r.lambda_cosmo = m.cosmological_constant();
    r.canonical = summarise(m.canonical_class());
}

void residual_checks(RunReport& r, const JobConfig& cfg, const AssembledMetric& m,
                     const TauGrid& grid, const std::optional<Mat3>& reference) {
    const RicciPath path = cfg.finite_difference ? RicciPath::finite_difference : RicciPath::analytic;
    const double tol = cfg.finite_difference ? cfg.tolerances.finite_difference : cfg.tolerances.analytic;
    const ResidualReport rr = einstein_residual(m.provider(), m.cosmological_constant(), grid, path);

    r.residual_max = rr.global_max;
    r.ricci_scalar_dev = rr.ricci_scalar_dev;
    ResidualTable t;
    t.tau = rr.tau;
    t.per_point_max = rr.per_point_max;
    t.scalar_dev = rr.scalar_dev;
    for (const auto& f : rr.failures) t.failures.push_back({f.tau, f.message});
    r.residuals = t;

    double dual = 0.0;
    for (double tau : rr.tau) dual = std::max(dual, ricci_dual_path_deviation(m.jet(tau)));

    r.checks.push_back(check("einstein_residual", rr.global_max, tol));
    r.checks.push_back(check("ricci_scalar", rr.ricci_scalar_dev, tol));
    r.checks.push_back(check("dual_path_ricci", dual, cfg.tolerances.analytic));
    r.checks.push_back(check("kappa_consistency", kappa_consistency(m, grid, reference),
                             cfg.tolerances.kappa));
    r.checks.push_back(check("failed_points", static_cast<double>(rr.failures.size()), 0.0));
}

json family_json(const FamilySpec& f) {
    json slots = json::array();
    for (const auto& s : f.slots) {
        slots.push_back({{"name", s.name}, {"default", s.default_value}, {"description", s.description}});
    }
    return {{"id", f.id},
            {"variant", to_string(f.variant)},
            {"epsilon", f.epsilon},
            {"xi", f.xi},
            {"branch", to_string(f.branch)},
            {"params", slots},
            {"signs", f.free_e3 ? "e1,e2,e3" : "e1,e2 (e3 = 1)"},
            {"constraint", f.constraint},
            {"printed_header", f.printed_header}};
}

RunReport run_classify(const JobConfig& cfg) {
    RunReport r;
    const CanonicalClass cls = classify(StructureMatrix(*cfg.c));
    r.variant = to_string(cls.variant);
    r.epsilon = cls.epsilon;
    r.p = cls.p;
    r.canonical = summarise(cls);

    const Mat3 reduced = cls.transform * cls.original * cls.transform.inverse();
    const double scale = std::max(1.0, cls.original.cwiseAbs().maxCoeff());
    r.checks.push_back(check("canonical_pattern",
                             (reduced - cls.canonical()).cwiseAbs().maxCoeff() / scale,
                             kClassifyTolerance));

    if (cfg.xi) {
        branch_for(cls.epsilon, *cfg.xi);
        const int eps = solve_eta(cls, cfg.signs).determinant_sign();
        r.xi = *cfg.xi;
        r.lambda_cosmo = lambda_of({eps, *cfg.xi, cfg.lambda, 0.0});
    }
    return r;
}

RunReport run_solve(const JobConfig& cfg) {
    RunReport r;
    const Pipeline pl = pipeline_from_matrix(cfg);
    const AssembledMetric m = assemble(pl.cls, pl.eta, pl.phi, cfg.lambda);
    fill_metric_fields(r, m);
    const TauGrid grid = grid_for(cfg, pl.phi, m.domain());

    double eta_res = 0.0;
    for (double tau : grid) {
        const EtaJet j = pl.eta.jet(tau);
        const double s = std::max(1.0, j.eta.cwiseAbs().maxCoeff());
        eta_res = std::max(eta_res, (j.deta - *cfg.c * j.eta).cwiseAbs().maxCoeff() / s);
    }
    const PhiResiduals pr = phi_residuals(pl.phi, *cfg.c, grid);
    r.checks.push_back(check("eta_system", eta_res, cfg.tolerances.eta_system));
    r.checks.push_back(check("phi_r1", pr.r1, cfg.tolerances.phi_system));
    r.checks.push_back(check("phi_r2", pr.r2, cfg.tolerances.phi_system));
    r.checks.push_back(check("first_integral", first_integral_check(pl.phi, grid),
                             cfg.tolerances.phi_system));
    r.checks.push_back(check("kappa_consistency", kappa_consistency(m, grid, *cfg.c),
                             cfg.tolerances.kappa));
    return r;
}

RunReport run_verify(const JobConfig& cfg) {
    RunReport r;
    if (cfg.family) {
        const AssembledMetric m = catalog(*cfg.family, cfg.single_params(), cfg.lambda, cfg.signs);
        fill_metric_fields(r, m);
        r.family = *cfg.family;
        if (const auto& dc = m.display_check()) r.notes.push_back("display: " + dc->note);
        residual_checks(r, cfg, m, grid_for(cfg, m.phi(), m.domain()), std::nullopt);
    } else {
        const Pipeline pl = pipeline_from_matrix(cfg);
        const AssembledMetric m = assemble(pl.cls, pl.eta, pl.phi, cfg.lambda);
        fill_metric_fields(r, m);
        residual_checks(r, cfg, m, grid_for(cfg, m.phi(), m.domain()), *cfg.c);
    }
    return r;
}

RunReport run_catalog(const JobConfig& cfg) {
    RunReport r;
    if (!cfg.family) {
        for (const auto& f : families()) r.families.push_back(family_json(f));
        return r;
    }
    const FamilySpec& spec = family_spec(*cfg.family);
    r.families.push_back(family_json(spec));
    const AssembledMetric m = catalog(*cfg.family, cfg.single_params(), cfg.lambda, cfg.signs);
    fill_metric_fields(r, m);
    r.family = *cfg.family;
    if (const auto& dc = m.display_check()) r.notes.push_back("display: " + dc->note);
    return r;
}

RunReport run_sweep(const JobConfig& cfg) {
    RunReport r;
    r.family = *cfg.family;
    const FamilySpec& spec = family_spec(*cfg.family);

    std::size_t total = 1;
    for (const auto& [name, values] : cfg.params) total *= values.size();
    if (total > 10000) throw ConfigError("params", "sweep exceeds 10^4 samples");

    const double tol = cfg.finite_difference ? cfg.tolerances.finite_difference : cfg.tolerances.analytic;
    const RicciPath path = cfg.finite_difference ? RicciPath::finite_difference : RicciPath::analytic;

    for (std::size_t index = 0; index < total; ++index) {
        SweepRow row;
        row.index = index;
        std::size_t rest = index;
        for (auto it = cfg.params.rbegin(); it != cfg.params.rend(); ++it) {
            row.params[it->first] = it->second[rest % it->second.size()];
            rest /= it->second.size();
        }
        try {
            const AssembledMetric m = catalog(spec.id, row.params, cfg.lambda, cfg.signs);
            row.epsilon = m.phi().epsilon();
            row.p = m.phi().p();
            row.lambda_cosmo = m.cosmological_constant();
            const TauGrid grid = grid_for(cfg, m.phi(), m.domain());
            const ResidualReport rr = einstein_residual(m.provider(), m.cosmological_constant(), grid, path);
            row.residual_max = rr.global_max;
            row.ricci_scalar_dev = rr.ricci_scalar_dev;
            const bool ok = rr.global_max <= tol && rr.ricci_scalar_dev <= tol && rr.failures.empty();
            row.verdict = ok ? "pass" : "fail";
            if (!rr.failures.empty()) row.error = rr.failures.front().message;
        } catch (const std::exception& e) {
            row.verdict = "error";
            row.error = e.what();
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

RunReport run_discrepancies() {
    RunReport r;
    for (const auto& d : discrepancy_ledger()) {
        r.discrepancies.push_back({d.id, d.location, d.printed, d.resolution, d.evidence,
                                   d.printed_residual, d.resolved_residual, d.confirmed});
    }
    return r;
}

std::string csv_number(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
}

std::string csv_text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

double parse_value(const std::string& text, const std::string& field) {
    static const std::regex pi_form(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-])?\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        const std::string lead = m[1].str();
        const double coef = lead.empty() || lead == "+" ? 1.0 : lead == "-" ? -1.0 : std::stod(lead);
        const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
        if (den == 0.0) throw ConfigError(field, field + ": division by zero in '" + text + "'");
        return coef * std::numbers::pi / den;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (text.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(text);
        if (!std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError(field, field + ": cannot parse '" + text + "' as a number");
    }
}

Mat3 parse_matrix(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw ConfigError("c", "--c: expected a 3x3 array such as [[1,0,0],[0,1,0],[0,0,1]]");
    }
    if (!j.is_array() || j.size() != 3) throw ConfigError("c", "--c: expected 3 rows");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 3) throw ConfigError("c", "--c: each row needs 3 entries");
        for (int k = 0; k < 3; ++k) {
            const json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) throw ConfigError("c", "--c: entries must be numbers");
            m(i, k) = v.get<double>();
        }
    }
    if (!m.allFinite()) throw ConfigError("c", "--c: entries must be finite");
    return m;
}

std::array<double, 2> parse_tau(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("tau", "--tau: expected a:b");
    const double a = parse_value(text.substr(0, colon), "tau");
    const double b = parse_value(text.substr(colon + 1), "tau");
    if (!(b > a)) throw ConfigError("tau", "--tau: need a < b");
    return {a, b};
}

SignTriple parse_signs(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const double x = parse_value(tok, "signs");
        if (x != 1.0 && x != -1.0) throw ConfigError("signs", "--signs: entries must be +1 or -1");
        v.push_back(static_cast<int>(x));
    }
    if (v.size() != 3) throw ConfigError("signs", "--signs: expected three entries e1,e2,e3");
    return {v[0], v[1], v[2]};
}

std::vector<std::pair<std::string, std::vector<double>>> parse_params(const std::string& text) {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("params", "--params: expected name=value, got '" + item + "'");
        }
        std::string name = item.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        const std::string rhs = item.substr(eq + 1);
        for (const auto& [prev, unused] : out) {
            if (prev == name) throw ConfigError("params", "--params: '" + name + "' given twice");
        }

        std::vector<double> values;
        if (std::count(rhs.begin(), rhs.end(), ':') == 2) {
            const auto c1 = rhs.find(':');
            const auto c2 = rhs.find(':', c1 + 1);
            const double lo = parse_value(rhs.substr(0, c1), "params");
            const double hi = parse_value(rhs.substr(c1 + 1, c2 - c1 - 1), "params");
            const double n = parse_value(rhs.substr(c2 + 1), "params");
            if (n < 0 || n != std::floor(n)) {
                throw ConfigError("params", "--params: range count must be a non-negative integer");
            }
            const auto count = static_cast<std::size_t>(n);
            for (std::size_t k = 0; k < count; ++k) {
                values.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
            }
        } else if (rhs.find_first_not_of(" \t") != std::string::npos) {
            std::stringstream vs(rhs);
            std::string tok;
            while (std::getline(vs, tok, '|')) values.push_back(parse_value(tok, "params"));
        }
        out.emplace_back(std::move(name), std::move(values));
    }
    return out;
}

void JobConfig::validate() const {
    if (!kCommands.contains(command)) {
        throw ConfigError("command", "unknown command '" + command +
                                         "'; expected classify, solve, verify, catalog, sweep or discrepancies");
    }
    if (points < 10) throw ConfigError("points", "--points must be at least 10");
    if (!(tolerances.analytic > 0.0) || !(tolerances.finite_difference > 0.0)) {
        throw ConfigError("tol", "tolerances must be positive");
    }
    if (xi && *xi != 1 && *xi != -1) throw ConfigError("xi", "--xi must be +1 or -1");
    if (format == Format::csv && command != "sweep") {
        throw ConfigError("format", "--format csv is only available for sweep");
    }

    const bool needs_c = command == "classify" || command == "solve";
    if (needs_c && !c) throw ConfigError("c", command + " requires --c");
    if (command == "sweep" && !family) throw ConfigError("family", "sweep requires --family");
    if (command == "verify" && c.has_value() == family.has_value()) {
        throw ConfigError(c ? "c" : "family", "verify takes exactly one of --c or --family");
    }
    if (c && family) throw ConfigError("family", "--c and --family are mutually exclusive");
    if (!params.empty() && !family) throw ConfigError("params", "--params needs --family");
    if (family && (*family < 1 || *family > 10)) throw ConfigError("family", "--family must be in 1..10");
    if (family && xi) throw ConfigError("xi", "--xi is fixed by the family");

    const auto& allowed = kAllowed.at(command);
    const std::vector<std::pair<std::string, bool>> present{
        {"c", c.has_value()},        {"family", family.has_value()}, {"params", !params.empty()},
        {"xi", xi.has_value()},      {"tau", tau.has_value()},       {"fd", finite_difference},
    };
    for (const auto& [name, is_set] : present) {
        if (is_set && !allowed.contains(name)) {
            throw ConfigError(name, "--" + name + " is not used by " + command);
        }
    }
    if (command != "sweep") {
        for (const auto& [name, values] : params) {
            if (values.size() != 1) {
                throw ConfigError("params", "--params: '" + name + "' needs a single value outside sweep");
            }
        }
    }
}

ParamMap JobConfig::single_params() const {
    ParamMap out;
    for (const auto& [name, values] : params) out[name] = values.front();
    return out;
}

json JobConfig::echo() const {
    json j;
    j["command"] = command;
    if (c) j["c"] = to_array(*c);
    if (family) j["family"] = *family;
    json p = json::object();
    for (const auto& [name, values] : params) p[name] = values;
    j["params"] = p;
    j["lambda"] = lambda;
    if (xi) j["xi"] = *xi;
    j["signs"] = {signs.e1, signs.e2, signs.e3};
    if (tau) j["tau"] = *tau;
    j["points"] = points;
    j["path"] = finite_difference ? "finite_difference" : "analytic";
    j["tolerances"] = {{"analytic", tolerances.analytic}, {"fd", tolerances.finite_difference}};
    if (!output_path.empty()) j["out"] = output_path;
    j["format"] = format == Format::csv ? "csv" : "report";
    return j;
}

std::optional<JobConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Einstein spaces of Stackel type (3.0): classification and residual checks"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string command, c_text, params_text, signs_text, tau_text, format_text = "report";
    std::optional<int> family;
    std::optional<int> xi;
    std::optional<double> tol;
    double lambda = 0.0;
    std::size_t points = 50;
    bool fd = false;
    std::string out_path;

    app.add_option("command", command, "classify | solve | verify | catalog | sweep | discrepancies")
        ->required();
    app.add_option("--c", c_text, "structure matrix as [[..],[..],[..]], row = lower index");
    app.add_option("--family", family, "catalog family 1..10");
    app.add_option("--params", params_text, "k=v,...; sweep also takes v1|v2 and lo:hi:n");
    app.add_option("--lambda", lambda, "constant lambda in 2 Lambda = epsilon xi exp(lambda)");
    app.add_option("--xi", xi, "+1 or -1");
    app.add_option("--signs", signs_text, "e1,e2,e3 sign factors");
    app.add_option("--tau", tau_text, "tau range a:b");
    app.add_option("--points", points, "grid points (>= 10)");
    app.add_option("--tol", tol, "tolerance for the selected Ricci path");
    app.add_flag("--fd", fd, "differentiate Christoffels numerically");
    app.add_option("--out", out_path, "write the report to this file");
    app.add_option("--format", format_text, "report | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError("args", e.what());
    }

    JobConfig cfg;
    cfg.command = command;
    if (!c_text.empty()) cfg.c = parse_matrix(c_text);
    cfg.family = family;
    if (!params_text.empty()) cfg.params = parse_params(params_text);
    cfg.lambda = lambda;
    if (!std::isfinite(lambda)) throw ConfigError("lambda", "--lambda must be finite");
    cfg.xi = xi;
    if (!signs_text.empty()) cfg.signs = parse_signs(signs_text);
    if (!tau_text.empty()) cfg.tau = parse_tau(tau_text);
    cfg.points = points;
    cfg.finite_difference = fd;
    if (tol) {
        if (!(*tol > 0.0)) throw ConfigError("tol", "--tol must be positive");
        (fd ? cfg.tolerances.finite_difference : cfg.tolerances.analytic) = *tol;
    }
    cfg.output_path = out_path;
    if (format_text == "csv") {
        cfg.format = Format::csv;
    } else if (format_text != "report") {
        throw ConfigError("format", "--format must be report or csv");
    }
    if (command == "sweep" && params_text.empty() && family) {
        // No ranges: a single sample at the family defaults.
        for (const auto& s : family_spec(*family).slots) cfg.params.push_back({s.name, {s.default_value}});
    }
    cfg.validate();
    return cfg;
}

RunReport run(const JobConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    if (cfg.command == "classify") r = run_classify(cfg);
    else if (cfg.command == "solve") r = run_solve(cfg);
    else if (cfg.command == "verify") r = run_verify(cfg);
    else if (cfg.command == "catalog") r = run_catalog(cfg);
    else if (cfg.command == "sweep") r = run_sweep(cfg);
    else r = run_discrepancies();

    r.command = cfg.command;
    r.config = cfg.echo();
    r.finalise();
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string sweep_csv(const RunReport& report, const JobConfig& cfg) {
    std::ostringstream os;
    os << "index";
    for (const auto& [name, unused] : cfg.params) os << ',' << name;
    os << ",epsilon,p,lambda_cosmo,residual_max,ricci_scalar_dev,verdict,error\n";

    std::optional<double> worst_res, worst_scalar;
    for (const auto& row : report.rows) {
        os << row.index;
        for (const auto& [name, unused] : cfg.params) os << ',' << csv_number(row.params.at(name));
        os << ',' << (row.epsilon ? std::to_string(*row.epsilon) : "") << ',' << csv_number(row.p)
           << ',' << csv_number(row.lambda_cosmo) << ',' << csv_number(row.residual_max) << ','
           << csv_number(row.ricci_scalar_dev) << ',' << row.verdict << ',' << csv_text(row.error)
           << '\n';
        if (row.residual_max) worst_res = std::max(worst_res.value_or(0.0), *row.residual_max);
        if (row.ricci_scalar_dev) worst_scalar = std::max(worst_scalar.value_or(0.0), *row.ricci_scalar_dev);
    }
    if (!report.rows.empty()) {
        os << "worst";
        for (std::size_t k = 0; k < cfg.params.size(); ++k) os << ',';
        os << ",,,," << csv_number(worst_res) << ',' << csv_number(worst_scalar) << ','
           << report.verdict << ",\n";
    }
    return os.str();
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    try {
        auto parsed = parse_args(argc, argv, out);
        if (!parsed) return kExitPass;
        cfg = std::move(*parsed);
    } catch (const ConfigError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "config error [" << e.module() << "]: " << e.what() << '\n';
        return kExitConfig;
    }

    RunReport report;
    try {
        report = run(cfg);
    } catch (const ConfigError& e) {
        err << "config error [" << e.field() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "error [" << e.module() << "]: " << e.what() << '\n';
        const bool input_error = dynamic_cast<const InvalidArgument*>(&e) != nullptr ||
                                 dynamic_cast<const ConstraintError*>(&e) != nullptr ||
                                 dynamic_cast<const BranchError*>(&e) != nullptr ||
                                 dynamic_cast<const InconsistentInputsError*>(&e) != nullptr ||
                                 dynamic_cast<const SignatureError*>(&e) != nullptr ||
                                 dynamic_cast<const DomainError*>(&e) != nullptr;
        return input_error ? kExitConfig : kExitFail;
    }

    const std::string body = cfg.format == Format::csv ? sweep_csv(report, cfg)
                                                       : to_json(report).dump(2) + "\n";
    if (cfg.output_path.empty()) {
        out << body;
    } else {
        std::ofstream file(cfg.output_path);
        if (!file) {
            err << "config error [out]: cannot write " << cfg.output_path << '\n';
            return kExitConfig;
        }
        file << body;
        out << report.command << ": " << report.verdict << " (written to " << cfg.output_path << ")\n";
    }
    return report.verdict == "pass" ? kExitPass : kExitFail;
}

}  // namespace stackel::cli

// ffsolve: run the built-in examples, the check suites and switching-point
// searches from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyfrac/checks.hpp"
#include "fuzzyfrac/fuzzyfrac.hpp"
#include "fuzzyfrac/tables.hpp"

namespace fs = std::filesystem;
using namespace fuzzyfrac;

namespace {

/// Accepts plain numbers and fractions such as 1/80.
double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
        return v;
    }
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(parse_number(s));
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

/// A linear problem read from JSON:
///   {"alpha": 0.6, "T": 1, "t0": 0, "y0": [0, 1, 2],
///    "lambda": -1, "source": [0, 0, 0], "plan": "auto" | "i" | "ii"}
/// with f(t, y) = lambda ⊙ y ⊕ source.
FFIVP load_custom(const fs::path& path, double alpha_override, std::size_t levels) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open problem file " + path.string());
    const auto j = nlohmann::json::parse(in);
    FFIVP p;
    p.alpha = alpha_override > 0.0 ? alpha_override : j.value("alpha", 1.0);
    p.t0 = j.value("t0", 0.0);
    p.T = j.value("T", 1.0);
    p.caputo_base = p.t0;
    const auto y0 = j.at("y0").get<std::vector<double>>();
    const auto src = j.value("source", std::vector<double>{0.0, 0.0, 0.0});
    if (y0.size() != 3 || src.size() != 3) throw DomainError("y0 and source must be triangular triples");
    p.y0 = FuzzyNumber::triangular(y0[0], y0[1], y0[2], levels);
    const double lambda = j.value("lambda", 0.0);
    const auto s = FuzzyNumber::triangular(src[0], src[1], src[2], levels);
    p.rhs = [lambda, s](double, const FuzzyNumber& y) { return add(scalar_mul(lambda, y), s).endpoints(); };
    const std::string plan = j.value("plan", std::string("auto"));
    if (plan == "i") p.plan = DiffPlan::single(p.t0, p.T, GhCase::case_i);
    else if (plan == "ii") p.plan = DiffPlan::single(p.t0, p.T, GhCase::case_ii);
    else if (plan != "auto") throw DomainError("plan must be auto, i or ii");
    return p;
}

struct RunConfig {
    int example = 0;
    std::string spec_path;
    std::vector<double> alphas;
    std::vector<double> steps;
    std::size_t levels = kDefaultLevelCount;
    fs::path out = "out";
    std::optional<StepRule> rule;
    std::uint64_t seed = 0;
    QuadratureSpec quadrature;
};

StepRule default_rule(int example) { return example == 1 || example == 2 ? StepRule::local : StepRule::memory; }

std::vector<double> default_alphas(int example) {
    switch (example) {
        case 1:
        case 2: return {tables::kIterateAlphas.begin(), tables::kIterateAlphas.end()};
        case 3: return {tables::kTable3Alpha};
        case 4: return {tables::kTable4Alphas.begin(), tables::kTable4Alphas.end()};
        default: return {1.0};
    }
}

std::vector<double> default_steps(int example) {
    switch (example) {
        case 1:
        case 2: return {tables::kIterateSteps.begin(), tables::kIterateSteps.end()};
        case 3: return {tables::kTable3Steps.begin(), tables::kTable3Steps.end()};
        case 4: return {tables::kTable4Steps.begin(), tables::kTable4Steps.end()};
        default: return {0.01};
    }
}

std::string stem(const RunConfig& cfg, double alpha, double h) {
    const std::string name = cfg.example ? "example" + std::to_string(cfg.example) : fs::path(cfg.spec_path).stem().string();
    return name + "_alpha" + fmt("%g", alpha) + "_h" + fmt("%g", h);
}

std::string header(const RunConfig& cfg, double alpha, double h, StepRule rule) {
    std::ostringstream os;
    os << "# " << (cfg.example ? "example=" + std::to_string(cfg.example) : "spec=" + cfg.spec_path) << " alpha=" << fmt("%g", alpha)
       << " h=" << fmt("%g", h) << " levels=" << cfg.levels << " rule=" << to_string(rule);
    return os.str();
}

void write_rows(std::ostream& os, const std::vector<tables::TableRow>& rows) {
    os << "k,t_label,lower0,mid,upper0\n";
    for (const auto& r : rows)
        os << r.k << ',' << fmt("%.6f", r.t_label) << ',' << fmt("%.6f", r.value.first) << ',' << fmt("%.6f", r.value.mid)
           << ',' << fmt("%.6f", r.value.last) << '\n';
}

void write_plot(const fs::path& path, const std::string& head, const FuzzyTrajectory& traj) {
    std::ofstream os(path);
    os << head << '\n' << "t,r,lower,upper\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& y = traj.y[k];
        for (std::size_t j = 0; j < y.size(); ++j)
            os << fmt("%.6f", traj.t[k]) << ',' << fmt("%.6f", y.levels()[j]) << ',' << fmt("%.6f", y.lower()[j]) << ','
               << fmt("%.6f", y.upper()[j]) << '\n';
    }
}

FFIVP build_problem(const RunConfig& cfg, double alpha, double h) {
    switch (cfg.example) {
        case 1: return examples::example1(alpha, 10.0 * h, cfg.levels);
        case 2: return examples::example2(alpha, 10.0 * h, cfg.levels);
        case 3: {
            const StepRule rule = cfg.rule.value_or(default_rule(3));
            return examples::example3(alpha, rule == StepRule::memory ? 0.0 : 1.0, 2.0, cfg.levels);
        }
        case 4: return examples::example4(alpha, cfg.levels);
        default: return load_custom(cfg.spec_path, alpha, cfg.levels);
    }
}

struct JobResult {
    double alpha;
    double h;
    bool ok;
    std::string message;
    double max_error = std::numeric_limits<double>::quiet_NaN();
    double lipschitz = std::numeric_limits<double>::quiet_NaN();
    double end_error = std::numeric_limits<double>::quiet_NaN();  // Example 4 table metric
};

JobResult run_job(const RunConfig& cfg, double alpha, double h) {
    const StepRule rule = cfg.rule.value_or(default_rule(cfg.example));
    const std::string head = header(cfg, alpha, h, rule);
    const fs::path table = cfg.out / (stem(cfg, alpha, h) + ".csv");
    JobResult res{alpha, h, true, {}};
    try {
        const FFIVP p = build_problem(cfg, alpha, h);
        SolveOptions opt{rule};
        opt.quadrature = cfg.quadrature;
        if (cfg.example == 4) opt.enforce_validity = false;  // carried past the switching point
        const auto traj = solve(p, h, opt);

        std::vector<tables::TableRow> rows;
        if (cfg.example == 1 || cfg.example == 2) {
            rows = tables::iterate_rows(traj);
        } else if (cfg.example == 3) {
            rows = tables::label_rows(traj, tables::example3_labels());
        } else {
            for (std::size_t k = 1; k < traj.size(); ++k) rows.push_back({k, traj.t[k], tables::print_order(traj.y[k])});
        }
        {
            std::ofstream os(table);
            os << head << '\n';
            write_rows(os, rows);
        }
        write_plot(cfg.out / (stem(cfg, alpha, h) + "_levels.csv"), head, traj);

        if (p.exact && opt.enforce_validity) res.max_error = max_of(global_error(traj, *p.exact));
        if (cfg.example == 4)
            res.end_error = std::abs(traj.y.back().lower_at(0.1) - (*p.exact)(p.T).lower_at(0.1));
        LipschitzOptions lip;
        lip.seed = cfg.seed;
        res.lipschitz = estimate_lipschitz(p, traj, lip);
    } catch (const std::exception& e) {
        res.ok = false;
        res.message = e.what();
        std::ofstream os(table);
        os << head << " status=failed\n# " << e.what() << '\n';
    }
    return res;
}

void write_switching(const RunConfig& cfg, std::ostream& os, const std::vector<double>& alphas) {
    os << "alpha,t,type\n";
    for (double alpha : alphas) {
        if (cfg.example == 4) {
            const double t = examples::example4_switching_point(alpha, cfg.quadrature);
            os << fmt("%g", alpha) << ',' << fmt("%.6f", t) << ",type_I\n";
            continue;
        }
        const auto p = examples::example3(alpha, 0.0, 2.0, cfg.levels);
        const auto plan = classify_differentiability(*p.exact, p.caputo_base, p.t0, p.T, alpha, cfg.quadrature);
        for (const auto& sp : plan.switching_points())
            os << fmt("%g", alpha) << ',' << fmt("%.6f", sp.t) << ',' << to_string(sp.type) << '\n';
    }
}

int run_command(RunConfig cfg) {
    if (cfg.example == 0 && cfg.spec_path.empty()) throw CLI::ValidationError("run", "give --example or --spec");
    if (cfg.alphas.empty())
        cfg.alphas = cfg.example ? default_alphas(cfg.example)
                                 : std::vector<double>{load_custom(cfg.spec_path, 0.0, cfg.levels).alpha};
    if (cfg.steps.empty()) cfg.steps = default_steps(cfg.example);
    for (double a : cfg.alphas)
        if (!(a > 0.0 && a <= 1.0)) throw CLI::ValidationError("--alpha", "orders must lie in (0, 1]");
    for (double h : cfg.steps)
        if (!(h > 0.0)) throw CLI::ValidationError("--h", "step sizes must be positive");
    if (cfg.levels < 2) throw CLI::ValidationError("--levels", "need at least 2 levels");
    fs::create_directories(cfg.out);

    std::vector<std::future<JobResult>> jobs;
    for (double a : cfg.alphas)
        for (double h : cfg.steps) jobs.push_back(std::async(std::launch::async, run_job, std::cref(cfg), a, h));

    bool all_ok = true;
    std::vector<JobResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    for (const auto& r : results) {
        all_ok = all_ok && r.ok;
        std::cout << stem(cfg, r.alpha, r.h) << ": ";
        if (!r.ok) {
            std::cout << "FAILED " << r.message << '\n';
            continue;
        }
        std::cout << "ok";
        if (!std::isnan(r.max_error)) std::cout << " max_error=" << fmt("%.6g", r.max_error);
        if (!std::isnan(r.end_error)) std::cout << " error_t1=" << fmt("%.6g", r.end_error);
        std::cout << " lipschitz=" << fmt("%.6g", r.lipschitz) << '\n';
    }

    if (cfg.example == 4) {
        std::ofstream os(cfg.out / "example4_errors.csv");
        os << "# example=4 levels=" << cfg.levels << " rule=" << to_string(cfg.rule.value_or(StepRule::memory)) << '\n';
        os << "alpha,h,error,ratio\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            const bool first = i % cfg.steps.size() == 0;
            const double ratio = first ? std::numeric_limits<double>::quiet_NaN() : results[i - 1].end_error / r.end_error;
            os << fmt("%g", r.alpha) << ',' << fmt("%.6g", r.h) << ',' << fmt("%.6e", r.end_error) << ','
               << (first ? std::string("") : fmt("%.6f", ratio)) << '\n';
        }
    }
    if (cfg.example == 3 || cfg.example == 4) {
        std::ofstream os(cfg.out / ("example" + std::to_string(cfg.example) + "_switching.csv"));
        write_switching(cfg, os, cfg.alphas);
    }
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized fuzzy Euler experiments for fuzzy fractional IVPs"};
    app.require_subcommand(1);
    // -h is taken by the step size; subcommands inherit this
    app.set_help_flag("--help", "Print this help message and exit");

    RunConfig cfg;
    cfg.quadrature = quadrature_from_environment();
    std::vector<std::string> alpha_items, step_items;
    std::string rule_name, scheme = "graded";

    auto add_quadrature = [&](CLI::App* sub) {
        sub->add_option("--quadrature", scheme, "Singular-kernel quadrature")->check(CLI::IsMember({"graded", "trapezoid"}));
    };
    auto apply_quadrature = [&]() {
        if (scheme == "trapezoid") cfg.quadrature.scheme = QuadratureScheme::product_trapezoid;
    };

    auto* run = app.add_subcommand("run", "Solve examples over an (alpha, h) grid and write CSV tables");
    auto* ex_opt = run->add_option("--example", cfg.example, "Built-in example 1-4")->check(CLI::Range(1, 4));
    run->add_option("--spec", cfg.spec_path, "JSON file with a linear problem")->excludes(ex_opt)->check(CLI::ExistingFile);
    run->add_option("--alpha", alpha_items, "Orders, comma separated")->delimiter(',');
    run->add_option("--h", step_items, "Step sizes, comma separated; fractions allowed")->delimiter(',');
    run->add_option("--levels", cfg.levels, "Number of membership levels")->check(CLI::Range(2, 100001));
    run->add_option("--out", cfg.out, "Output directory");
    run->add_option("--rule", rule_name, "Step rule")->check(CLI::IsMember({"local", "memory"}));
    run->add_option("--seed", cfg.seed, "Seed for Lipschitz sampling");
    add_quadrature(run);

    std::string which = "all";
    auto* suite = app.add_subcommand("suite", "Run a check suite; exit status 0 when every check passes");
    suite->add_option("--which", which, "Suite name")
        ->check(CLI::IsMember({"properties", "golden", "convergence", "stability", "all"}));

    auto* sw = app.add_subcommand("switching", "Locate switching points of Example 3 or 4");
    sw->add_option("--example", cfg.example, "3 or 4")->required()->check(CLI::IsMember({3, 4}));
    sw->add_option("--alpha", alpha_items, "Orders, comma separated")->delimiter(',');
    add_quadrature(sw);

    try {
        app.parse(argc, argv);
        apply_quadrature();
        cfg.alphas = parse_list(alpha_items);
        cfg.steps = parse_list(step_items);
        if (!rule_name.empty()) cfg.rule = rule_name == "local" ? StepRule::local : StepRule::memory;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*run) return run_command(cfg);
        if (*suite) {
            checks::Report report;
            if (which == "all") {
                for (const char* name : {"properties", "golden", "convergence", "stability"}) report.append(checks::suite(name));
            } else {
                report = checks::suite(which);
            }
            std::cout << "name,measured,bound,verdict\n";
            for (const auto& c : report.checks) std::cout << checks::format_line(c) << '\n';
            return report.passed() ? 0 : 1;
        }
        if (*sw) {
            if (cfg.alphas.empty())
                cfg.alphas = cfg.example == 4 ? std::vector<double>(tables::kTable5Alphas.begin(), tables::kTable5Alphas.end())
                                              : std::vector<double>{tables::kTable3Alpha};
            write_switching(cfg, std::cout, cfg.alphas);
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

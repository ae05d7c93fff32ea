#ifndef FRACVEL_CLI_HPP
#define FRACVEL_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracvel/fracvel.hpp"
#include "fracvel/json_io.hpp"

namespace fracvel::cli {

/// Exit codes: 0 success, 1 rule-check failure, 2 usage or evaluation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct LadderFlags {
    double eps0 = 1e-2;
    double ratio = 0.5;
    int count = 16;
};

/// FRACVEL_LADDER="eps0,ratio,count" overrides the built-in ladder defaults;
/// explicit flags still win over the environment.
inline LadderFlags ladder_defaults_from_env() {
    LadderFlags flags;
    const char* env = std::getenv("FRACVEL_LADDER");
    if (env == nullptr || *env == '\0') return flags;
    std::stringstream ss{std::string(env)};
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) throw ParameterError("FRACVEL_LADDER must be 'eps0,ratio,count'");
    try {
        flags.eps0 = std::stod(cells[0]);
        flags.ratio = std::stod(cells[1]);
        flags.count = std::stoi(cells[2]);
    } catch (const std::exception&) {
        throw ParameterError("FRACVEL_LADDER must be 'eps0,ratio,count' with numeric fields");
    }
    return flags;
}

struct FunctionSlot {
    std::string expr_text;
    std::string input_path;
    double origin = 0.0;
    double step = 0.0;

    Evaluable build(const std::string& flag) const {
        if (!expr_text.empty() && !input_path.empty())
            throw ParameterError(flag + ": give an expression or an input file, not both");
        if (!expr_text.empty()) return Evaluable{parse(expr_text)};
        if (!input_path.empty()) return Evaluable{read_signal_csv_file(input_path, origin, step)};
        throw ParameterError(flag + ": an expression (or --input) is required");
    }

    std::string describe() const { return expr_text.empty() ? input_path : expr_text; }
};

inline Direction parse_direction(const std::string& d) {
    if (d == "plus") return Direction::Plus;
    if (d == "minus") return Direction::Minus;
    throw ParameterError("--dir must be plus, minus or both");
}

inline Json ladder_json(const EpsLadder& ladder) {
    return Json{{"eps0", ladder.eps0}, {"ratio", ladder.ratio}, {"count", ladder.count}};
}

inline void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw Error("cannot open output file: " + output_path);
    file << text;
}

inline std::string samples_csv(const LimitEstimate& est) {
    const bool all_real = std::all_of(est.samples.begin(), est.samples.end(),
                                      [](const QuotientSample& s) { return s.value.is_real(); });
    std::string out = all_real ? "eps,re\n" : "eps,re,im\n";
    for (const auto& s : est.samples) {
        out += format_double(s.eps);
        out += ',';
        out += format_double(s.value.re);
        if (!all_real) {
            out += ',';
            out += format_double(s.value.im);
        }
        out += '\n';
    }
    return out;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name. All reports embed the
/// effective configuration, and identical invocations emit identical bytes.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fractional velocity, co-variation and Holder exponent toolkit", "fracvel"};
    app.require_subcommand(1);

    detail::LadderFlags ladder_flags;
    try {
        ladder_flags = detail::ladder_defaults_from_env();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    detail::FunctionSlot f_slot, g_slot;
    double x = 0.0, alpha = 0.5, beta = 1.0;
    double lo = 0.0, hi = 1.0;
    int points = 101;
    std::string dir = "plus", format, output_path, rule;

    auto add_common = [&](CLI::App* cmd, bool wants_g) {
        cmd->add_option("--f", f_slot.expr_text, "expression for f (mini-language, variable x)");
        cmd->add_option("--input", f_slot.input_path, "CSV file for f: header 'x,y', or 'y' with --origin/--step");
        cmd->add_option("--origin", f_slot.origin, "abscissa of the first sample for y-only CSV input");
        cmd->add_option("--step", f_slot.step, "grid step for y-only CSV input");
        if (wants_g) cmd->add_option("--g", g_slot.expr_text, "expression for g");
        cmd->add_option("--eps0", ladder_flags.eps0, "largest ladder window");
        cmd->add_option("--ratio", ladder_flags.ratio, "ladder shrink ratio in (0,1)");
        cmd->add_option("--count", ladder_flags.count, "number of ladder rungs (>= 4)");
        cmd->add_option("--format", format, "output format: json or csv");
        cmd->add_option("--output", output_path, "write the report here instead of stdout");
    };

    CLI::App* velocity_cmd = app.add_subcommand("velocity", "classified fractional velocity of f at x");
    add_common(velocity_cmd, false);
    velocity_cmd->add_option("--x", x, "point of evaluation")->required();
    velocity_cmd->add_option("--alpha", alpha, "velocity order in (0,1]")->required();
    velocity_cmd->add_option("--dir", dir, "plus, minus or both");

    CLI::App* covar_cmd = app.add_subcommand("covar", "classified fractional co-variation [f,g] at x");
    covar_cmd->alias("quadratic");
    add_common(covar_cmd, true);
    covar_cmd->add_option("--x", x, "point of evaluation")->required();
    covar_cmd->add_option("--beta", beta, "co-variation order in (0,1], default 1");
    covar_cmd->add_option("--dir", dir, "plus, minus or both");

    CLI::App* check_cmd = app.add_subcommand("check", "verify a product/quotient rule; exit 1 on failure");
    add_common(check_cmd, true);
    check_cmd->add_option("--rule", rule, "product | square | quotient | reciprocal | leibniz | lemma")->required();
    check_cmd->add_option("--x", x, "point of evaluation")->required();
    check_cmd->add_option("--beta", beta, "order in (0,1], default 1");
    check_cmd->add_option("--dir", dir, "plus, minus or both");

    CLI::App* scan_cmd = app.add_subcommand("holder-scan", "pointwise Holder exponent scan over [lo, hi]");
    add_common(scan_cmd, false);
    scan_cmd->add_option("--lo", lo, "scan range start")->required();
    scan_cmd->add_option("--hi", hi, "scan range end")->required();
    scan_cmd->add_option("--points", points, "number of grid points (default 101)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (format.empty()) format = app.got_subcommand(scan_cmd) ? "csv" : "json";
    if (format != "json" && format != "csv") {
        err << "error: --format must be json or csv\n";
        return kExitUsage;
    }

    try {
        const EpsLadder ladder{ladder_flags.eps0, ladder_flags.ratio, ladder_flags.count};
        const bool both = dir == "both";
        std::vector<Direction> dirs;
        if (both)
            dirs = {Direction::Plus, Direction::Minus};
        else
            dirs = {detail::parse_direction(dir)};

        Json config;
        config["f"] = f_slot.describe();
        config["x"] = x;
        config["direction"] = dir;
        config["ladder"] = detail::ladder_json(ladder);
        config["slope_tol"] = kSlopeTol;
        config["fit_tol"] = kFitTol;

        if (app.got_subcommand(velocity_cmd)) {
            const Evaluable f = f_slot.build("--f");
            config["alpha"] = alpha;
            Json report;
            report["command"] = "velocity";
            report["config"] = config;
            std::optional<LimitEstimate> single;
            for (Direction d : dirs) {
                LimitEstimate est = velocity(f, x, alpha, d, ladder);
                if (both)
                    report[d == Direction::Plus ? "plus" : "minus"] = to_json(est);
                else
                    single = std::move(est);
            }
            if (single) report["result"] = to_json(*single);
            if (format == "csv") {
                if (both) throw ParameterError("--format csv needs a single direction");
                detail::emit(detail::samples_csv(*single), output_path, out);
            } else {
                detail::emit(report.dump(2) + "\n", output_path, out);
            }
            return kExitOk;
        }

        if (app.got_subcommand(covar_cmd)) {
            const Evaluable f = f_slot.build("--f");
            const Evaluable g = g_slot.expr_text.empty() ? f : Evaluable{parse(g_slot.expr_text)};
            config["g"] = g_slot.expr_text.empty() ? config["f"] : Json(g_slot.expr_text);
            config["beta"] = beta;
            Json report;
            report["command"] = "covar";
            report["config"] = config;
            std::optional<CovarEstimate> single;
            for (Direction d : dirs) {
                CovarEstimate est = covariation(f, g, x, beta, d, ladder);
                if (both)
                    report[d == Direction::Plus ? "plus" : "minus"] = to_json(est);
                else
                    single = std::move(est);
            }
            if (single) report["result"] = to_json(*single);
            if (format == "csv") {
                if (both) throw ParameterError("--format csv needs a single direction");
                detail::emit(detail::samples_csv(*single), output_path, out);
            } else {
                detail::emit(report.dump(2) + "\n", output_path, out);
            }
            return kExitOk;
        }

        if (app.got_subcommand(check_cmd)) {
            const Evaluable f = f_slot.build("--f");
            const bool needs_g = rule == "product" || rule == "quotient" || rule == "reciprocal" ||
                                 rule == "leibniz" || rule == "lemma";
            if (needs_g && g_slot.expr_text.empty())
                throw ParameterError("--rule " + rule + " requires --g");
            const Evaluable g = g_slot.expr_text.empty() ? f : Evaluable{parse(g_slot.expr_text)};
            config["g"] = g_slot.expr_text.empty() ? config["f"] : Json(g_slot.expr_text);
            config["beta"] = beta;
            config["rule"] = rule;
            const RuleTolerances tol;
            config["value_rel"] = tol.value_rel;
            config["value_abs"] = tol.value_abs;
            config["finite_eps_scale"] = tol.finite_eps_scale;

            auto run_rule = [&](Direction d) -> RuleReport {
                if (rule == "product") return check_product_rule(f, g, x, beta, d, ladder, tol);
                if (rule == "square") return check_square_rule(f, x, beta, d, ladder, tol);
                if (rule == "quotient") return check_quotient_rule(f, g, x, beta, d, ladder, tol);
                if (rule == "reciprocal") return reciprocal_identities(f, g, x, beta, d, ladder, tol);
                if (rule == "leibniz") {
                    if (!f.is_expr() || !g.is_expr())
                        throw ParameterError("--rule leibniz requires closed-form expressions");
                    return leibniz_limit_check(f.expr(), g.expr(), x, ladder, tol);
                }
                if (rule == "lemma") {
                    // finite-window identity at every rung; report the worst one
                    RuleReport worst;
                    bool first = true, all_ok = true;
                    for (double eps : ladder.values_for(f)) {
                        RuleReport r = check_product_lemma(f, g, x, eps, d, tol);
                        all_ok = all_ok && r.passed;
                        if (first || r.residual / r.tolerance > worst.residual / worst.tolerance) {
                            worst = std::move(r);
                            first = false;
                        }
                    }
                    worst.passed = all_ok;
                    return worst;
                }
                throw ParameterError("--rule must be product, square, quotient, reciprocal, leibniz or lemma");
            };

            bool all_passed = true;
            if (both) {
                Json array = Json::array();
                int passed_count = 0;
                for (Direction d : dirs) {
                    const RuleReport r = run_rule(d);
                    all_passed = all_passed && r.passed;
                    passed_count += r.passed ? 1 : 0;
                    Json entry;
                    entry["command"] = "check";
                    Json cfg = config;
                    cfg["direction"] = d == Direction::Plus ? "plus" : "minus";
                    entry["config"] = cfg;
                    entry["report"] = to_json(r);
                    array.push_back(std::move(entry));
                }
                detail::emit(array.dump(2) + "\n", output_path, out);
                out << "check " << rule << ": " << (all_passed ? "PASS" : "FAIL") << " (" << passed_count << "/"
                    << dirs.size() << ")\n";
            } else {
                const RuleReport r = run_rule(dirs.front());
                all_passed = r.passed;
                Json report;
                report["command"] = "check";
                report["config"] = config;
                report["report"] = to_json(r);
                detail::emit(report.dump(2) + "\n", output_path, out);
            }
            return all_passed ? kExitOk : kExitCheckFailed;
        }

        if (app.got_subcommand(scan_cmd)) {
            const Evaluable f = f_slot.build("--f");
            config.erase("x");
            config.erase("direction");
            config["lo"] = lo;
            config["hi"] = hi;
            config["points"] = points;
            const auto rows = scan(f, lo, hi, points, ladder);
            if (format == "json") {
                Json report;
                report["command"] = "holder-scan";
                report["config"] = config;
                Json jrows = Json::array();
                for (const auto& row : rows) jrows.push_back(to_json(row));
                report["rows"] = std::move(jrows);
                detail::emit(report.dump(2) + "\n", output_path, out);
            } else {
                detail::emit(scan_to_csv(rows), output_path, out);
            }
            return kExitOk;
        }

        throw ParameterError("no command given");
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fracvel::cli

#endif  // FRACVEL_CLI_HPP

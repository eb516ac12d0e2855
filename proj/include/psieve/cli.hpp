#pragma once

// Command-line front end.  Subcommands: count, scan, bv, levels, pairs, phi,
// threshold, integrals, identity-check, bset.  Exit codes: 0 success,
// 1 domain error, 2 precision exhausted, 64 usage error.

#include <CLI11.hpp>

#include <iostream>

#include "psieve/expsum.hpp"
#include "psieve/io.hpp"

namespace psieve {

namespace detail {

inline void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty())
        std::cout << payload;
    else
        write_text(out_path, payload);
}

}  // namespace detail

inline int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"Piatetski-Shapiro prime toolkit"};
    app.require_subcommand(1);

    double gamma = 0.999;
    u64 x = 1000000;
    double xi = 0.0;  // 0 = derive from gamma/eps
    double eps = 1e-6;
    double eta = 5e-7;
    i64 a = 1;
    u32 r = 3;
    double log_power = 2.0;
    double tol = 1e-9;
    std::string format;  // "", "csv" or "json"
    std::string out_path;
    int threads = 0;
    std::string word = "AA";
    bool weighted = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--gamma", gamma, "exponent gamma in (1/2, 1)");
        sub->add_option("--x", x, "upper limit x");
        sub->add_option("--xi", xi, "level exponent (default: theorem-1 level)");
        sub->add_option("--eps", eps, "epsilon parameter");
        sub->add_option("--eta", eta, "eta parameter");
        sub->add_option("--a", a, "residue class a (nonzero)");
        sub->add_option("--r", r, "almost-prime order r");
        sub->add_option("--A", log_power, "log power A in the reference scale");
        sub->add_option("--tol", tol, "quadrature/root tolerance");
        sub->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "write output to this path");
        sub->add_option("--threads", threads, "worker threads (0 = PSIEVE_THREADS or hardware)");
        return sub;
    };

    auto* cmd_count = add_common(app.add_subcommand("count", "count PS primes <= x"));
    auto* cmd_scan =
        add_common(app.add_subcommand("scan", "PS primes p <= x with Omega(p+2) <= r"));
    auto* cmd_bv = add_common(app.add_subcommand("bv", "progression discrepancy report"));
    cmd_bv->add_flag("--weighted", weighted, "emit the mu^2 3^nu weighted remainder instead");
    auto* cmd_levels = add_common(app.add_subcommand("levels", "level function table"));
    auto* cmd_pairs = add_common(app.add_subcommand("pairs", "exponent-pair iterates"));
    cmd_pairs->add_option("--word", word, "process word over {A, B}");
    auto* cmd_phi = add_common(app.add_subcommand("phi", "bracket functional on a gamma grid"));
    auto* cmd_threshold = add_common(app.add_subcommand("threshold", "gamma root of the bracket"));
    auto* cmd_integrals = add_common(app.add_subcommand("integrals", "sieve integrals"));
    auto* cmd_identity =
        add_common(app.add_subcommand("identity-check", "three-fold Lambda decomposition check"));
    auto* cmd_bset = add_common(app.add_subcommand("bset", "prime-quadruple main term"));

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    const bool json = format == "json";
    try {
        if (*cmd_count) {
            PsGamma g = PsGamma::make(gamma);
            u64 n = pi_gamma(x, g, threads);
            if (json) {
                nlohmann::json j{{"x", x}, {"gamma", gamma}, {"count", n}};
                detail::emit(j.dump() + "\n", out_path);
            } else {
                detail::emit(table_to_csv({"x", "gamma", "count"},
                                          {{std::to_string(x), fmt_g15(gamma),
                                            std::to_string(n)}}),
                             out_path);
            }
        } else if (*cmd_scan) {
            PsGamma g = PsGamma::make(gamma);
            auto recs = scan_p3(x, g, r, threads);
            detail::emit(json ? scan_to_json(recs).dump() + "\n" : scan_to_csv(recs), out_path);
        } else if (*cmd_bv) {
            PsGamma g = PsGamma::make(gamma);
            double use_xi = xi > 0.0 ? xi : level_theorem1(gamma, eps);
            if (weighted) {
                double total = weighted_remainder(x, g, use_xi, a, threads);
                if (json) {
                    nlohmann::json j{{"x", x},
                                     {"gamma", gamma},
                                     {"xi", use_xi},
                                     {"a", a},
                                     {"weighted_total", total}};
                    detail::emit(j.dump() + "\n", out_path);
                } else {
                    detail::emit(table_to_csv({"x", "gamma", "xi", "a", "weighted_total"},
                                              {{std::to_string(x), fmt_g15(gamma),
                                                fmt_g15(use_xi), std::to_string(a),
                                                fmt_g15(total)}}),
                                 out_path);
                }
            } else {
                DiscrepancyReport rep = bv_discrepancy(x, g, use_xi, a, log_power, threads);
                detail::emit(json ? bv_to_json(rep).dump() + "\n" : bv_to_csv(rep), out_path);
            }
        } else if (*cmd_levels) {
            std::vector<double> grid;
            if (cmd_levels->count("--gamma"))
                grid.push_back(gamma);
            else
                grid = {0.99, 0.999, 0.9989445, 0.9995};
            std::vector<LevelsRow> rows;
            for (double gg : grid) {
                LevelsRow row;
                row.gamma = gg;
                row.xi_thm1 = level_theorem1(gg, eps);
                row.xi_lu = level_lu(gg, eps);
                row.xi_peneva = level_peneva(gg, eps);
                row.feasible = gg > 0.5 && gg < 1.0 &&
                               feasibility(LevelParams::make(gg, eps, eta)).overall;
                rows.push_back(row);
            }
            if (json) {
                nlohmann::json j = levels_to_json(rows);
                if (rows.size() == 1) {
                    j["xi_thm1"] = rows[0].xi_thm1;
                    j["xi_lu"] = rows[0].xi_lu;
                    j["xi_peneva"] = rows[0].xi_peneva;
                    j["feasible"] = rows[0].feasible;
                }
                detail::emit(j.dump() + "\n", out_path);
            } else {
                detail::emit(levels_to_csv(rows), out_path);
            }
        } else if (*cmd_pairs) {
            ExponentPair p = iterate_pair(word, ExponentPair(1, 2, 1, 2));
            if (json) {
                nlohmann::json j{{"word", word},
                                 {"kappa", p.kappa.get_str()},
                                 {"ell", p.ell.get_str()}};
                detail::emit(j.dump() + "\n", out_path);
            } else if (format == "csv") {
                detail::emit(table_to_csv({"word", "kappa", "ell"},
                                          {{word, p.kappa.get_str(), p.ell.get_str()}}),
                             out_path);
            } else {
                detail::emit(p.str() + "\n", out_path);
            }
        } else if (*cmd_phi) {
            std::vector<double> grid;
            if (cmd_phi->count("--gamma"))
                grid.push_back(gamma);
            else
                grid = {0.9989445, 0.9992, 0.9995, 0.9999};
            std::vector<std::vector<std::string>> rows;
            nlohmann::json arr = nlohmann::json::array();
            for (double gg : grid) {
                double v = bracket_functional(gg, tol);
                rows.push_back({fmt_g15(gg), fmt_g15(v)});
                arr.push_back({{"gamma", gg}, {"phi", v}});
            }
            detail::emit(json ? nlohmann::json{{"rows", arr}}.dump() + "\n"
                              : table_to_csv({"gamma", "phi"}, rows),
                         out_path);
        } else if (*cmd_threshold) {
            double tstar = gamma_threshold(tol);
            if (json) {
                nlohmann::json j{{"tol", tol}, {"gamma_star", tstar}};
                detail::emit(j.dump() + "\n", out_path);
            } else if (format == "csv") {
                detail::emit(table_to_csv({"tol", "gamma_star"},
                                          {{fmt_g15(tol), fmt_g15(tstar)}}),
                             out_path);
            } else {
                detail::emit(fmt_g15(tstar) + "\n", out_path);
            }
        } else if (*cmd_integrals) {
            double use_xi = xi > 0.0 ? xi : level_theorem1(gamma, 0.0);
            QuadratureResult rich = richert_integral(1.0 / use_xi, use_xi, tol);
            QuadratureResult trip = triple_integral(tol);
            std::vector<std::vector<std::string>> rows{
                {"richert", fmt_g15(rich.value), fmt_g15(rich.abs_error_estimate),
                 std::to_string(rich.evaluations), rich.converged ? "1" : "0"},
                {"triple", fmt_g15(trip.value), fmt_g15(trip.abs_error_estimate),
                 std::to_string(trip.evaluations), trip.converged ? "1" : "0"}};
            if (json) {
                nlohmann::json j{
                    {"richert",
                     {{"value", rich.value},
                      {"abs_error_estimate", rich.abs_error_estimate},
                      {"evaluations", rich.evaluations},
                      {"converged", rich.converged}}},
                    {"triple",
                     {{"value", trip.value},
                      {"abs_error_estimate", trip.abs_error_estimate},
                      {"evaluations", trip.evaluations},
                      {"converged", trip.converged}}}};
                detail::emit(j.dump() + "\n", out_path);
            } else {
                detail::emit(table_to_csv(
                                 {"integral", "value", "abs_error_estimate", "evaluations",
                                  "converged"},
                                 rows),
                             out_path);
            }
        } else if (*cmd_identity) {
            std::vector<u64> xs;
            if (cmd_identity->count("--x"))
                xs.push_back(x);
            else
                xs = {50, 100, 500};
            u64 mismatches = 0;
            std::vector<std::vector<std::string>> rows;
            nlohmann::json arr = nlohmann::json::array();
            for (u64 X : xs) {
                u64 bad = 0;
                for (u64 n = X + 1; n <= 2 * X; ++n)
                    if (!(heath_brown_lambda(n, X) == von_mangoldt_symbolic(n))) ++bad;
                mismatches += bad;
                rows.push_back({std::to_string(X), std::to_string(X), std::to_string(bad)});
                arr.push_back({{"X", X}, {"checked", X}, {"mismatches", bad}});
            }
            detail::emit(json ? nlohmann::json{{"rows", arr}}.dump() + "\n"
                              : table_to_csv({"X", "checked", "mismatches"}, rows),
                         out_path);
            if (mismatches > 0) return 1;
        } else if (*cmd_bset) {
            BSetMainTerm bt = b_set_main_term(x, gamma, tol, threads);
            if (json) {
                nlohmann::json j{{"x", bt.x},
                                 {"gamma", bt.gamma},
                                 {"enumerated_sum", bt.enumerated_sum},
                                 {"integral_prediction", bt.integral_prediction},
                                 {"ratio", bt.ratio},
                                 {"records", bt.records}};
                detail::emit(j.dump() + "\n", out_path);
            } else {
                detail::emit(
                    table_to_csv({"x", "gamma", "enumerated_sum", "integral_prediction", "ratio",
                                  "records"},
                                 {{std::to_string(bt.x), fmt_g15(bt.gamma),
                                   fmt_g15(bt.enumerated_sum), fmt_g15(bt.integral_prediction),
                                   fmt_g15(bt.ratio), std::to_string(bt.records)}}),
                    out_path);
            }
        }
    } catch (const precision_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace psieve

#pragma once

// Report serialization.  CSV: one header row, fixed column order, floats at
// 15 significant digits, LF line endings.  JSON: a single top-level object
// per report, keys in lexicographic order (nlohmann's default ordering).
// Both directions are provided so emitted reports can be reloaded and
// re-verified.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "psieve/harness.hpp"
#include "psieve/levels.hpp"

namespace psieve {

inline std::string fmt_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Minimal CSV plumbing (our schemas never need quoting)
// ---------------------------------------------------------------------------

inline std::string csv_join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    line += '\n';
    return line;
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r' && c != '\n') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(csv_split(line));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Factor signatures as "p^e*p^e" strings
// ---------------------------------------------------------------------------

inline std::string factors_to_string(const FactorSignature& sig) {
    if (sig.factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < sig.factors.size(); ++i) {
        if (i) s += '*';
        s += std::to_string(sig.factors[i].prime);
        if (sig.factors[i].exponent > 1) s += '^' + std::to_string(sig.factors[i].exponent);
    }
    return s;
}

inline FactorSignature factors_from_string(u64 n, const std::string& s) {
    FactorSignature sig;
    sig.n = n;
    if (s == "1") return sig;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, '*')) {
        auto caret = part.find('^');
        u64 p = std::stoull(part.substr(0, caret));
        u32 e = caret == std::string::npos ? 1 : static_cast<u32>(std::stoul(part.substr(caret + 1)));
        sig.factors.push_back({p, e});
        sig.big_omega += e;
        sig.little_omega += 1;
        if (e >= 2) sig.mobius = 0;
    }
    if (sig.mobius != 0) sig.mobius = (sig.little_omega % 2 == 0) ? 1 : -1;
    sig.spf = sig.factors.empty() ? 0 : sig.factors.front().prime;
    return sig;
}

// ---------------------------------------------------------------------------
// Levels table
// ---------------------------------------------------------------------------

struct LevelsRow {
    double gamma = 0;
    double xi_thm1 = 0;
    double xi_lu = 0;
    double xi_peneva = 0;
    bool feasible = false;
    friend bool operator==(const LevelsRow&, const LevelsRow&) = default;
};

inline std::string levels_to_csv(const std::vector<LevelsRow>& rows) {
    std::string out = csv_join({"gamma", "xi_thm1", "xi_lu", "xi_peneva", "feasible"});
    for (const auto& r : rows)
        out += csv_join({fmt_g15(r.gamma), fmt_g15(r.xi_thm1), fmt_g15(r.xi_lu),
                         fmt_g15(r.xi_peneva), r.feasible ? "1" : "0"});
    return out;
}

inline std::vector<LevelsRow> levels_from_csv(const std::string& text) {
    auto rows = csv_parse(text);
    std::vector<LevelsRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        LevelsRow r;
        r.gamma = std::stod(rows[i][0]);
        r.xi_thm1 = std::stod(rows[i][1]);
        r.xi_lu = std::stod(rows[i][2]);
        r.xi_peneva = std::stod(rows[i][3]);
        r.feasible = rows[i][4] == "1";
        out.push_back(r);
    }
    return out;
}

inline nlohmann::json levels_to_json(const std::vector<LevelsRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"gamma", r.gamma},
                       {"xi_thm1", r.xi_thm1},
                       {"xi_lu", r.xi_lu},
                       {"xi_peneva", r.xi_peneva},
                       {"feasible", r.feasible}});
    return nlohmann::json{{"rows", arr}};
}

inline std::vector<LevelsRow> levels_from_json(const nlohmann::json& j) {
    std::vector<LevelsRow> out;
    for (const auto& e : j.at("rows"))
        out.push_back({e.at("gamma").get<double>(), e.at("xi_thm1").get<double>(),
                       e.at("xi_lu").get<double>(), e.at("xi_peneva").get<double>(),
                       e.at("feasible").get<bool>()});
    return out;
}

// ---------------------------------------------------------------------------
// Discrepancy report
// ---------------------------------------------------------------------------

inline std::string bv_to_csv(const DiscrepancyReport& rep) {
    std::string out = csv_join({"x", "gamma", "xi", "a", "A", "D", "pi_gamma", "total",
                                "reference_scale", "d", "count_in_class", "expected",
                                "abs_error"});
    for (const auto& row : rep.rows)
        out += csv_join({std::to_string(rep.x), fmt_g15(rep.gamma), fmt_g15(rep.xi),
                         std::to_string(rep.a), fmt_g15(rep.log_power),
                         std::to_string(rep.modulus_limit), std::to_string(rep.pi_gamma_count),
                         fmt_g15(rep.total), fmt_g15(rep.reference_scale), std::to_string(row.d),
                         std::to_string(row.count_in_class), fmt_g15(row.expected),
                         fmt_g15(row.abs_error)});
    return out;
}

inline DiscrepancyReport bv_from_csv(const std::string& text) {
    auto rows = csv_parse(text);
    DiscrepancyReport rep;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (i == 1) {
            rep.x = std::stoull(f[0]);
            rep.gamma = std::stod(f[1]);
            rep.xi = std::stod(f[2]);
            rep.a = std::stoll(f[3]);
            rep.log_power = std::stod(f[4]);
            rep.modulus_limit = std::stoull(f[5]);
            rep.pi_gamma_count = std::stoull(f[6]);
            rep.total = std::stod(f[7]);
            rep.reference_scale = std::stod(f[8]);
        }
        DiscrepancyRow row;
        row.d = std::stoull(f[9]);
        row.count_in_class = std::stoull(f[10]);
        row.expected = std::stod(f[11]);
        row.abs_error = std::stod(f[12]);
        rep.rows.push_back(row);
    }
    return rep;
}

inline nlohmann::json bv_to_json(const DiscrepancyReport& rep) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rep.rows)
        arr.push_back({{"d", row.d},
                       {"count_in_class", row.count_in_class},
                       {"expected", row.expected},
                       {"abs_error", row.abs_error}});
    return nlohmann::json{{"x", rep.x},
                          {"gamma", rep.gamma},
                          {"xi", rep.xi},
                          {"a", rep.a},
                          {"A", rep.log_power},
                          {"D", rep.modulus_limit},
                          {"pi_gamma", rep.pi_gamma_count},
                          {"total", rep.total},
                          {"reference_scale", rep.reference_scale},
                          {"rows", arr}};
}

inline DiscrepancyReport bv_from_json(const nlohmann::json& j) {
    DiscrepancyReport rep;
    rep.x = j.at("x").get<u64>();
    rep.gamma = j.at("gamma").get<double>();
    rep.xi = j.at("xi").get<double>();
    rep.a = j.at("a").get<i64>();
    rep.log_power = j.at("A").get<double>();
    rep.modulus_limit = j.at("D").get<u64>();
    rep.pi_gamma_count = j.at("pi_gamma").get<u64>();
    rep.total = j.at("total").get<double>();
    rep.reference_scale = j.at("reference_scale").get<double>();
    for (const auto& e : j.at("rows")) {
        DiscrepancyRow row;
        row.d = e.at("d").get<u64>();
        row.count_in_class = e.at("count_in_class").get<u64>();
        row.expected = e.at("expected").get<double>();
        row.abs_error = e.at("abs_error").get<double>();
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Scan records
// ---------------------------------------------------------------------------

inline std::string scan_to_csv(const std::vector<PsPrimeRecord>& recs) {
    std::string out = csv_join(
        {"p", "witness_n", "companion", "factors", "big_omega", "little_omega", "mobius", "spf"});
    for (const auto& r : recs)
        out += csv_join({std::to_string(r.p), std::to_string(r.witness_n),
                         std::to_string(r.companion.n), factors_to_string(r.companion),
                         std::to_string(r.companion.big_omega),
                         std::to_string(r.companion.little_omega),
                         std::to_string(r.companion.mobius), std::to_string(r.companion.spf)});
    return out;
}

inline std::vector<PsPrimeRecord> scan_from_csv(const std::string& text) {
    auto rows = csv_parse(text);
    std::vector<PsPrimeRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        PsPrimeRecord rec;
        rec.p = std::stoull(f[0]);
        rec.witness_n = std::stoull(f[1]);
        rec.companion = factors_from_string(std::stoull(f[2]), f[3]);
        out.push_back(rec);
    }
    return out;
}

inline nlohmann::json scan_to_json(const std::vector<PsPrimeRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs)
        arr.push_back({{"p", r.p},
                       {"witness_n", r.witness_n},
                       {"companion", r.companion.n},
                       {"factors", factors_to_string(r.companion)},
                       {"big_omega", r.companion.big_omega},
                       {"little_omega", r.companion.little_omega},
                       {"mobius", r.companion.mobius},
                       {"spf", r.companion.spf}});
    return nlohmann::json{{"records", arr}};
}

inline std::vector<PsPrimeRecord> scan_from_json(const nlohmann::json& j) {
    std::vector<PsPrimeRecord> out;
    for (const auto& e : j.at("records")) {
        PsPrimeRecord rec;
        rec.p = e.at("p").get<u64>();
        rec.witness_n = e.at("witness_n").get<u64>();
        rec.companion = factors_from_string(e.at("companion").get<u64>(),
                                            e.at("factors").get<std::string>());
        out.push_back(rec);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Small generic table (phi grids, integrals, single-value outputs)
// ---------------------------------------------------------------------------

inline std::string table_to_csv(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
    std::string out = csv_join(header);
    for (const auto& r : rows) out += csv_join(r);
    return out;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

}  // namespace psieve

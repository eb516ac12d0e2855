#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "psieve/harness.hpp"
#include "psieve/io.hpp"

using namespace psieve;
using Catch::Approx;

namespace {

// Independent PS-prime list: high-precision one-shot floors, no escalation path.
std::vector<u64> oracle_ps_primes(u64 x, double gamma) {
    std::vector<u64> out;
    mpfr_t t;
    mpfr_init2(t, 256);
    for (u64 n = 1;; ++n) {
        mpfr_set_ui(t, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_log(t, t, MPFR_RNDN);
        mpfr_div_d(t, t, gamma, MPFR_RNDN);
        mpfr_exp(t, t, MPFR_RNDN);
        u64 k = static_cast<u64>(mpfr_get_ui(t, MPFR_RNDD));
        if (k > x) break;
        if (k >= 2 && is_prime_u64(k)) out.push_back(k);
    }
    mpfr_clear(t);
    return out;
}

}  // namespace

TEST_CASE("discrepancy report basics") {
    PsGamma g = PsGamma::make(0.9);
    DiscrepancyReport rep = bv_discrepancy(2000, g, 0.3, 1);

    REQUIRE(!rep.rows.empty());
    CHECK(rep.rows[0].d == 1);
    CHECK(rep.rows[0].abs_error == 0.0);
    CHECK(rep.rows[0].count_in_class == rep.pi_gamma_count);
    CHECK(rep.modulus_limit == certified_floor_pow(2000, 0.3));

    // rows ascend over coprime moduli
    for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i - 1].d < rep.rows[i].d);

    // total is the ascending-d sum of row errors
    double total = 0;
    for (const auto& r : rep.rows) total += r.abs_error;
    CHECK(rep.total == total);

    CHECK_THROWS_AS(bv_discrepancy(2000, g, 0.3, 0), std::domain_error);
    CHECK_THROWS_AS(bv_discrepancy(2000, g, 0.6, 1), std::domain_error);
}

TEST_CASE("counts sum to pi_gamma over a full residue system") {
    PsGamma g = PsGamma::make(0.95);
    u64 x = 3000;
    auto primes = ps_primes_up_to(x, g);
    for (u64 d : {2ull, 3ull, 5ull, 7ull}) {
        u64 sum = 0;
        for (u64 r = 0; r < d; ++r) {
            u64 c = 0;
            for (auto [p, n] : primes)
                if (p % d == r) ++c;
            sum += c;
        }
        CHECK(sum == primes.size());
    }
}

TEST_CASE("discrepancy counts match an independent oracle") {
    PsGamma g = PsGamma::make(0.9);
    u64 x = 5000;
    double xi = 0.3;
    DiscrepancyReport rep = bv_discrepancy(x, g, xi, 1);

    auto primes = oracle_ps_primes(x, 0.9);
    REQUIRE(rep.pi_gamma_count == primes.size());
    for (const auto& row : rep.rows) {
        u64 want = 0;
        for (u64 p : primes)
            if (p % row.d == 1 % row.d) ++want;
        REQUIRE(row.count_in_class == want);
    }
}

TEST_CASE("total is invariant under residue shifts by lcm(1..D)") {
    PsGamma g = PsGamma::make(0.9);
    u64 x = 200;
    double xi = 0.3;  // D = floor(200^0.3) = 4
    u64 D = certified_floor_pow(x, xi);
    u64 L = 1;
    for (u64 d = 2; d <= D; ++d) L = std::lcm(L, d);
    DiscrepancyReport a1 = bv_discrepancy(x, g, xi, 1);
    DiscrepancyReport a2 = bv_discrepancy(x, g, xi, 1 + static_cast<i64>(L));
    DiscrepancyReport a3 = bv_discrepancy(x, g, xi, 1 - 2 * static_cast<i64>(L));
    CHECK(a1.total == a2.total);
    CHECK(a1.total == a3.total);
}

TEST_CASE("discrepancy total is monotone in xi") {
    PsGamma g = PsGamma::make(0.95);
    u64 x = 20000;
    double prev = -1.0;
    for (double xi : {0.2, 0.3, 0.35}) {
        double t = bv_discrepancy(x, g, xi, 1).total;
        CHECK(t >= prev);
        prev = t;
    }
}

TEST_CASE("report totals are identical across thread counts") {
    PsGamma g = PsGamma::make(0.9);
    DiscrepancyReport r1 = bv_discrepancy(20000, g, 0.35, 3, 2.0, 1);
    DiscrepancyReport r4 = bv_discrepancy(20000, g, 0.35, 3, 2.0, 4);
    CHECK(r1 == r4);

    BSetMainTerm b1 = b_set_main_term(300000, 0.999, 1e-9, 1);
    BSetMainTerm b4 = b_set_main_term(300000, 0.999, 1e-9, 4);
    CHECK(b1 == b4);
}

TEST_CASE("weighted remainder") {
    PsGamma g = PsGamma::make(0.9);
    u64 x = 5000;
    double xi = 0.3;
    double total = weighted_remainder(x, g, xi, 1);

    // oracle: assemble the same sum post hoc from an independent prime list
    u64 D = certified_floor_pow(x, xi);
    auto primes = oracle_ps_primes(x, 0.9);
    double want = 0.0;
    for (u64 d = 1; d <= D; d += 2) {
        auto sig = factorize(d);
        if (sig.mobius == 0) continue;  // squareful d contribute nothing
        u64 c = 0;
        for (u64 p : primes)
            if (p % d == 1 % d) ++c;
        double R = static_cast<double>(c) -
                   static_cast<double>(primes.size()) / static_cast<double>(euler_phi(d));
        want += std::pow(3.0, sig.little_omega) * std::abs(R);
    }
    CHECK(total == Approx(want).margin(1e-9));

    // d = 1 contributes zero: R(x, 1) = 0
    u64 c1 = 0;
    for (u64 p : primes)
        if (p % 1 == 0) ++c1;
    CHECK(static_cast<double>(c1) == static_cast<double>(primes.size()));
}

TEST_CASE("quadruple set") {
    // too small for four ascending primes above x^{3/32}
    u64 seen = 0;
    b_set_enumerate(100, 0.999, [&](const BSetRecord&) { ++seen; });
    CHECK(seen == 0);
    BSetMainTerm empty = b_set_main_term(100, 0.999);
    CHECK(empty.enumerated_sum == 0.0);
    CHECK(empty.records == 0);

    // structural checks on a populated range
    std::vector<BSetRecord> recs;
    b_set_enumerate(100000, 0.999, [&](const BSetRecord& r) { recs.push_back(r); });
    REQUIRE(!recs.empty());
    std::set<u64> seen_n;
    u64 z = certified_ceil_pow(100000, 3.0 / 32.0);
    for (const auto& r : recs) {
        CHECK(r.primes[0] < r.primes[1]);
        CHECK(r.primes[1] < r.primes[2]);
        CHECK(r.primes[2] < r.primes[3]);
        CHECK(r.primes[0] >= z);
        CHECK(r.n == r.primes[0] * r.primes[1] * r.primes[2] * r.primes[3]);
        CHECK(r.n <= 100000);
        CHECK(seen_n.insert(r.n).second);  // each n exactly once
    }

    // reversed-order oracle: p4 is the outer loop, p1 the innermost
    u64 x = 1000000;
    double gamma = 0.999;
    BSetMainTerm bt = b_set_main_term(x, gamma);
    u64 zmin = certified_ceil_pow(x, 3.0 / 32.0);
    auto base = sieve_primes(3000);
    std::vector<u64> rough;  // primes >= x^{3/32}
    for (u64 p : sieve_primes(x / (5 * 7 * 11)))
        if (p >= zmin) rough.push_back(p);
    REQUIRE(rough.size() >= 4);
    const u64 m0 = rough[0], m1 = rough[1], m2 = rough[2];
    double osum = 0.0;
    u64 ocount = 0;
    for (std::size_t l = 3; l < rough.size(); ++l) {
        u64 p4 = rough[l];
        if (u128(m0) * m1 * m2 * p4 > x) break;
        for (std::size_t k = 2; k < l; ++k) {
            u64 p3 = rough[k];
            if (u128(m0) * m1 * p3 * p4 > x) break;
            for (std::size_t j = 1; j < k; ++j) {
                u64 p2 = rough[j];
                if (u128(m0) * p2 * p3 * p4 > x) break;
                for (std::size_t i = 0; i < j; ++i) {
                    u64 p1 = rough[i];
                    u128 n = u128(p1) * p2 * p3 * p4;
                    if (n > x) break;
                    osum += gamma * std::pow(static_cast<double>(static_cast<u64>(n)), gamma - 1.0);
                    ++ocount;
                }
            }
        }
    }
    CHECK(bt.records == ocount);
    CHECK(bt.enumerated_sum == Approx(osum).epsilon(1e-12));
    CHECK(bt.integral_prediction > 0.0);
    CHECK(bt.ratio == Approx(bt.enumerated_sum / bt.integral_prediction));
}

TEST_CASE("csv and json round-trips") {
    PsGamma g = PsGamma::make(0.9);
    DiscrepancyReport rep = bv_discrepancy(2000, g, 0.3, 5);

    std::string csv = bv_to_csv(rep);
    DiscrepancyReport back = bv_from_csv(csv);
    CHECK(back.x == rep.x);
    CHECK(back.a == rep.a);
    CHECK(back.modulus_limit == rep.modulus_limit);
    CHECK(back.pi_gamma_count == rep.pi_gamma_count);
    CHECK(back.rows.size() == rep.rows.size());
    CHECK(bv_to_csv(back) == csv);  // emission is parse-stable

    nlohmann::json j = bv_to_json(rep);
    DiscrepancyReport jback = bv_from_json(nlohmann::json::parse(j.dump()));
    CHECK(jback == rep);  // json floats round-trip exactly

    auto recs = scan_p3(500, g, 3);
    std::string scsv = scan_to_csv(recs);
    auto rback = scan_from_csv(scsv);
    REQUIRE(rback.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(rback[i].p == recs[i].p);
        CHECK(rback[i].witness_n == recs[i].witness_n);
        CHECK(rback[i].companion == recs[i].companion);
    }
    CHECK(scan_to_csv(rback) == scsv);

    auto jrecs = scan_from_json(nlohmann::json::parse(scan_to_json(recs).dump()));
    REQUIRE(jrecs.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(jrecs[i].companion == recs[i].companion);

    std::vector<LevelsRow> lrows{{0.999, 0.34275, 0.24675, 0.165416, true},
                                 {0.9995, 0.3588, 0.24836, 0.16604, true}};
    CHECK(levels_from_csv(levels_to_csv(lrows)).size() == 2);
    CHECK(levels_to_csv(levels_from_csv(levels_to_csv(lrows))) == levels_to_csv(lrows));
    CHECK(levels_from_json(levels_to_json(lrows)) == lrows);

    // LF-only line endings
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(scsv.find('\r') == std::string::npos);
}

TEST_CASE("factor strings") {
    CHECK(factors_to_string(factorize(12)) == "2^2*3");
    CHECK(factors_to_string(factorize(1)) == "1");
    CHECK(factors_to_string(factorize(97)) == "97");
    FactorSignature sig = factors_from_string(12, "2^2*3");
    CHECK(sig == factorize(12));
}

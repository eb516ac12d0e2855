#pragma once

// Empirical measurement layer: the progression-discrepancy report for PS
// primes (one enumeration pass, bucketed by residue class), the
// mu^2 3^nu-weighted remainder sum, and the main term over the set of
// ordered prime quadruples n = p1 p2 p3 p4 with p1 >= x^{3/32}.
//
// All aggregation is order-fixed: worker shards produce, the merge always
// runs in ascending index order, so totals do not depend on the thread count.

#include <array>
#include <numeric>

#include "psieve/certified.hpp"
#include "psieve/ps.hpp"
#include "psieve/sieve_numerics.hpp"

namespace psieve {

// ---------------------------------------------------------------------------
// Discrepancy over progressions
// ---------------------------------------------------------------------------

struct DiscrepancyRow {
    u64 d = 0;
    u64 count_in_class = 0;  // #{PS primes p <= x : p = a (mod d)}
    double expected = 0;     // pi_gamma(x) / phi(d)
    double abs_error = 0;
    friend bool operator==(const DiscrepancyRow&, const DiscrepancyRow&) = default;
};

struct DiscrepancyReport {
    u64 x = 0;
    double gamma = 0;
    double xi = 0;
    i64 a = 0;
    double log_power = 2.0;  // the A in the reference scale x^gamma / (log x)^A
    u64 modulus_limit = 0;   // D = floor(x^xi), certified
    u64 pi_gamma_count = 0;
    double total = 0;            // sum of abs_error over d <= D with (d, a) = 1
    double reference_scale = 0;  // x^gamma / (log x)^A
    std::vector<DiscrepancyRow> rows;  // coprime moduli only, ascending d
    friend bool operator==(const DiscrepancyReport&, const DiscrepancyReport&) = default;
};

namespace detail {

inline u64 residue_mod(i64 a, u64 d) {
    i64 m = static_cast<i64>(d);
    return static_cast<u64>(((a % m) + m) % m);
}

inline u64 gcd_i64(i64 a, u64 d) {
    u64 ua = static_cast<u64>(a < 0 ? -a : a);
    return std::gcd(ua, d);
}

}  // namespace detail

// The report for given x, gamma, xi, residue a and log power A.  One pass
// enumerates the PS primes; rows for each modulus d <= D coprime to a are
// counted from the stored list (sharded over d when threads > 1).
inline DiscrepancyReport bv_discrepancy(u64 x, const PsGamma& g, double xi, i64 a,
                                        double log_power = 2.0, int threads = 1) {
    if (x < 2 || x > 1000000000ull) throw std::domain_error("bv_discrepancy: x out of range");
    if (a == 0) throw std::domain_error("bv_discrepancy: a must be nonzero");
    if (!(xi > 0.0) || !(xi < 0.5)) throw std::domain_error("bv_discrepancy: need 0 < xi < 1/2");

    DiscrepancyReport rep;
    rep.x = x;
    rep.gamma = g.gamma;
    rep.xi = xi;
    rep.a = a;
    rep.log_power = log_power;
    rep.modulus_limit = certified_floor_pow(x, xi, g.cert());
    if (rep.modulus_limit < 1) throw std::domain_error("bv_discrepancy: empty modulus range");

    std::vector<u64> primes;
    for (auto [p, n] : ps_primes_up_to(x, g, threads)) primes.push_back(p);
    rep.pi_gamma_count = primes.size();

    std::vector<u64> moduli;
    for (u64 d = 1; d <= rep.modulus_limit; ++d)
        if (detail::gcd_i64(a, d) == 1) moduli.push_back(d);

    std::vector<DiscrepancyRow> rows(moduli.size());
    parallel_chunks(moduli.size(), resolve_threads(threads), [&](std::size_t, std::size_t lo,
                                                                 std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            u64 d = moduli[i];
            u64 r = detail::residue_mod(a, d);
            u64 count = 0;
            for (u64 p : primes)
                if (p % d == r) ++count;
            DiscrepancyRow row;
            row.d = d;
            row.count_in_class = count;
            row.expected = static_cast<double>(rep.pi_gamma_count) /
                           static_cast<double>(euler_phi(d));
            row.abs_error = std::abs(static_cast<double>(count) - row.expected);
            rows[i] = row;
        }
    });

    rep.rows = std::move(rows);
    for (const auto& row : rep.rows) rep.total += row.abs_error;  // ascending d
    double lx = std::log(static_cast<double>(x));
    rep.reference_scale = std::pow(static_cast<double>(x), g.gamma) / std::pow(lx, log_power);
    return rep;
}

// sum over odd squarefree d <= D of 3^{nu(d)} |R(x, d)| with
// R(x, d) = #{PS primes p <= x, p = a (mod d)} - pi_gamma(x)/phi(d).
inline double weighted_remainder(u64 x, const PsGamma& g, double xi, i64 a, int threads = 1) {
    if (x < 2 || x > 1000000000ull) throw std::domain_error("weighted_remainder: x out of range");
    if (a == 0) throw std::domain_error("weighted_remainder: a must be nonzero");
    if (!(xi > 0.0) || !(xi < 0.5)) throw std::domain_error("weighted_remainder: need 0 < xi < 1/2");
    u64 D = certified_floor_pow(x, xi, g.cert());

    std::vector<u64> primes;
    for (auto [p, n] : ps_primes_up_to(x, g, threads)) primes.push_back(p);
    double pi_count = static_cast<double>(primes.size());

    std::vector<u64> moduli;
    for (u64 d = 1; d <= D; d += 2) {
        if (factorize(d).mobius == 0) continue;
        moduli.push_back(d);
    }
    std::vector<double> contrib(moduli.size(), 0.0);
    parallel_chunks(moduli.size(), resolve_threads(threads), [&](std::size_t, std::size_t lo,
                                                                 std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            u64 d = moduli[i];
            u64 r = detail::residue_mod(a, d);
            u64 count = 0;
            for (u64 p : primes)
                if (p % d == r) ++count;
            double remainder = static_cast<double>(count) -
                               pi_count / static_cast<double>(euler_phi(d));
            double weight = std::pow(3.0, factorize(d).little_omega);
            contrib[i] = weight * std::abs(remainder);
        }
    });
    double total = 0.0;
    for (double c : contrib) total += c;  // ascending d
    return total;
}

// ---------------------------------------------------------------------------
// The quadruple set B = { n <= x : n = p1 p2 p3 p4, x^{3/32} <= p1 < p2 < p3 < p4 }
// ---------------------------------------------------------------------------

struct BSetRecord {
    u64 n = 0;
    std::array<u64, 4> primes{};
    double weight = 0;  // gamma * n^{gamma - 1}
};

struct BSetMainTerm {
    u64 x = 0;
    double gamma = 0;
    double enumerated_sum = 0;      // sum over B of gamma n^{gamma-1}
    double integral_prediction = 0; // (x^gamma / log x) * triple integral
    double ratio = 0;
    u64 records = 0;
    friend bool operator==(const BSetMainTerm&, const BSetMainTerm&) = default;
};

namespace detail {

struct BSetLoops {
    std::vector<u64> primes;
    std::vector<std::size_t> p1_idx;
};

inline BSetLoops b_set_prepare(u64 x) {
    if (x < 2 || x > 100000000ull) throw std::domain_error("b_set: x out of range");
    BSetLoops bl;
    u64 p1_min = certified_ceil_pow(x, 3.0 / 32.0);
    // primes up to the largest possible p4 = x / (p1 p2 p3) <= x / p1_min^3
    u64 cube = p1_min * p1_min * p1_min;
    u64 p4_max = x / std::max<u64>(cube, 1);
    if (p4_max < 2) return bl;
    bl.primes = sieve_primes(p4_max);
    for (std::size_t i = 0; i < bl.primes.size(); ++i) {
        u64 p1 = bl.primes[i];
        if (p1 < p1_min) continue;
        if (u128(p1) * p1 * p1 * p1 >= x) break;
        bl.p1_idx.push_back(i);
    }
    return bl;
}

// Scans all quadruples with the given first prime.  Loop cutoffs follow the
// ordered-quadruple ranges: p1^4 < x, p1 p2^3 < x, p1 p2 p3^2 < x,
// p1 p2 p3 p4 <= x, all exact in 128-bit integer arithmetic.
template <class Sink>
void b_set_scan_p1(const BSetLoops& bl, u64 x, double gamma, std::size_t i, Sink&& sink) {
    const auto& primes = bl.primes;
    u64 p1 = primes[i];
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
        u64 p2 = primes[j];
        if (u128(p1) * p2 * p2 * p2 >= x) break;
        for (std::size_t k = j + 1; k < primes.size(); ++k) {
            u64 p3 = primes[k];
            if (u128(p1) * p2 * p3 * p3 >= x) break;
            u64 head = p1 * p2 * p3;
            for (std::size_t l = k + 1; l < primes.size(); ++l) {
                u64 p4 = primes[l];
                if (u128(head) * p4 > x) break;
                u64 n = head * p4;
                sink(BSetRecord{n, {p1, p2, p3, p4},
                                gamma * std::pow(static_cast<double>(n), gamma - 1.0)});
            }
        }
    }
}

}  // namespace detail

// Visits every record of B once, ascending in (p1, p2, p3, p4).
template <class Visit>
void b_set_enumerate(u64 x, double gamma, Visit&& visit) {
    detail::BSetLoops bl = detail::b_set_prepare(x);
    for (std::size_t i : bl.p1_idx) detail::b_set_scan_p1(bl, x, gamma, i, visit);
}

inline BSetMainTerm b_set_main_term(u64 x, double gamma, double tol = 1e-9, int threads = 1) {
    BSetMainTerm out;
    out.x = x;
    out.gamma = gamma;

    // per-p1 subtotals, merged in p1 order: the float sum is thread-invariant
    detail::BSetLoops bl = detail::b_set_prepare(x);
    std::vector<double> subtotal(bl.p1_idx.size(), 0.0);
    std::vector<u64> sub_n(bl.p1_idx.size(), 0);
    parallel_chunks(bl.p1_idx.size(), resolve_threads(threads),
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i)
                            detail::b_set_scan_p1(bl, x, gamma, bl.p1_idx[i],
                                                  [&](const BSetRecord& r) {
                                                      subtotal[i] += r.weight;
                                                      sub_n[i] += 1;
                                                  });
                    });
    for (double s : subtotal) out.enumerated_sum += s;
    for (u64 c : sub_n) out.records += c;

    double lx = std::log(static_cast<double>(x));
    out.integral_prediction =
        std::pow(static_cast<double>(x), gamma) / lx * detail::triple_integral_cached(tol);
    out.ratio = out.enumerated_sum / out.integral_prediction;
    return out;
}

}  // namespace psieve

#pragma once

// Exact 64-bit integer substrate: segmented prime sieve, factorization
// (trial division -> Miller-Rabin -> Pollard-Brent), and the standard
// arithmetic functions phi, tau, mu, Lambda built on top of it.
// Lambda is kept symbolic (base prime + flag) so downstream identity
// checks can compare log-combinations exactly.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "psieve/common.hpp"

namespace psieve {

// ---------------------------------------------------------------------------
// Sieve of Eratosthenes, segmented.
// ---------------------------------------------------------------------------

// Primes <= limit, ascending.  limit < 2 yields an empty list.
inline std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 2;

    // base primes up to sqrt(limit) by a plain sieve
    std::vector<bool> small(root + 1, true);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        if (i <= limit) base.push_back(i);
        for (u64 j = i * i; j <= root; j += i) small[j] = false;
    }

    primes.reserve(static_cast<std::size_t>(
        limit > 16 ? 1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) : 8));
    for (u64 p : base)
        if (p <= limit) primes.push_back(p);

    const u64 seg_len = 1u << 16;
    std::vector<bool> seg;
    for (u64 lo = root + 1; lo <= limit; lo += seg_len) {
        u64 hi = std::min(limit, lo + seg_len - 1);
        seg.assign(static_cast<std::size_t>(hi - lo + 1), true);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (u64 j = start; j <= hi; j += p) seg[static_cast<std::size_t>(j - lo)] = false;
        }
        for (u64 j = lo; j <= hi; ++j)
            if (seg[static_cast<std::size_t>(j - lo)]) primes.push_back(j);
    }
    return primes;
}

// One segment [lo, hi] marked against the given base primes (which must cover
// sqrt(hi)).  Disjoint segments are independent, so callers may fill them from
// different threads and concatenate in segment order.
inline std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base) {
    std::vector<u64> out;
    if (hi < 2 || hi < lo) return out;
    lo = std::max<u64>(lo, 2);
    std::vector<bool> seg(static_cast<std::size_t>(hi - lo + 1), true);
    for (u64 p : base) {
        if (p * p > hi) break;
        u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (u64 j = start; j <= hi; j += p) seg[static_cast<std::size_t>(j - lo)] = false;
    }
    for (u64 j = lo; j <= hi; ++j)
        if (seg[static_cast<std::size_t>(j - lo)]) out.push_back(j);
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic 64-bit primality and Pollard-Brent factorization.
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Miller-Rabin with the 12-witness set, deterministic for the full 64-bit range.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
    // n must be odd, composite, not a prime power caught by trial division.
    u64 seed = 1;
    while (true) {
        ++seed;
        u64 y = seed, c = seed ^ 0x9e3779b97f4a7c15ull;
        c %= n;
        if (c == 0) c = 1;
        u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

// Shared trial-division table (primes <= 1e6), built once.
inline const std::vector<u64>& trial_primes() {
    static const std::vector<u64> table = sieve_primes(1000000);
    return table;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FactorSignature
// ---------------------------------------------------------------------------

struct PrimePower {
    u64 prime;
    u32 exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Complete factorization of n with the derived classification data:
// big_omega counts with multiplicity, little_omega counts distinct primes,
// mobius is 0 on squareful n and (-1)^little_omega otherwise, spf is the
// smallest prime factor (0 for n = 1, which has none).
struct FactorSignature {
    u64 n = 1;
    std::vector<PrimePower> factors;  // ascending by prime
    u32 big_omega = 0;
    u32 little_omega = 0;
    int mobius = 1;
    u64 spf = 0;

    u64 reassemble() const {
        u64 prod = 1;
        for (const auto& f : factors)
            for (u32 i = 0; i < f.exponent; ++i) prod *= f.prime;
        return prod;
    }
    friend bool operator==(const FactorSignature&, const FactorSignature&) = default;
};

inline FactorSignature factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    FactorSignature sig;
    sig.n = n;
    if (n == 1) return sig;

    std::vector<std::pair<u64, u32>> found;
    u64 rem = n;
    for (u64 p : detail::trial_primes()) {
        if (p * p > rem) break;
        if (rem % p == 0) {
            u32 e = 0;
            while (rem % p == 0) { rem /= p; ++e; }
            found.emplace_back(p, e);
        }
    }
    // rem is now 1, a prime, or a product of primes > 1e6 (at most three fit in 64 bits)
    std::vector<u64> hard;
    if (rem > 1) hard.push_back(rem);
    while (!hard.empty()) {
        u64 m = hard.back();
        hard.pop_back();
        if (is_prime_u64(m)) {
            bool merged = false;
            for (auto& f : found)
                if (f.first == m) { ++f.second; merged = true; break; }
            if (!merged) found.emplace_back(m, 1);
            continue;
        }
        u64 d = detail::pollard_brent(m);
        hard.push_back(d);
        hard.push_back(m / d);
    }

    std::sort(found.begin(), found.end());
    for (auto [p, e] : found) {
        sig.factors.push_back({p, e});
        sig.big_omega += e;
        sig.little_omega += 1;
        if (e >= 2) sig.mobius = 0;
    }
    if (sig.mobius != 0) sig.mobius = (sig.little_omega % 2 == 0) ? 1 : -1;
    sig.spf = sig.factors.front().prime;
    return sig;
}

// ---------------------------------------------------------------------------
// Standard arithmetic functions (computed from the factor signature)
// ---------------------------------------------------------------------------

inline u64 euler_phi(const FactorSignature& sig) {
    u64 r = 1;
    for (const auto& f : sig.factors) {
        r *= f.prime - 1;
        for (u32 i = 1; i < f.exponent; ++i) r *= f.prime;
    }
    return r;
}
inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

inline u64 divisor_count(const FactorSignature& sig) {
    u64 r = 1;
    for (const auto& f : sig.factors) r *= f.exponent + 1;
    return r;
}
inline u64 divisor_count(u64 n) { return divisor_count(factorize(n)); }

inline int mobius_mu(u64 n) { return factorize(n).mobius; }

// Lambda(n) held symbolically: log(prime) when n is a prime power, else 0.
struct VonMangoldt {
    u64 prime = 0;           // base prime when is_prime_power
    bool is_prime_power = false;
    double value() const { return is_prime_power ? std::log(static_cast<double>(prime)) : 0.0; }
    friend bool operator==(const VonMangoldt&, const VonMangoldt&) = default;
};

inline VonMangoldt von_mangoldt(u64 n) {
    if (n == 0) throw std::domain_error("von_mangoldt: n must be positive");
    FactorSignature sig = factorize(n);
    if (sig.little_omega == 1) return {sig.factors[0].prime, true};
    return {};
}

// Omega(n) <= r, the almost-prime test.
inline bool is_almost_prime(u64 n, u32 r) {
    if (n < 2) throw std::domain_error("is_almost_prime: n must be >= 2");
    if (r < 1) throw std::domain_error("is_almost_prime: r must be >= 1");
    return factorize(n).big_omega <= r;
}

// All divisors of n, ascending.
inline std::vector<u64> divisors(u64 n) {
    FactorSignature sig = factorize(n);
    std::vector<u64> divs{1};
    for (const auto& f : sig.factors) {
        std::size_t sz = divs.size();
        u64 pe = 1;
        for (u32 i = 1; i <= f.exponent; ++i) {
            pe *= f.prime;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// ---------------------------------------------------------------------------
// Exact integer-coefficient combinations of logarithms, stored on the prime
// basis (sum of c_p * log p).  log m expands through the factorization of m,
// so equality checks are exact integer comparisons.
// ---------------------------------------------------------------------------

struct LogCombination {
    std::map<u64, i64> coeff;  // prime -> integer coefficient

    void add_log(u64 m, i64 c) {
        if (m == 1 || c == 0) return;
        for (const auto& f : factorize(m).factors) {
            i64& slot = coeff[f.prime];
            slot += c * static_cast<i64>(f.exponent);
            if (slot == 0) coeff.erase(f.prime);
        }
    }
    bool is_zero() const { return coeff.empty(); }
    double value() const {
        double v = 0;
        for (auto [p, c] : coeff) v += static_cast<double>(c) * std::log(static_cast<double>(p));
        return v;
    }
    friend bool operator==(const LogCombination&, const LogCombination&) = default;
};

// Lambda(n) as an exact log-combination.
inline LogCombination von_mangoldt_symbolic(u64 n) {
    LogCombination lc;
    VonMangoldt vm = von_mangoldt(n);
    if (vm.is_prime_power) lc.add_log(vm.prime, 1);
    return lc;
}

}  // namespace psieve

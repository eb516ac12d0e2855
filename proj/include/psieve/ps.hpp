#pragma once

// Piatetski-Shapiro machinery: the certified indicator
//   [-k^gamma] - [-(k+1)^gamma]  =  ceil((k+1)^gamma) - ceil(k^gamma),
// witness enumeration k = floor(n^{1/gamma}), the counting function
// pi_gamma(x), and the scanner for PS primes p with Omega(p+2) <= r.
//
// Enumeration iterates witnesses n rather than candidates k: for gamma < 1
// the map n -> floor(n^{1/gamma}) is strictly increasing (the derivative
// (1/gamma) n^{1/gamma - 1} exceeds 1), so the stream is duplicate-free and
// each emitted index costs one certified root.

#include <functional>
#include <vector>

#include "psieve/arith.hpp"
#include "psieve/certified.hpp"

namespace psieve {

struct PsGamma {
    double gamma;
    int precision_bits = 64;  // starting mantissa width for certification
    int guard_ulps = 4;       // guard band, in ulps of the working precision

    static PsGamma make(double gamma, int precision_bits = 64, int guard_ulps = 4) {
        if (!(gamma > 0.5) || !(gamma < 1.0))
            throw std::domain_error("PsGamma: gamma must lie in (1/2, 1)");
        if (precision_bits < 53 || guard_ulps < 1)
            throw std::domain_error("PsGamma: bad precision configuration");
        return PsGamma{gamma, precision_bits, guard_ulps};
    }
    CertifyConfig cert() const { return CertifyConfig{precision_bits, 512, guard_ulps}; }
};

struct PsPrimeRecord {
    u64 p = 0;          // the PS prime
    u64 witness_n = 0;  // p = floor(witness_n^{1/gamma}), certified
    FactorSignature companion;  // factorization of p + 2
};

// The indicator of k being a PS index: 1 iff some integer n satisfies
// k^gamma <= n < (k+1)^gamma.
inline int ps_indicator(u64 k, const PsGamma& g) {
    if (k == 0) throw std::domain_error("ps_indicator: k must be positive");
    u64 lo = certified_ceil_pow(k, g.gamma, g.cert());
    u64 hi = certified_ceil_pow(k + 1, g.gamma, g.cert());
    return static_cast<int>(hi - lo);
}

// Number of witnesses mapping into [1, x]: n has floor(n^{1/gamma}) <= x iff
// n < (x+1)^gamma, so the count is ceil((x+1)^gamma) - 1, certified.
inline u64 witness_count(u64 x, const PsGamma& g) {
    return certified_ceil_pow(x + 1, g.gamma, g.cert()) - 1;
}

// Streams (k, witness_n) for every PS index k <= x, ascending in k.
// visit returns false to stop early.
inline void ps_enumerate_visit(u64 x, const PsGamma& g,
                               const std::function<bool(u64 k, u64 n)>& visit) {
    if (x == 0) throw std::domain_error("ps_enumerate: x must be positive");
    CertifyConfig cfg = g.cert();
    for (u64 n = 1;; ++n) {
        u64 k = certified_floor_root(n, g.gamma, cfg);
        if (k > x) return;
        if (!visit(k, n)) return;
    }
}

inline std::vector<std::pair<u64, u64>> ps_enumerate(u64 x, const PsGamma& g, int threads = 1) {
    if (x == 0) throw std::domain_error("ps_enumerate: x must be positive");
    u64 total = witness_count(x, g);
    std::vector<std::pair<u64, u64>> out(total);
    parallel_chunks(total, resolve_threads(threads),
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        CertifyConfig cfg = g.cert();
                        for (std::size_t i = lo; i < hi; ++i) {
                            u64 n = static_cast<u64>(i) + 1;
                            out[i] = {certified_floor_root(n, g.gamma, cfg), n};
                        }
                    });
    return out;
}

// PS primes <= x with their witnesses, ascending.  Sharded over witness
// ranges; shard results merge in witness order, so the output does not
// depend on the thread count.
inline std::vector<std::pair<u64, u64>> ps_primes_up_to(u64 x, const PsGamma& g,
                                                        int threads = 1) {
    u64 total = witness_count(x, g);
    int nthreads = resolve_threads(threads);
    std::vector<std::vector<std::pair<u64, u64>>> shard(
        std::max<std::size_t>(1, std::min<std::size_t>(nthreads, total)));
    parallel_chunks(total, nthreads, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        CertifyConfig cfg = g.cert();
        for (std::size_t i = lo; i < hi; ++i) {
            u64 n = static_cast<u64>(i) + 1;
            u64 k = certified_floor_root(n, g.gamma, cfg);
            if (k >= 2 && is_prime_u64(k)) shard[c].emplace_back(k, n);
        }
    });
    std::vector<std::pair<u64, u64>> out;
    for (const auto& s : shard) out.insert(out.end(), s.begin(), s.end());
    return out;
}

// #{p <= x : p prime, p = floor(n^{1/gamma})}
inline u64 pi_gamma(u64 x, const PsGamma& g, int threads = 1) {
    if (x < 2) throw std::domain_error("pi_gamma: x must be >= 2");
    u64 total = witness_count(x, g);
    int nthreads = resolve_threads(threads);
    std::vector<u64> counts(std::max<std::size_t>(1, std::min<std::size_t>(nthreads, total)), 0);
    parallel_chunks(total, nthreads, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        CertifyConfig cfg = g.cert();
        for (std::size_t i = lo; i < hi; ++i) {
            u64 k = certified_floor_root(static_cast<u64>(i) + 1, g.gamma, cfg);
            if (k >= 2 && is_prime_u64(k)) ++counts[c];
        }
    });
    u64 sum = 0;
    for (u64 c : counts) sum += c;
    return sum;
}

// All PS primes p <= x with Omega(p+2) <= r, each carrying the full factor
// signature of p + 2.
inline std::vector<PsPrimeRecord> scan_p3(u64 x, const PsGamma& g, u32 r, int threads = 1) {
    if (x < 5) throw std::domain_error("scan_p3: x must be >= 5");
    if (r < 1) throw std::domain_error("scan_p3: r must be >= 1");
    u64 total = witness_count(x, g);
    int nthreads = resolve_threads(threads);
    std::vector<std::vector<PsPrimeRecord>> shard(
        std::max<std::size_t>(1, std::min<std::size_t>(nthreads, total)));
    parallel_chunks(total, nthreads, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        CertifyConfig cfg = g.cert();
        for (std::size_t i = lo; i < hi; ++i) {
            u64 n = static_cast<u64>(i) + 1;
            u64 k = certified_floor_root(n, g.gamma, cfg);
            if (k >= 2 && is_prime_u64(k)) {
                FactorSignature sig = factorize(k + 2);
                if (sig.big_omega <= r) shard[c].push_back(PsPrimeRecord{k, n, std::move(sig)});
            }
        }
    });
    std::vector<PsPrimeRecord> out;
    for (auto& s : shard)
        for (auto& rec : s) out.push_back(std::move(rec));
    return out;
}

}  // namespace psieve

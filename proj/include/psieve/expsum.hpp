#pragma once

// Executable exponential-sum toolbox: the sawtooth psi and its truncated
// Fourier expansion, exact sums of e(h n^gamma) over arithmetic progressions,
// the reference envelope from the progression estimate, the near-solution
// counting function, lcm power sums, and the three-fold combinatorial
// decomposition of Lambda(n) checked symbolically.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "psieve/arith.hpp"
#include "psieve/exponent_pairs.hpp"

namespace psieve {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// psi(t) = t - [t] - 1/2, in [-1/2, 1/2).
inline double psi_saw(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f -= 1.0;  // guard against floor rounding at huge t
    return f - 0.5;
}

// Distance to the nearest integer.
inline double dist_to_int(double t) {
    double f = t - std::floor(t);
    return std::min(f, 1.0 - f);
}

// Truncation weight g(t, H) = min(1, 1/(H ||t||)).
inline double truncation_weight(double t, u64 H) {
    double d = dist_to_int(t);
    if (d <= 0.0) return 1.0;
    return std::min(1.0, 1.0 / (static_cast<double>(H) * d));
}

// Fourier coefficient envelope |b_h| <= min(log(2H)/H, 1/|h|, H/h^2).
struct FourierTruncation {
    u64 H;
    explicit FourierTruncation(u64 H_) : H(H_) {
        if (H == 0) throw std::domain_error("FourierTruncation: H must be positive");
    }
    double coeff_bound(i64 h) const {
        if (h == 0) return std::log(2.0 * static_cast<double>(H)) / static_cast<double>(H);
        double ah = std::abs(static_cast<double>(h));
        return std::min({std::log(2.0 * static_cast<double>(H)) / static_cast<double>(H),
                         1.0 / ah, static_cast<double>(H) / (ah * ah)});
    }
    double weight(double t) const { return truncation_weight(t, H); }
};

struct TruncationResidual {
    double residual;
    double weight;
};

// residual = |psi(t) + sum_{0<|h|<=H} e(th)/(2 pi i h)|, weight = g(t,H).
// The h and -h terms are conjugate, so the sum is real; the accumulated
// imaginary part must stay below 1e-12.
inline TruncationResidual psi_truncation_residual(double t, u64 H) {
    if (H == 0) throw std::domain_error("psi_truncation_residual: H must be positive");
    std::complex<double> sum = 0.0;
    for (u64 h = 1; h <= H; ++h) {
        double ang = two_pi * t * static_cast<double>(h);
        std::complex<double> e_pos(std::cos(ang), std::sin(ang));
        std::complex<double> e_neg = std::conj(e_pos);
        std::complex<double> denom(0.0, two_pi * static_cast<double>(h));
        sum += e_pos / denom - e_neg / denom;
    }
    if (std::abs(sum.imag()) >= 1e-12)
        throw std::runtime_error("psi_truncation_residual: imaginary part failed to cancel");
    return {std::abs(psi_saw(t) + sum.real()), truncation_weight(t, H)};
}

// ---------------------------------------------------------------------------
// Exponential sums over arithmetic progressions
// ---------------------------------------------------------------------------

// A dyadic block (X, 2X].
struct DyadicRange {
    u64 X;
    explicit DyadicRange(u64 X_) : X(X_) {
        if (X == 0) throw std::domain_error("DyadicRange: X must be >= 1");
    }
};

// sum over X < n <= X1, n = a (mod d) of e(h n^gamma); h = 0 degenerates to
// the progression count.
inline std::complex<double> ap_exp_sum(u64 X, u64 X1, u64 d, i64 a, i64 h, double gamma) {
    if (d == 0) throw std::domain_error("ap_exp_sum: modulus must be positive");
    if (!(X < X1)) throw std::domain_error("ap_exp_sum: need X < X1");
    u64 r = static_cast<u64>(((a % static_cast<i64>(d)) + static_cast<i64>(d)) %
                             static_cast<i64>(d));
    u64 first = X + 1;
    u64 offset = (r + d - first % d) % d;
    std::complex<double> sum = 0.0;
    for (u64 n = first + offset; n <= X1; n += d) {
        if (h == 0) {
            sum += 1.0;
        } else {
            double ang = two_pi * static_cast<double>(h) *
                         std::pow(static_cast<double>(n), gamma);
            sum += std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }
    return sum;
}

inline std::complex<double> ap_exp_sum(DyadicRange r, u64 d, i64 a, i64 h, double gamma) {
    return ap_exp_sum(r.X, 2 * r.X, d, a, h, gamma);
}

// Reference envelope min(X/d, X^{1-gamma}/(d|h|) + d^{k-l} |h|^k X^{k g - k + l})
// with implied constant 1.  A comparison yardstick, not a theorem constant.
inline double progression_sum_envelope(double X, u64 d, i64 h, double gamma, const ExponentPair& pair) {
    if (d == 0) throw std::domain_error("progression_sum_envelope: modulus must be positive");
    if (h == 0) throw std::domain_error("progression_sum_envelope: h must be nonzero");
    if (!validate_pair(pair)) throw std::domain_error("progression_sum_envelope: invalid exponent pair");
    double kappa = pair.kappa.get_d();
    double ell = pair.ell.get_d();
    double dd = static_cast<double>(d);
    double ah = std::abs(static_cast<double>(h));
    double trivial = X / dd;
    double main = std::pow(X, 1.0 - gamma) / (dd * ah) +
                  std::pow(dd, kappa - ell) * std::pow(ah, kappa) *
                      std::pow(X, kappa * gamma - kappa + ell);
    return std::min(trivial, main);
}

// ---------------------------------------------------------------------------
// N(Delta): solutions of |h1 n1^alpha - h2 n2^alpha| <= Delta with
// h1, h2 in (J, 2J] and n1, n2 in (N, 2N], by exhaustive enumeration.
// ---------------------------------------------------------------------------

inline u64 count_near_solutions(double delta, u64 J, u64 N, double alpha) {
    if (delta < 0) throw std::domain_error("count_near_solutions: Delta must be >= 0");
    if (J == 0 || N == 0) throw std::domain_error("count_near_solutions: J, N must be positive");
    if (!(alpha > 0.5) || !(alpha < 1.0))
        throw std::domain_error("count_near_solutions: alpha must lie in (1/2, 1)");
    if (J * N > 4000)
        throw std::domain_error("count_near_solutions: JN exceeds the brute-force guard; "
                                "use sampling mode");
    std::vector<double> v;
    v.reserve(J * N);
    for (u64 h = J + 1; h <= 2 * J; ++h)
        for (u64 n = N + 1; n <= 2 * N; ++n)
            v.push_back(static_cast<double>(h) * std::pow(static_cast<double>(n), alpha));
    u64 count = 0;
    for (double a : v)
        for (double b : v)
            if (std::abs(a - b) <= delta) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// lcm power sums  S(D, e) = sum_{d1, d2 <= D} [d1, d2]^{-e}
// ---------------------------------------------------------------------------

inline double lcm_power_sum(u64 D, double e) {
    if (D == 0) throw std::domain_error("lcm_power_sum: D must be positive");
    if (D > 5000) throw std::domain_error("lcm_power_sum: D exceeds the quadratic-loop guard");
    if (!(e > 0)) throw std::domain_error("lcm_power_sum: exponent must be positive");
    double sum = 0.0;
    for (u64 d1 = 1; d1 <= D; ++d1) {
        sum += std::pow(static_cast<double>(d1), -e);  // diagonal
        for (u64 d2 = 1; d2 < d1; ++d2) {
            u64 l = d1 / std::gcd(d1, d2) * d2;
            sum += 2.0 * std::pow(static_cast<double>(l), -e);
        }
    }
    return sum;
}

// Exact variant for integer exponents.
inline mpq_class lcm_power_sum_exact(u64 D, unsigned e) {
    if (D == 0 || D > 5000) throw std::domain_error("lcm_power_sum_exact: D out of range");
    if (e == 0) throw std::domain_error("lcm_power_sum_exact: exponent must be positive");
    mpq_class sum = 0;
    for (u64 d1 = 1; d1 <= D; ++d1) {
        for (u64 d2 = 1; d2 <= D; ++d2) {
            u64 l = d1 / std::gcd(d1, d2) * d2;
            mpz_class le = 1;
            for (unsigned i = 0; i < e; ++i) le *= static_cast<unsigned long>(l);
            sum += mpq_class(1) / mpq_class(le);
        }
    }
    sum.canonicalize();
    return sum;
}

// ---------------------------------------------------------------------------
// The three-fold decomposition of Lambda(n) on (X, 2X]:
//   Lambda(n) = sum_{j=1}^{3} binom(3,j) (-1)^{j-1}
//               sum_{m1...m_{2j} = n, m1..mj <= X^{1/3}} mu(m1)...mu(mj) log m_{2j},
// accumulated as an exact integer-coefficient log-combination.
//
// The tuple sums collapse onto the divisor lattice: writing n = u * v * w with
// u the product of the mu-constrained slots, v the product of the j-1 free
// slots, and w the log carrier,
//   coeff(log w) = sum_{u v = n/w} A_j(u) * d_{j-1}(v),
// where A_j(u) sums mu over ordered j-tuples of divisors <= X^{1/3} with
// product u and d_k counts ordered k-tuples.  Both recurse over divisors and
// are memoized per call.
// ---------------------------------------------------------------------------

inline LogCombination heath_brown_lambda(u64 n, u64 X) {
    if (X == 0 || X > 1000) throw std::domain_error("heath_brown_lambda: X out of range (<= 1000)");
    if (!(n > X && n <= 2 * X))
        throw std::domain_error("heath_brown_lambda: n must lie in (X, 2X]");

    auto within_cube = [X](u64 m) { return m * m * m <= X; };

    std::map<std::pair<u64, int>, i64> a_memo;  // A_j(u)
    std::function<i64(u64, int)> A = [&](u64 u, int j) -> i64 {
        if (j == 0) return u == 1 ? 1 : 0;
        auto key = std::make_pair(u, j);
        auto it = a_memo.find(key);
        if (it != a_memo.end()) return it->second;
        i64 total = 0;
        for (u64 s : divisors(u)) {
            if (!within_cube(s)) continue;
            int mu = mobius_mu(s);
            if (mu == 0) continue;
            total += static_cast<i64>(mu) * A(u / s, j - 1);
        }
        a_memo.emplace(key, total);
        return total;
    };

    std::map<std::pair<u64, int>, i64> d_memo;  // ordered k-tuple counts
    std::function<i64(u64, int)> Dk = [&](u64 v, int k) -> i64 {
        if (k == 0) return v == 1 ? 1 : 0;
        if (k == 1) return 1;
        auto key = std::make_pair(v, k);
        auto it = d_memo.find(key);
        if (it != d_memo.end()) return it->second;
        i64 total = 0;
        for (u64 s : divisors(v)) total += Dk(v / s, k - 1);
        d_memo.emplace(key, total);
        return total;
    };

    const i64 binom3[4] = {0, 3, 3, 1};
    LogCombination result;
    for (int j = 1; j <= 3; ++j) {
        i64 outer = binom3[j] * ((j % 2 == 1) ? 1 : -1);
        for (u64 w : divisors(n)) {
            if (w == 1) continue;  // log 1 contributes nothing
            u64 q = n / w;
            i64 coeff = 0;
            for (u64 u : divisors(q)) coeff += A(u, j) * Dk(q / u, j - 1);
            result.add_log(w, outer * coeff);
        }
    }
    return result;
}

}  // namespace psieve

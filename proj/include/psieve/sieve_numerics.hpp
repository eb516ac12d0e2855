#pragma once

// The weighted-sieve numerics: the linear-sieve bounds F and f, the
// logarithmic weights, the two sieve integrals, the bracket functional
//   Phi(g) = log(32 xi/3 - 1)/xi
//            - lambda * I_richert(u, xi)
//            - (lambda/xi) * I_triple
// with xi the theorem-1 level at gamma = g, u = 1/xi, lambda = 1/(5 - u),
// and the bisection root-finder recovering the gamma threshold Phi = 0.
//
// Phi is evaluated at the eps -> 0 limit by default; pass eps > 0 for the
// perturbed weights u = 1/xi + eps, lambda = 1/(5 - u - eps).

#include <cmath>
#include <map>
#include <mutex>

#include "psieve/levels.hpp"
#include "psieve/quadrature.hpp"

namespace psieve {

// Euler-Mascheroni constant, 30 digits.
inline constexpr double euler_c0 = 0.577215664901532860606512090082;

// Upper linear-sieve bound F(s) = 2 e^{C0} / s on 0 < s <= 3.
inline double upper_F(double s) {
    if (!(s > 0.0) || !(s <= 3.0)) throw std::domain_error("upper_F: s must lie in (0, 3]");
    return 2.0 * std::exp(euler_c0) / s;
}

// Lower linear-sieve bound f(s) = 2 e^{C0} log(s-1) / s on 2 <= s <= 4.
inline double lower_f(double s) {
    if (!(s >= 2.0) || !(s <= 4.0)) throw std::domain_error("lower_f: s must lie in [2, 4]");
    return 2.0 * std::exp(euler_c0) * std::log(s - 1.0) / s;
}

// ---------------------------------------------------------------------------
// Logarithmic weights
// ---------------------------------------------------------------------------

struct SieveWeights {
    double u;       // 1/xi + eps
    double lambda;  // 1/(5 - u - eps)
    static constexpr double z_exp = 3.0 / 32.0;

    static SieveWeights make(double xi, double eps) {
        if (!(xi > 0)) throw std::domain_error("SieveWeights: xi must be positive");
        double u = 1.0 / xi + eps;
        if (!(u + eps < 5.0)) throw std::domain_error("SieveWeights: need u + eps < 5");
        if (!(u < 32.0 / 3.0)) throw std::domain_error("SieveWeights: need u < 32/3");
        return SieveWeights{u, 1.0 / (5.0 - u - eps)};
    }
};

// Per-prime weight term 1 - u log p / log x for p inside the window
// [x^{3/32}, x^{1/u}].  The full weight is W_a = 1 - lambda * sum of terms.
inline double richert_weight_term(u64 p, double x, const SieveWeights& w) {
    double lp = std::log(static_cast<double>(p));
    double lx = std::log(x);
    const double slack = 1e-12 * lx;
    if (lp < SieveWeights::z_exp * lx - slack || lp > lx / w.u + slack)
        throw std::domain_error("richert_weight_term: p outside the weight window");
    return 1.0 - w.u * lp / lx;
}

// ---------------------------------------------------------------------------
// The Richert integral  I(u, xi) = int_u^{32/3} (b - u) / (b (xi b - 1)) db.
// Requires u >= 1/xi; at u = 1/xi the integrand has a removable singularity
// at the left endpoint with limit value 1, which is substituted inside a
// 1e-8 neighborhood.
// ---------------------------------------------------------------------------

inline QuadratureResult richert_integral(double u, double xi, double tol) {
    if (!(xi > 0)) throw std::domain_error("richert_integral: xi must be positive");
    const double upper = 32.0 / 3.0;
    if (u >= upper) return QuadratureResult{0.0, 0.0, 0, true};
    if (u * xi < 1.0 - 1e-9)
        throw std::domain_error("richert_integral: xi*b - 1 <= 0 inside the range (u < 1/xi)");
    auto integrand = [u, xi](double b) {
        double denom = xi * b - 1.0;
        if (denom < 1e-8) return 1.0;  // removable-limit branch at b ~ 1/xi
        return (b - u) / (b * denom);
    };
    return integrate_adaptive(integrand, u, upper, tol);
}

// ---------------------------------------------------------------------------
// The triple sieve integral
//   int_{3/32}^{1/4} dt1/t1 int_{t1}^{(1-t1)/3} dt2/t2
//       int_{t2}^{(1-t1-t2)/2} dt3 / (t3 (1-t1-t2-t3)),
// evaluated by three nested adaptive passes, each at tol/2.  The propagated
// certificate stays below tol because the inner errors integrate over ranges
// of width < 1/4.
// ---------------------------------------------------------------------------

inline QuadratureResult triple_integral(double tol) {
    if (!(tol > 0)) throw std::domain_error("triple_integral: tol must be positive");
    const double t1_lo = 3.0 / 32.0, t1_hi = 0.25;
    const double tol_mid = tol / 2.0, tol_in = tol / 2.0;
    long long evals = 0;
    bool all_converged = true;

    auto middle = [&](double t1) {
        auto inner_value = [&](double t2) {
            double s = 1.0 - t1 - t2;
            auto inner = [s](double t3) { return 1.0 / (t3 * (s - t3)); };
            QuadratureResult qi = integrate_adaptive(inner, t2, s / 2.0, tol_in);
            evals += qi.evaluations;
            all_converged = all_converged && qi.converged;
            return qi.value;
        };
        QuadratureResult qm =
            integrate_adaptive([&](double t2) { return inner_value(t2) / t2; }, t1,
                               (1.0 - t1) / 3.0, tol_mid);
        evals += qm.evaluations;
        all_converged = all_converged && qm.converged;
        return qm.value;
    };

    QuadratureResult qo = integrate_adaptive([&](double t1) { return middle(t1) / t1; }, t1_lo,
                                             t1_hi, tol / 2.0);
    double w1 = t1_hi - t1_lo;     // outer range
    double w2max = (1.0 - t1_lo) / 3.0 - t1_lo;  // largest middle range
    QuadratureResult res;
    res.value = qo.value;
    res.abs_error_estimate = qo.abs_error_estimate + w1 * (tol_mid + w2max * tol_in);
    res.evaluations = qo.evaluations + evals;
    res.converged = qo.converged && all_converged && res.abs_error_estimate <= tol;
    return res;
}

namespace detail {

// The triple integral does not depend on gamma; cache it per tolerance so the
// threshold scan pays for it once.
inline double triple_integral_cached(double tol) {
    static std::map<double, double> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(tol);
    if (it != cache.end()) return it->second;
    double v = triple_integral(tol).value;
    cache.emplace(tol, v);
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bracket functional Phi(gamma) and its root.
// ---------------------------------------------------------------------------

inline double bracket_functional(double gamma, double tol, double eps = 0.0) {
    if (!(gamma > 171.0 / 172.0) || !(gamma < 1.0))
        throw std::domain_error("bracket_functional: gamma must lie in (171/172, 1)");
    double xi = level_theorem1(gamma, 0.0);
    double u = 1.0 / xi + eps;
    double denom = 5.0 - u - eps;
    if (!(denom > 0.0))
        throw std::domain_error("bracket_functional: lambda <= 0 (xi <= 1/5 at this gamma)");
    double lambda = 1.0 / denom;

    double term1 = std::log((32.0 / 3.0) * xi - 1.0) / xi;
    double term2 = lambda * richert_integral(u, xi, tol).value;
    double term3 = (lambda / xi) * detail::triple_integral_cached(tol);
    return term1 - term2 - term3;
}

// Root of Phi on (171/172, 1): 200-point coarse scan for a sign change, then
// bisection to tol.  Quadratures run at min(tol, 1e-9).
inline double gamma_threshold(double tol) {
    if (!(tol >= 1e-9)) throw std::domain_error("gamma_threshold: tol must be >= 1e-9");
    const double qtol = std::min(tol, 1e-9);
    // lambda > 0 needs xi > 1/5, i.e. gamma > 1283/1290
    const double lo_edge = 1283.0 / 1290.0 + 1e-9;
    const double hi_edge = 1.0 - 1e-9;
    const int n = 200;
    double prev_g = lo_edge, prev_v = bracket_functional(prev_g, qtol);
    double blo = 0, bhi = 0;
    bool found = false;
    for (int i = 1; i <= n; ++i) {
        double g = lo_edge + (hi_edge - lo_edge) * i / n;
        double v = bracket_functional(g, qtol);
        if (prev_v < 0.0 && v >= 0.0) {
            blo = prev_g;
            bhi = g;
            found = true;
            break;
        }
        prev_g = g;
        prev_v = v;
    }
    if (!found) throw std::runtime_error("gamma_threshold: no sign change located");
    while (bhi - blo > tol) {
        double mid = 0.5 * (blo + bhi);
        if (bracket_functional(mid, qtol) < 0.0)
            blo = mid;
        else
            bhi = mid;
    }
    return 0.5 * (blo + bhi);
}

}  // namespace psieve

#pragma once

// Level-of-distribution functions and the admissibility algebra that sits on
// top of them: the Type I / Type II exponent windows, the bilinear-split
// conditions, a line-item feasibility verifier, and the (H, T) parameter
// schedule.
//
// The three level functions:
//   theorem1 : xi = 129/4 g - 255/8 - eps      (positive for 85/86 < g < 1)
//   lu       : xi = (13 g - 12)/4 - eps        on (12/13, 1]
//   peneva   : xi = 755/424 g - 331/212 - eps  on (662/755, 608/675]
//              xi = 5/4 g - 13/12 - eps        on (608/675, 1]
// The piecewise boundary 608/675 belongs to the first branch.  The closure
// point g = 1 is admitted in lu/peneva so the limit values 1/4 and 1/6 are
// directly evaluable.

#include <cmath>
#include <string>
#include <vector>

#include "psieve/common.hpp"

namespace psieve {

inline double level_theorem1(double gamma, double eps) {
    return (129.0 / 4.0) * gamma - 255.0 / 8.0 - eps;
}

inline bool level_theorem1_feasible(double gamma) {
    return gamma > 85.0 / 86.0 && gamma < 1.0;
}

inline double level_lu(double gamma, double eps) {
    if (!(gamma > 12.0 / 13.0))
        throw std::domain_error("level_lu: gamma must exceed 12/13");
    if (!(gamma <= 1.0)) throw std::domain_error("level_lu: gamma must be <= 1");
    return (13.0 * gamma - 12.0) / 4.0 - eps;
}

inline double level_peneva(double gamma, double eps) {
    if (!(gamma > 662.0 / 755.0))
        throw std::domain_error("level_peneva: gamma must exceed 662/755");
    if (!(gamma <= 1.0)) throw std::domain_error("level_peneva: gamma must be <= 1");
    if (gamma <= 608.0 / 675.0) return (755.0 / 424.0) * gamma - 331.0 / 212.0 - eps;
    return (5.0 / 4.0) * gamma - 13.0 / 12.0 - eps;
}

// ---------------------------------------------------------------------------
// LevelParams: the (gamma, eps, eta, xi) bundle.  xi defaults to the
// theorem-1 level; an explicit xi override is allowed for experiments.
// ---------------------------------------------------------------------------

struct LevelParams {
    double gamma;
    double eps;
    double eta;
    double xi;

    static LevelParams make(double gamma, double eps, double eta) {
        validate(gamma, eps, eta);
        return LevelParams{gamma, eps, eta, level_theorem1(gamma, eps)};
    }
    static LevelParams with_xi(double gamma, double eps, double eta, double xi) {
        validate(gamma, eps, eta);
        return LevelParams{gamma, eps, eta, xi};
    }

  private:
    static void validate(double gamma, double eps, double eta) {
        if (!(gamma > 0.5) || !(gamma < 1.0))
            throw std::domain_error("LevelParams: gamma must lie in (1/2, 1)");
        if (eps < 0 || eta < 0) throw std::domain_error("LevelParams: eps, eta must be >= 0");
    }
};

// ---------------------------------------------------------------------------
// Type II window and admissibility condition
//   X^{(29(1-g)+4xi)/3 + eta}  <=  M  <=  X^{g - eta}
//   g > max(29/32 + xi/8 + eta, 1/4 + xi + eta)
// ---------------------------------------------------------------------------

struct Type2Window {
    double b_exp;
    double c_exp;
    bool condition_ok;
};

inline Type2Window type2_window(const LevelParams& lp) {
    Type2Window w;
    w.b_exp = (29.0 * (1.0 - lp.gamma) + 4.0 * lp.xi) / 3.0 + lp.eta;
    w.c_exp = lp.gamma - lp.eta;
    double need = std::max(29.0 / 32.0 + lp.xi / 8.0 + lp.eta, 0.25 + lp.xi + lp.eta);
    w.condition_ok = lp.gamma > need;
    return w;
}

// Largest admissible Type I exponent: 127/4 g - 247/8 - xi - eta.
inline double type1_max_exponent(const LevelParams& lp) {
    return (127.0 / 4.0) * lp.gamma - 247.0 / 8.0 - lp.xi - lp.eta;
}

// ---------------------------------------------------------------------------
// Bilinear-split conditions: b < 2/3, 1-c < c-b, 1-a < c/2.
// ---------------------------------------------------------------------------

struct SplitConditions {
    bool b_small;      // b < 2/3
    bool type2_gap;    // 1 - c < c - b
    bool type1_reach;  // 1 - a < c/2
    bool all() const { return b_small && type2_gap && type1_reach; }
};

inline SplitConditions split_conditions_unchecked(double a, double b, double c) {
    return SplitConditions{b < 2.0 / 3.0, 1.0 - c < c - b, 1.0 - a < c / 2.0};
}

inline SplitConditions bf_conditions(double a, double b, double c) {
    if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("bf_conditions: need 0 < a < 1");
    if (!(b > 0.0) || !(b < c) || !(c < 1.0))
        throw std::domain_error("bf_conditions: need 0 < b < c < 1");
    return split_conditions_unchecked(a, b, c);
}

// ---------------------------------------------------------------------------
// Feasibility report: every admissibility constraint as a named line item.
// ---------------------------------------------------------------------------

struct FeasibilityItem {
    std::string name;
    std::string detail;  // instantiated inequality, human readable
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
};

struct FeasibilityReport {
    std::vector<FeasibilityItem> items;
    bool overall = true;

    void add(std::string name, std::string detail, double lhs, double rhs, bool pass) {
        items.push_back({std::move(name), std::move(detail), lhs, rhs, pass});
        overall = overall && pass;
    }
};

inline FeasibilityReport feasibility(const LevelParams& lp) {
    FeasibilityReport rep;
    const double g = lp.gamma, xi = lp.xi, eta = lp.eta;

    rep.add("xi_positive", "xi > 0", xi, 0.0, xi > 0.0);
    rep.add("xi_within_half", "xi <= (1 - eta)/2", xi, (1.0 - eta) / 2.0, xi <= (1.0 - eta) / 2.0);
    rep.add("gamma_above_half_plus_xi", "gamma > 1/2 + xi", g, 0.5 + xi, g > 0.5 + xi);

    Type2Window w = type2_window(lp);
    double need = std::max(29.0 / 32.0 + xi / 8.0 + eta, 0.25 + xi + eta);
    rep.add("type2_condition", "gamma > max(29/32 + xi/8 + eta, 1/4 + xi + eta)", g, need,
            w.condition_ok);

    double a = type1_max_exponent(lp);
    double b = w.b_exp;
    double c = w.c_exp;
    bool ordered = a > 0.0 && a < 1.0 && b > 0.0 && b < c && c < 1.0;
    SplitConditions sc = split_conditions_unchecked(a, b, c);
    rep.add("split_conditions",
            "0<a<1, 0<b<c<1, b < 2/3, 1-c < c-b, 1-a < c/2 at the chosen (a,b,c)", a, b,
            ordered && sc.all());

    double win_lo = 0.5 + eta, win_hi = 85.0 / 86.0 - eta;
    bool window_ok = b <= win_lo && win_lo < win_hi && win_hi <= c;
    rep.add("partial_product_window", "[1/2+eta, 85/86-eta] inside [b_exp, c_exp]", win_lo, win_hi,
            window_ok);
    return rep;
}

// ---------------------------------------------------------------------------
// Scheduled parameters: H = X^{1-gamma+eta} and
// T = [M^{-6/5} X^{(gamma+14)/15} J D^{4/15}] + 1.
// ---------------------------------------------------------------------------

struct Schedule {
    double H;
    u64 T;
};

inline Schedule parameter_schedule(double M, double X, double gamma, double J, double D,
                                   double eta) {
    if (!(M > 0) || !(X > 0) || !(J > 0) || !(D > 0))
        throw std::domain_error("parameter_schedule: arguments must be positive");
    Schedule s;
    s.H = std::pow(X, 1.0 - gamma + eta);
    double t = std::pow(M, -6.0 / 5.0) * std::pow(X, (gamma + 14.0) / 15.0) * J *
               std::pow(D, 4.0 / 15.0);
    if (!(t < 9.0e18)) throw std::overflow_error("parameter_schedule: T exceeds 64-bit range");
    s.T = static_cast<u64>(std::floor(t)) + 1;
    return s;
}

}  // namespace psieve

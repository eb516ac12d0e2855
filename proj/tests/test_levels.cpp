#include <catch2/catch_amalgamated.hpp>

#include "psieve/levels.hpp"

using namespace psieve;
using Catch::Approx;

TEST_CASE("level function limit values") {
    CHECK(level_theorem1(1.0, 0.0) == 0.375);
    CHECK(level_theorem1(255.0 / 258.0, 0.0) == 0.0);  // boundary zero, exact in doubles
    CHECK(level_theorem1(171.0 / 172.0, 0.0) == Approx(3.0 / 16.0).margin(1e-15));
    CHECK(level_lu(1.0, 0.0) == 0.25);
    CHECK(level_peneva(1.0 - 1e-12, 0.0) == Approx(1.0 / 6.0).margin(1e-10));
}

TEST_CASE("peneva piecewise boundary belongs to the first branch") {
    double b = 608.0 / 675.0;
    CHECK(level_peneva(b, 0.0) == (755.0 / 424.0) * b - 331.0 / 212.0);
    double b2 = b + 1e-9;
    CHECK(level_peneva(b2, 0.0) == (5.0 / 4.0) * b2 - 13.0 / 12.0);
}

TEST_CASE("level function domains") {
    CHECK_THROWS_AS(level_lu(0.9, 0.0), std::domain_error);    // below 12/13
    CHECK_THROWS_AS(level_lu(1.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(level_peneva(0.876, 0.0), std::domain_error);  // below 662/755
    CHECK(level_theorem1_feasible(0.999));
    CHECK(!level_theorem1_feasible(85.0 / 86.0));
}

TEST_CASE("level ordering near gamma = 1") {
    for (double g : {0.999, 0.9995, 0.9999}) {
        double t = level_theorem1(g, 1e-6);
        double l = level_lu(g, 1e-6);
        double p = level_peneva(g, 1e-6);
        CHECK(t > l);
        CHECK(l > p);
    }
}

TEST_CASE("level functions are monotone in gamma and eps") {
    for (double g : {0.995, 0.997, 0.999}) {
        CHECK(level_theorem1(g + 1e-4, 1e-6) > level_theorem1(g, 1e-6));
        CHECK(level_lu(g + 1e-4, 1e-6) > level_lu(g, 1e-6));
        CHECK(level_peneva(g + 1e-4, 1e-6) > level_peneva(g, 1e-6));
        CHECK(level_theorem1(g, 1e-5) < level_theorem1(g, 1e-6));
        CHECK(level_lu(g, 1e-5) < level_lu(g, 1e-6));
        CHECK(level_peneva(g, 1e-5) < level_peneva(g, 1e-6));
    }
}

TEST_CASE("type II window") {
    LevelParams at_one = LevelParams::with_xi(0.9999999999, 0.0, 0.0, 0.375);
    CHECK(type2_window(at_one).b_exp == Approx(0.5).margin(1e-9));

    LevelParams lp = LevelParams::make(0.999, 0.0, 0.0);
    CHECK(lp.xi == Approx(0.342750).margin(1e-12));
    Type2Window w = type2_window(lp);
    CHECK(w.b_exp == Approx((29.0 * 0.001 + 4.0 * 0.342750) / 3.0).margin(1e-12));
    CHECK(w.b_exp == Approx(0.46666666666666).margin(1e-9));
    CHECK(w.c_exp == 0.999);
    CHECK(w.condition_ok);

    // xi = gamma forces gamma > 1/4 + gamma, impossible
    LevelParams bad = LevelParams::with_xi(0.9, 0.0, 0.0, 0.9);
    CHECK(!type2_window(bad).condition_ok);
}

TEST_CASE("type I maximal exponent") {
    LevelParams at_one = LevelParams::with_xi(0.9999999999, 0.0, 0.0, 0.375);
    CHECK(type1_max_exponent(at_one) == Approx(0.5).margin(1e-8));

    // algebraic collapse under the theorem-1 level: a = 1 - gamma/2 + eps - eta
    for (double g : {0.992, 0.995, 0.999}) {
        double eps = 1e-6, eta = 4e-7;
        LevelParams lp = LevelParams::make(g, eps, eta);
        CHECK(type1_max_exponent(lp) == Approx(1.0 - g / 2.0 + eps - eta).margin(1e-12));
    }

    LevelParams lp999 = LevelParams::make(0.999, 0.0, 0.0);
    CHECK(type1_max_exponent(lp999) == Approx(0.50050).margin(1e-12));
}

TEST_CASE("split conditions") {
    SplitConditions ok = bf_conditions(0.9, 0.4, 0.9);
    CHECK(ok.all());
    SplitConditions bad = bf_conditions(0.9, 0.65, 0.7);
    CHECK(!bad.type2_gap);  // 1 - c = 0.3 >= c - b = 0.05
    CHECK(!bad.all());
    CHECK_THROWS_AS(bf_conditions(0.9, 0.8, 0.7), std::domain_error);
    CHECK_THROWS_AS(bf_conditions(1.5, 0.4, 0.9), std::domain_error);

    // the chosen (a, b, c) at gamma = 0.999, eps = 1e-6, eta = eps/2
    LevelParams lp = LevelParams::make(0.999, 1e-6, 5e-7);
    Type2Window w = type2_window(lp);
    CHECK(bf_conditions(type1_max_exponent(lp), w.b_exp, w.c_exp).all());
}

TEST_CASE("feasibility line items") {
    FeasibilityReport rep = feasibility(LevelParams::make(0.999, 1e-6, 5e-7));
    CHECK(rep.items.size() == 6);
    CHECK(rep.overall);
    for (const auto& item : rep.items) CHECK(item.pass);

    // at the boundary zero of the level, xi <= 0 fails the first item
    FeasibilityReport boundary = feasibility(LevelParams::make(85.0 / 86.0, 1e-6, 5e-7));
    CHECK(!boundary.overall);
    CHECK(boundary.items[0].name == "xi_positive");
    CHECK(!boundary.items[0].pass);

    // gamma = 0.99 is feasible for the level theorem even though the final
    // sieve step needs gamma > 171/172
    CHECK(feasibility(LevelParams::make(0.99, 1e-6, 5e-7)).overall);

    // overall is the conjunction of the items
    for (double g : {0.99, 0.995, 0.999}) {
        FeasibilityReport r = feasibility(LevelParams::make(g, 1e-6, 5e-7));
        bool conj = true;
        for (const auto& item : r.items) conj = conj && item.pass;
        CHECK(r.overall == conj);
    }
}

TEST_CASE("split condition 1-a < c/2 flips at eps = 3 eta / 2") {
    const double eta = 1e-6;
    auto item_passes = [&](double eps) {
        LevelParams lp = LevelParams::make(0.999, eps, eta);
        Type2Window w = type2_window(lp);
        return split_conditions_unchecked(type1_max_exponent(lp), w.b_exp, w.c_exp).type1_reach;
    };
    CHECK(item_passes(1.5 * eta * 1.001));
    CHECK(!item_passes(1.5 * eta * 0.999));
}

TEST_CASE("feasibility sweep on a coarse grid") {
    double lo = 85.0 / 86.0 + 1e-4, hi = 1.0 - 1e-4;
    for (int i = 0; i <= 10; ++i) {
        double g = lo + (hi - lo) * i / 10;
        CHECK(feasibility(LevelParams::make(g, 1e-6, 5e-7)).overall);
    }
}

TEST_CASE("parameter schedule") {
    Schedule s = parameter_schedule(1, 1, 0.9, 1, 1, 0.0);
    CHECK(s.H == 1.0);
    CHECK(s.T == 2);

    Schedule s2 = parameter_schedule(1, 1e6, 0.999, 1, 1, 0.001);
    CHECK(s2.H == Approx(std::pow(10.0, 0.012)).epsilon(1e-12));
    CHECK(s2.H == Approx(1.0280164).margin(1e-6));

    // monotonicity: nondecreasing in J and D, nonincreasing in M
    auto T = [](double M, double J, double D) {
        return parameter_schedule(M, 1e6, 0.999, J, D, 0.001).T;
    };
    CHECK(T(1, 2, 1) >= T(1, 1, 1));
    CHECK(T(1, 1, 2) >= T(1, 1, 1));
    CHECK(T(2, 1, 1) <= T(1, 1, 1));

    CHECK_THROWS_AS(parameter_schedule(0, 1, 0.9, 1, 1, 0), std::domain_error);
}

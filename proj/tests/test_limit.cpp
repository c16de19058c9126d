#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssfa/limit.hpp"
#include "ssfa/scenario.hpp"

using namespace ssfa;

TEST_CASE("aggregation: final average of the two largest orders") {
    LimitEstimate raw;
    raw.per_order[4] = Real("0.0906");
    raw.per_order[5] = Real("0.0898");
    raw.per_order[6] = Real("0.0747");
    auto agg = aggregate_estimates(raw);
    REQUIRE(agg.final.has_value());
    CHECK(abs(*agg.final - Real("0.08225")) < Real("1e-10"));
}

TEST_CASE("aggregation: single interior gap takes the neighbor mean") {
    LimitEstimate raw;
    raw.per_order[3] = Real(1);
    raw.per_order[4] = std::nullopt;
    raw.per_order[5] = Real(3);
    auto agg = aggregate_estimates(raw);
    REQUIRE(agg.filled.count(4) == 1);
    CHECK(agg.filled.at(4) == Real(2));
    CHECK(*agg.final == Real("2.5"));
}

TEST_CASE("aggregation: endpoint gaps stay unavailable") {
    LimitEstimate raw;
    raw.per_order[3] = std::nullopt;
    raw.per_order[4] = Real(2);
    raw.per_order[5] = Real(4);
    raw.per_order[6] = std::nullopt;
    auto agg = aggregate_estimates(raw);
    CHECK(agg.filled.count(3) == 0);
    CHECK(agg.filled.count(6) == 0);
    CHECK(*agg.final == Real(3));
}

TEST_CASE("aggregation: fewer than two usable orders is an error") {
    LimitEstimate raw;
    raw.per_order[3] = Real(1);
    raw.per_order[4] = std::nullopt;
    CHECK_THROWS_AS(aggregate_estimates(raw), InsufficientOrdersError);
}

TEST_CASE("exact power-restricted form recovers its own limit") {
    // f = 3 g^-2 (1+g)(1+5g): sum n_i = 2 = -alpha/q, limit = 3*1*5 = 15.
    auto s = make_series({Real(3), Rational(-2)}, 1, {Real(1), Real(6), Real(5), Real(0)});
    auto f = build_factor_constrained(s);
    auto [amp, expn] = factor_asymptote(f);
    CHECK(abs(expn) < Real("1e-60"));
    CHECK(abs(amp - 15) < Real("1e-60"));
}

TEST_CASE("power-restricted limit equals the large-argument evaluation") {
    auto sc = load_scenario("string");
    auto f = build_factor_constrained(sc.series.truncated(5));
    auto [amp, expn] = factor_asymptote(f);
    CHECK(abs(expn) < Real("1e-60"));
    Real sampled = evaluate_factor(f, Real("1e8"));
    CHECK(abs(sampled - amp) < Real("1e-6") * abs(amp));
}

TEST_CASE("decay exponent of a rational function tends to one") {
    // f = (2+g)/(1+g) = 2 - g + g^2 - ...; f - 1 ~ 1/g at infinity.
    std::vector<Real> a;
    Real sign(1);
    a.push_back(Real(2));
    for (int n = 1; n <= 10; ++n, sign = -sign) a.push_back(-sign);
    auto s = make_series({Real(1), Rational(0)}, 1, std::move(a));
    auto est = estimate_omega(s, 8);
    CHECK(abs(est.selected - 1) < Real("1e-4"));
}

TEST_CASE("membrane decay exponent is the sole real fourth-order value") {
    auto sc = load_scenario("membrane");
    auto est = estimate_omega(sc.series, 6);
    CHECK(est.selected_order == 4);
    CHECK(abs(est.selected - Real("1.927")) < Real("0.005"));
}

TEST_CASE("transformation of a constant function returns its amplitude at every order") {
    auto s = make_series({Real("2.5"), Rational(0)}, 1,
                         {Real(1), Real(0), Real(0), Real(0), Real(0)});
    auto est = limit_via_transformation(s, Real(2), {2, 3, 4});
    for (int k : {2, 3, 4}) {
        REQUIRE(est.per_order.at(k).has_value());
        CHECK(abs(*est.per_order.at(k) - Real("2.5")) < Real("1e-60"));
    }
    CHECK(abs(*est.final - Real("2.5")) < Real("1e-60"));
}

TEST_CASE("membrane per-order pipeline values and finals") {
    auto sc = load_scenario("membrane");
    auto direct = limit_power_restriction(sc.series, {1, 2, 3, 4, 5, 6});
    CHECK(abs(*direct.per_order.at(1) - Real("0.0193")) < Real("0.002"));
    CHECK(abs(*direct.per_order.at(2) - Real("0.0232")) < Real("0.002"));
    CHECK(abs(*direct.per_order.at(3) - Real("0.3120")) < Real("0.002"));
    CHECK(abs(*direct.per_order.at(4) - Real("0.2880")) < Real("0.002"));
    CHECK_FALSE(direct.per_order.at(5).has_value());
    CHECK_FALSE(direct.per_order.at(6).has_value());

    auto omega = estimate_omega(sc.series, 6);
    auto trans = limit_via_transformation(sc.series, omega.selected, {4, 5, 6});
    CHECK(abs(*trans.per_order.at(4) - Real("0.0906")) < Real("0.0005"));
    CHECK(abs(*trans.per_order.at(5) - Real("0.0898")) < Real("0.0005"));
    CHECK(abs(*trans.per_order.at(6) - Real("0.0747")) < Real("0.0005"));
    CHECK(abs(*trans.final - Real("0.0823")) < Real("0.0003"));
}

TEST_CASE("aggregation is deterministic") {
    auto sc = load_scenario("string");
    auto a = limit_via_transformation(sc.series, Real(2), {3, 4, 5, 6, 7});
    auto b = limit_via_transformation(sc.series, Real(2), {3, 4, 5, 6, 7});
    REQUIRE(a.filled.size() == b.filled.size());
    for (const auto& [k, v] : a.filled) CHECK(v == b.filled.at(k));
    CHECK(*a.final == *b.final);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssfa/asymptotic.hpp"
#include "ssfa/scenario.hpp"

using namespace ssfa;

namespace {

// Exact rational tail of the stiff-string energy: a_{2m+1} = C(1/2,m)/(4*64^m),
// a_2 = 1/32, other even entries zero.
std::vector<Rational> string_tail(int order) {
    std::vector<Rational> a(std::size_t(order) + 1, Rational(0));
    a[0] = 1;
    if (order >= 2) a[2] = Rational(1, 32);
    Rational binom(1), denom(4);
    for (int m = 0; 2 * m + 1 <= order; ++m) {
        if (m > 0) {
            binom *= (Rational(1, 2) - (m - 1)) / m;
            denom *= 64;
        }
        a[std::size_t(2 * m + 1)] = binom / denom;
    }
    return a;
}

}  // namespace

TEST_CASE("log-moments of a binomial cube") {
    // (1+2g)^3 = 1 + 6g + 12g^2 + 8g^3, so B_m = 3 * 2^m.
    std::vector<Real> tail = {Real(1), Real(6), Real(12), Real(8)};
    auto b = log_moments(tail);
    REQUIRE(b.size() == 3);
    CHECK(abs(b[0] - 6) < Real("1e-90"));
    CHECK(abs(b[1] - 12) < Real("1e-90"));
    CHECK(abs(b[2] - 24) < Real("1e-90"));
}

TEST_CASE("log-derivative tail of the string energy is exactly rational") {
    auto sc = load_scenario("string");
    auto a = string_tail(9);
    auto c = beta_tail<Rational>(a, Rational(-2), Rational(1));
    REQUIRE(c.size() >= sc.beta_fixture.size());
    for (std::size_t i = 0; i < sc.beta_fixture.size(); ++i)
        CHECK(c[i] == sc.beta_fixture[i]);
}

TEST_CASE("transformed tail of the string energy is exactly rational") {
    auto sc = load_scenario("string");
    auto a = string_tail(9);
    auto b = transform_tail<Rational>(a, Rational(-2), Rational(1, 2));
    REQUIRE(b.size() >= sc.transform_fixture.size());
    for (std::size_t i = 0; i < sc.transform_fixture.size(); ++i)
        CHECK(b[i] == sc.transform_fixture[i]);
}

TEST_CASE("first-order transform correction is alpha/omega") {
    // g = z(1-z)^(-1/w) ~ z(1 + z/w), so A g^a (1 + a1 g) has z-tail
    // b1 = a1 + a/w.
    for (int alpha : {-2, -1, 3}) {
        for (int omega : {1, 2, 5}) {
            Rational a1(7, 3);
            auto b = transform_tail<Rational>({Rational(1), a1}, Rational(alpha),
                                              Rational(1, omega));
            CHECK(b[1] == a1 + Rational(alpha, omega));
        }
    }
}

TEST_CASE("beta_series of a pure power has a bare constant tail") {
    auto s = make_series({Real(3), Rational(-2)}, 1, {Real(1), Real("0.25"), Real(1) / 32});
    auto beta = beta_series(s);
    CHECK(beta.prefactor.exponent == 0);
    CHECK(abs(beta.prefactor.amplitude + 2) < Real("1e-90"));
    CHECK(beta.coefficients[0] == 1);
    // c1 = q * l1 / alpha = 1 * (1/4) / (-2)
    CHECK(abs(beta.coefficients[1] + Real(1) / 8) < Real("1e-90"));
}

TEST_CASE("series normalization folds a0 into the prefactor") {
    auto s = make_series({Real(2), Rational(0)}, 1, {Real(4), Real(8)});
    CHECK(s.prefactor.amplitude == 8);
    CHECK(s.coefficients[0] == 1);
    CHECK(s.coefficients[1] == 2);
    CHECK_THROWS_AS(make_series({Real(1), Rational(0)}, 1, {}), SchemaError);
    CHECK_THROWS_AS(make_series({Real(1), Rational(0)}, 1, {Real(0)}), SchemaError);
    CHECK_THROWS_AS(make_series({Real(0), Rational(0)}, 1, {Real(1)}), SchemaError);
    CHECK_THROWS_AS(make_series({Real(1), Rational(0)}, Rational(-1), {Real(1)}), SchemaError);
}

TEST_CASE("closed-form string energy matches its stored expansion") {
    auto sc = load_scenario("string");
    // Small-g agreement: |E(g) - truncated series| = O(g^14) beyond order 15.
    for (const char* gs : {"0.0625", "0.125", "0.25"}) {
        Real g(gs);
        Real pref = sc.series.prefactor.amplitude * pow(g, -2);
        Real tail(0);
        for (std::size_t n = sc.series.coefficients.size(); n-- > 0;)
            tail = tail * g + sc.series.coefficients[n];
        Real truncation = pow(g, 16) / (pow(g, 2));  // next tail order times prefactor power
        CHECK(abs(exact_string_energy(g) - pref * tail) < 10 * truncation);
    }
    // Spot value: E(8) = (pi^2/512)(3 + 2 sqrt(2)).
    Real e8 = real_pi() * real_pi() / 512 * (3 + 2 * sqrt(Real(2)));
    CHECK(abs(exact_string_energy(Real(8)) - e8) < Real("1e-90"));
    CHECK(abs(exact_string_energy(Real("1e40")) - real_pi() * real_pi() / 128) < Real("1e-60"));
}

TEST_CASE("transform_series keeps the prefactor and maps orders one-to-one") {
    auto sc = load_scenario("string");
    auto t = transform_series(sc.series.truncated(9), Real(2));
    CHECK(t.omega == 2);
    CHECK(t.base.order() == 9);
    for (std::size_t i = 0; i < sc.transform_fixture.size(); ++i)
        CHECK(abs(t.base.coefficients[i] - to_real(sc.transform_fixture[i])) < Real("1e-80"));
}

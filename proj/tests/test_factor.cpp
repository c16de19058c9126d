#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ssfa/factor.hpp"
#include "ssfa/scenario.hpp"

using namespace ssfa;

namespace {

Real rel_err(const Real& got, const Real& want) {
    return abs(got - want) / (abs(want) + Real("1e-300"));
}

// Source coefficients reproduced through the series order.
void check_reexpansion(const FactorApproximant& f, const AsymptoticSeries& src) {
    auto back = expand_approximant(f, src.order());
    for (int n = 1; n <= src.order(); ++n) {
        Real want = src.coefficients[std::size_t(n)];
        Real got = back.coefficients[std::size_t(n)];
        CHECK(abs(got - want) <= Real("1e-10") * (1 + abs(want)));
    }
}

}  // namespace

TEST_CASE("moment system inversion on forward power sums") {
    // n = {1, 2} on nodes {2, 3}: B = (8, 22, 62, 178).
    MomentVector m{{Real(8), Real(22), Real(62), Real(178)}, std::nullopt};
    auto f = solve_prony(m, 2);
    REQUIRE(f.size() == 2);
    // Canonical order: descending |node|.
    CHECK(rel_err(f[0].node.real(), Real(3)) < Real("1e-80"));
    CHECK(rel_err(f[0].exponent.real(), Real(2)) < Real("1e-80"));
    CHECK(rel_err(f[1].node.real(), Real(2)) < Real("1e-80"));
    CHECK(rel_err(f[1].exponent.real(), Real(1)) < Real("1e-80"));
}

TEST_CASE("single-node system recovers a binomial cube") {
    MomentVector m{{Real(6), Real(12)}, std::nullopt};
    auto f = solve_prony(m, 1);
    REQUIRE(f.size() == 1);
    CHECK(rel_err(f[0].node.real(), Real(2)) < Real("1e-80"));
    CHECK(rel_err(f[0].exponent.real(), Real(3)) < Real("1e-80"));
}

TEST_CASE("vanishing second moment has no single-node solution") {
    // The node is forced to zero; both failure labels tell the caller to
    // skip the order, which is the contract that matters.
    MomentVector m{{Real(1) / 4, Real(0)}, std::nullopt};
    bool skipped = false;
    try {
        solve_prony(m, 1);
    } catch (const NoSolutionError&) {
        skipped = true;
    } catch (const DegenerateNodesError&) {
        skipped = true;
    }
    CHECK(skipped);
}

TEST_CASE("moment round-trip on random weight/node sets") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> node_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> weight_dist(-2.0, 2.0);
    int done = 0;
    while (done < 1000) {
        int N = 1 + int(rng() % 4);
        std::vector<Real> nodes, weights;
        for (int i = 0; i < N; ++i) {
            nodes.push_back(Real(node_dist(rng)));
            weights.push_back(Real(weight_dist(rng)));
        }
        // Reject near-degenerate draws; the solver is entitled to refuse them.
        bool ok = true;
        for (int i = 0; i < N && ok; ++i) {
            if (abs(nodes[std::size_t(i)]) < Real("0.05")) ok = false;
            if (abs(weights[std::size_t(i)]) < Real("0.05")) ok = false;
            for (int j = 0; j < i; ++j)
                if (abs(nodes[std::size_t(i)] - nodes[std::size_t(j)]) < Real("0.05")) ok = false;
        }
        if (!ok) continue;
        MomentVector m;
        for (int p = 1; p <= 2 * N; ++p) {
            Real b(0);
            for (int i = 0; i < N; ++i)
                b += weights[std::size_t(i)] * pow(nodes[std::size_t(i)], p);
            m.values.push_back(b);
        }
        auto f = solve_prony(m, N);
        REQUIRE(f.size() == std::size_t(N));
        // Match by nearest node; recovery must be essentially exact.
        for (int i = 0; i < N; ++i) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < f.size(); ++j)
                if (abs(f[j].node.real() - nodes[std::size_t(i)]) <
                    abs(f[best].node.real() - nodes[std::size_t(i)]))
                    best = j;
            REQUIRE(rel_err(f[best].node.real(), nodes[std::size_t(i)]) < Real("1e-20"));
            REQUIRE(rel_err(f[best].exponent.real(), weights[std::size_t(i)]) < Real("1e-20"));
        }
        ++done;
    }
}

TEST_CASE("exact binomial-product series is recovered parameter-for-parameter") {
    FactorApproximant truth;
    truth.prefactor = {Real(2), Rational(0)};
    truth.power_step = 1;
    truth.factors = {{Complex(5), Complex(Real(-1) / 2)}, {Complex(2), Complex(Real(3) / 2)}};
    auto series = expand_approximant(truth, 4);
    auto rebuilt = build_factor(series);
    REQUIRE(rebuilt.factors.size() == 2);
    CHECK(rel_err(rebuilt.factors[0].node.real(), Real(5)) < Real("1e-40"));
    CHECK(rel_err(rebuilt.factors[0].exponent.real(), Real(-1) / 2) < Real("1e-40"));
    CHECK(rel_err(rebuilt.factors[1].node.real(), Real(2)) < Real("1e-40"));
    CHECK(rel_err(rebuilt.factors[1].exponent.real(), Real(3) / 2) < Real("1e-40"));
}

TEST_CASE("order-1 build is the single binomial factor") {
    auto s = make_series({Real(1), Rational(0)}, 1, {Real(1), Real("0.7")});
    auto f = build_factor(s, OddConvention::UnitNode);
    REQUIRE(f.factors.size() == 1);
    CHECK(rel_err(f.factors[0].node.real(), Real(1)) < Real("1e-80"));
    CHECK(rel_err(f.factors[0].exponent.real(), Real("0.7")) < Real("1e-80"));
}

TEST_CASE("constant tail builds the empty product") {
    auto s = make_series({Real(3), Rational(0)}, 1, {Real(1), Real(0), Real(0), Real(0)});
    auto f = build_factor(s);
    CHECK(f.factors.empty());
    CHECK(abs(evaluate_factor(f, Real(17)) - 3) < Real("1e-90"));
}

TEST_CASE("re-expansion fidelity across every build variant") {
    auto osc = load_scenario("oscillator");
    for (int k = 2; k <= 7; ++k) {
        auto s = osc.series.truncated(k);
        check_reexpansion(build_factor(s, OddConvention::UnitNode), s);
        if (k % 2 == 1) check_reexpansion(build_factor(s, OddConvention::A1OverA0), s);
    }
    auto mem = load_scenario("membrane");
    for (int k = 1; k <= 4; ++k) {
        auto s = mem.series.truncated(k);
        check_reexpansion(build_factor_constrained(s), s);
    }
    auto fermi = load_scenario("fermi-gas");
    for (int k = 3; k <= 4; ++k) {
        auto s = fermi.series.truncated(k);
        check_reexpansion(build_factor_interpolating(s, *fermi.asymptote), s);
    }
}

TEST_CASE("conjugate closure and deterministic factor order") {
    auto osc = load_scenario("oscillator");
    auto f = build_factor(osc.series.truncated(6));
    REQUIRE(f.factors.size() == 3);
    for (const auto& fac : f.factors) {
        if (effectively_real(fac.node)) continue;
        bool paired = false;
        for (const auto& other : f.factors)
            if (abs(other.node - conj(fac.node)) < Real("1e-60") * (1 + abs(fac.node)) &&
                abs(other.exponent - conj(fac.exponent)) < Real("1e-40") * (1 + abs(fac.exponent)))
                paired = true;
        CHECK(paired);
    }
    for (std::size_t i = 1; i < f.factors.size(); ++i)
        CHECK(abs(f.factors[i - 1].node) >= abs(f.factors[i].node) - Real("1e-60"));
    // Bitwise determinism across rebuilds.
    auto g = build_factor(osc.series.truncated(6));
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        CHECK(f.factors[i].node == g.factors[i].node);
        CHECK(f.factors[i].exponent == g.factors[i].exponent);
    }
}

TEST_CASE("evaluation closed forms") {
    FactorApproximant sqrt1p;
    sqrt1p.factors = {{Complex(1), Complex(Real(1) / 2)}};
    CHECK(rel_err(evaluate_factor(sqrt1p, Real(3)), Real(2)) < Real("1e-90"));

    FactorApproximant pair;
    pair.factors = {{Complex(Real(0), Real(1)), Complex(1)},
                    {Complex(Real(0), Real(-1)), Complex(1)}};
    CHECK(rel_err(evaluate_factor(pair, Real(2)), Real(5)) < Real("1e-90"));

    FactorApproximant branch;
    branch.factors = {{Complex(-1), Complex(Real(1) / 2)}};
    CHECK_THROWS_AS(evaluate_factor(branch, Real(1)), BranchPointError);
}

TEST_CASE("sixth-order oscillator value near the known ground state") {
    auto osc = load_scenario("oscillator");
    auto f = build_factor(osc.series.truncated(6));
    Real e = evaluate_factor(f, Real(1));
    CHECK(abs(e - Real("0.8038")) < Real("0.02") * Real("0.8038"));
}

TEST_CASE("boundary interpolation reduces to the exact form when already consistent") {
    // truth = 2 (1+5g)^(-1/2) (1+2g)^(3/2): asymptote 2*2^(3/2)/sqrt(5) * g^1.
    FactorApproximant truth;
    truth.prefactor = {Real(2), Rational(0)};
    truth.power_step = 1;
    truth.factors = {{Complex(5), Complex(Real(-1) / 2)}, {Complex(2), Complex(Real(3) / 2)}};
    auto [amp, expn] = factor_asymptote(truth);
    REQUIRE(abs(expn - 1) < Real("1e-80"));
    StrongCouplingExpansion asym{{{amp, Rational(1)}}};

    // Even target order: three coefficients plus the power condition.
    auto even = build_factor_interpolating(expand_approximant(truth, 3), asym);
    REQUIRE(even.factors.size() == 2);
    CHECK(rel_err(even.factors[0].node.real(), Real(5)) < Real("1e-40"));
    CHECK(rel_err(even.factors[1].node.real(), Real(2)) < Real("1e-40"));

    // Odd target order: two coefficients plus power and amplitude conditions.
    auto odd = build_factor_interpolating(expand_approximant(truth, 2), asym);
    REQUIRE(odd.factors.size() == 2);
    CHECK(rel_err(odd.factors[0].node.real(), Real(5)) < Real("1e-20"));
    CHECK(rel_err(odd.factors[1].node.real(), Real(2)) < Real("1e-20"));
    CHECK(rel_err(odd.factors[0].exponent.real(), Real(-1) / 2) < Real("1e-20"));
    CHECK(rel_err(odd.factors[1].exponent.real(), Real(3) / 2) < Real("1e-20"));
}

TEST_CASE("imposed unitary value is reproduced exactly at infinity") {
    auto fermi = load_scenario("fermi-gas");
    auto f = build_factor_interpolating(fermi.series.truncated(4), *fermi.asymptote);
    auto [amp, expn] = factor_asymptote(f);
    CHECK(abs(expn) < Real("1e-25"));
    CHECK(rel_err(amp, Real("0.132")) < Real("1e-12"));
}

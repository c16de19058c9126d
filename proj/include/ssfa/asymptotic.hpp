#pragma once

#include <optional>
#include <vector>

#include "ssfa/series.hpp"
#include "ssfa/types.hpp"

namespace ssfa {

// f0(g) = amplitude * g^exponent, stored exactly.
struct PowerPrefactor {
    Real amplitude{1};
    Rational exponent{0};
};

// f_k(g) = f0(g) * sum a_n u^n with u = g^power_step.  a0 == 1 after
// normalization; any other a0 is folded into the prefactor amplitude.
struct AsymptoticSeries {
    PowerPrefactor prefactor;
    Rational power_step{1};
    std::vector<Real> coefficients;  // a0..ak

    int order() const { return int(coefficients.size()) - 1; }

    AsymptoticSeries truncated(int k) const {
        AsymptoticSeries out = *this;
        if (int(out.coefficients.size()) > k + 1) out.coefficients.resize(k + 1);
        return out;
    }
};

inline AsymptoticSeries make_series(PowerPrefactor prefactor, Rational power_step,
                                    std::vector<Real> coefficients) {
    if (coefficients.empty()) throw SchemaError("series needs at least a0");
    if (coefficients[0] == 0) throw SchemaError("a0 must be nonzero");
    if (prefactor.amplitude == 0) throw SchemaError("prefactor amplitude must be nonzero");
    if (power_step <= 0) throw SchemaError("power_step must be positive");
    if (coefficients[0] != 1) {
        prefactor.amplitude *= coefficients[0];
        for (std::size_t i = coefficients.size(); i-- > 0;)
            coefficients[i] /= coefficients[0];
    }
    return AsymptoticSeries{prefactor, std::move(power_step), std::move(coefficients)};
}

// B1..Bk of Prony form sum_i n_i A_i^m, plus the optional B0 = sum_i n_i
// used by the constrained builds.
struct MomentVector {
    std::vector<Real> values;  // B1..Bk
    std::optional<Real> moment_zero;

    const Real& B(std::size_t m) const { return values.at(m - 1); }
};

// Series after g = z (1-z)^(-1/omega); base lives in the variable z and
// keeps the prefactor exponent of the source (g ~ z as z -> 0).
struct TransformedSeries {
    Real omega{1};
    AsymptoticSeries base;
};

// --- Templated kernels shared by the Real and Rational paths -------------

// Log-moments of a unit tail: B_n = (-1)^(n-1) * n * L_n with L = log(tail).
template <class T>
std::vector<T> log_moments(const std::vector<T>& tail) {
    Series<T> l = log_unit(Series<T>(tail));
    std::vector<T> b;
    b.reserve(tail.size() - 1);
    int sign = 1;
    for (std::size_t n = 1; n < tail.size(); ++n, sign = -sign)
        b.push_back(T(sign) * T(int(n)) * l.c[n]);
    return b;
}

// Tail coefficients c_0..c_k of beta(g) = g f'/f = alpha (1 + sum c_n u^n)
// for a nonzero prefactor exponent alpha; q is the power step.
template <class T>
std::vector<T> beta_tail(const std::vector<T>& tail, const T& alpha, const T& q) {
    if (alpha == T(0)) throw BetaDegenerateError("beta-degenerate");
    Series<T> l = log_unit(Series<T>(tail));
    std::vector<T> c(tail.size(), T(0));
    c[0] = T(1);
    for (std::size_t n = 1; n < tail.size(); ++n)
        c[n] = q * T(int(n)) * l.c[n] / alpha;
    return c;
}

// Tail coefficients b_0..b_k in z after g = z (1-z)^(-1/omega):
//   sum_n a_n z^n (1-z)^(-(n+alpha)*inv_omega), truncated at k.
template <class T>
std::vector<T> transform_tail(const std::vector<T>& tail, const T& alpha,
                              const T& inv_omega) {
    std::size_t k = tail.size() - 1;
    std::vector<T> b(k + 1, T(0));
    for (std::size_t n = 0; n <= k; ++n) {
        if (tail[n] == T(0)) continue;
        T p = -(T(int(n)) + alpha) * inv_omega;
        Series<T> bin = binomial_series(p, k - n);  // (1+x)^p, x = -z
        T sign(1);
        for (std::size_t m = 0; m + n <= k; ++m, sign = -sign)
            b[n + m] += tail[n] * sign * bin.c[m];
    }
    return b;
}

// --- series-core operations ----------------------------------------------

MomentVector compute_moments(const AsymptoticSeries& series);

// beta_k(g) = d ln f_k / d ln g, re-expanded as an AsymptoticSeries.  For a
// nonzero prefactor exponent alpha the result has prefactor (alpha, 0) and
// tail c_n; for alpha == 0 the leading nonvanishing term moves into the
// prefactor.  Signals "beta-degenerate" when nothing survives.
AsymptoticSeries beta_series(const AsymptoticSeries& series);

TransformedSeries transform_series(const AsymptoticSeries& series, const Real& omega);

}  // namespace ssfa

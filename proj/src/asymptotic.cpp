#include "ssfa/asymptotic.hpp"

namespace ssfa {

MomentVector compute_moments(const AsymptoticSeries& series) {
    if (series.order() < 1)
        throw SchemaError("compute_moments: order must be >= 1");
    MomentVector out;
    out.values = log_moments(series.coefficients);
    return out;
}

AsymptoticSeries beta_series(const AsymptoticSeries& series) {
    if (series.order() < 1)
        throw SchemaError("beta_series: order must be >= 1");
    const Real alpha = to_real(series.prefactor.exponent);
    const Real q = to_real(series.power_step);
    const std::size_t k = series.coefficients.size() - 1;

    // beta = alpha + sum_{m>=1} q m L_m u^m
    Series<Real> l = log_unit(Series<Real>(series.coefficients));
    std::vector<Real> d(k + 1, Real(0));
    d[0] = alpha;
    for (std::size_t m = 1; m <= k; ++m) d[m] = q * Real(int(m)) * l.c[m];

    if (alpha != 0) {
        std::vector<Real> c(k + 1);
        for (std::size_t m = 0; m <= k; ++m) c[m] = d[m] / alpha;
        return AsymptoticSeries{PowerPrefactor{alpha, Rational(0)}, series.power_step, c};
    }
    // Leading power of beta comes from the first nonzero tail term.
    std::size_t m0 = 1;
    while (m0 <= k && d[m0] == 0) ++m0;
    if (m0 > k) throw BetaDegenerateError("beta-degenerate");
    std::vector<Real> c(k - m0 + 1);
    for (std::size_t m = m0; m <= k; ++m) c[m - m0] = d[m] / d[m0];
    return AsymptoticSeries{PowerPrefactor{d[m0], series.power_step * int(m0)},
                            series.power_step, c};
}

TransformedSeries transform_series(const AsymptoticSeries& series, const Real& omega) {
    if (omega <= 0) throw SchemaError("transform_series: omega must be positive");
    if (series.power_step != 1)
        throw SchemaError("transform_series: only power_step = 1 series are supported");
    const Real alpha = to_real(series.prefactor.exponent);
    std::vector<Real> b = transform_tail(series.coefficients, alpha, Real(1) / omega);
    return TransformedSeries{
        omega, AsymptoticSeries{series.prefactor, series.power_step, std::move(b)}};
}

}  // namespace ssfa

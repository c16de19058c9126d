#include "ssfa/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "ssfa/polyroot.hpp"

namespace ssfa {

namespace {

template <class T>
std::vector<T> solve_linear(std::vector<std::vector<T>> m, std::vector<T> rhs) {
    const int n = int(rhs.size());
    Real scale = 0;
    for (const auto& row : m)
        for (const auto& x : row) scale = std::max(scale, Real(abs(x)));
    if (scale == 0) throw NoSolutionError("no-solution at this order");
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (abs(m[r][col]) > abs(m[pivot][col])) pivot = r;
        if (abs(m[pivot][col]) < scale * Real("1e-80"))
            throw NoSolutionError("no-solution at this order");
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < n; ++r) {
            T f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<T> x(rhs.size());
    for (int r = n - 1; r >= 0; --r) {
        T s = rhs[std::size_t(r)];
        for (int c = r + 1; c < n; ++c) s -= m[std::size_t(r)][std::size_t(c)] * x[std::size_t(c)];
        x[std::size_t(r)] = s / m[std::size_t(r)][std::size_t(r)];
    }
    return x;
}

Complex cpow(const Complex& base, const Complex& e) {
    if (base == Complex(0)) return Complex(0);
    return exp(e * log(base));
}

void canonicalize(std::vector<Factor>& factors) {
    // Snap near-real parameters to the real axis, then sort by descending
    // |A| with ties broken by ascending argument.
    for (auto& f : factors) {
        if (effectively_real(f.node)) f.node = Complex(f.node.real());
        if (effectively_real(f.exponent)) f.exponent = Complex(f.exponent.real());
    }
    std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
        Real ma = abs(a.node), mb = abs(b.node);
        if (ma != mb) return ma > mb;
        return atan2(a.node.imag(), a.node.real()) < atan2(b.node.imag(), b.node.real());
    });
}

// Node-polynomial coefficients c0..c_{N-1} of the monic Prony polynomial.
std::vector<Real> prony_node_polynomial(const MomentVector& moments, int nodes,
                                        const std::optional<Real>& fixed_node,
                                        bool use_moment_zero) {
    const int N = nodes;
    auto s = [&](int m) -> const Real& {
        if (m == 0) return *moments.moment_zero;
        return moments.values.at(std::size_t(m - 1));
    };
    const int m0 = use_moment_zero ? 0 : 1;
    const int rows = N - (fixed_node ? 1 : 0);
    const int needed = m0 + rows - 1 + N;
    if (needed >= 1 && int(moments.values.size()) < needed)
        throw NoSolutionError("no-solution at this order: not enough moments");

    std::vector<std::vector<Real>> m;
    std::vector<Real> rhs;
    for (int t = 0; t < rows; ++t) {
        std::vector<Real> row(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) row[std::size_t(j)] = s(m0 + t + j);
        m.push_back(std::move(row));
        rhs.push_back(-s(m0 + t + N));
    }
    if (fixed_node) {
        std::vector<Real> row(static_cast<std::size_t>(N));
        Real p(1);
        for (int j = 0; j < N; ++j) {
            row[std::size_t(j)] = p;
            p *= *fixed_node;
        }
        m.push_back(std::move(row));
        rhs.push_back(-p);
    }
    return solve_linear(std::move(m), std::move(rhs));
}

std::vector<Complex> prony_nodes(const std::vector<Real>& c,
                                 const std::optional<Real>& fixed_node) {
    std::vector<Complex> roots = monic_roots(c);
    if (fixed_node) {
        // Snap the nearest root to the pinned value.
        std::size_t best = 0;
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (abs(roots[i] - Complex(*fixed_node)) < abs(roots[best] - Complex(*fixed_node)))
                best = i;
        roots[best] = Complex(*fixed_node);
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (abs(roots[i]) < Real("1e-30")) throw DegenerateNodesError("degenerate-nodes");
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (abs(roots[i] - roots[j]) < Real("1e-30") * (1 + abs(roots[i])))
                throw DegenerateNodesError("degenerate-nodes");
    }
    return roots;
}

}  // namespace

std::vector<Factor> solve_prony(const MomentVector& moments, int nodes,
                                std::optional<Real> fixed_node,
                                std::optional<Real> moment_zero) {
    if (nodes < 1) throw NoSolutionError("no-solution at this order: no nodes requested");
    MomentVector m = moments;
    if (moment_zero) m.moment_zero = moment_zero;
    const bool use_b0 = m.moment_zero.has_value();

    std::vector<Real> c = prony_node_polynomial(m, nodes, fixed_node, use_b0);
    std::vector<Complex> roots = prony_nodes(c, fixed_node);

    const int N = nodes;
    const int m0 = use_b0 ? 0 : 1;
    auto s = [&](int idx) -> const Real& {
        if (idx == 0) return *m.moment_zero;
        return m.values.at(std::size_t(idx - 1));
    };
    std::vector<std::vector<Complex>> v;
    std::vector<Complex> rhs;
    for (int t = 0; t < N; ++t) {
        std::vector<Complex> row(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) row[std::size_t(j)] = cpow(roots[std::size_t(j)], Complex(m0 + t));
        v.push_back(std::move(row));
        rhs.push_back(Complex(s(m0 + t)));
    }
    std::vector<Complex> weights = solve_linear(std::move(v), std::move(rhs));

    // All supplied moment equations, used or not, must close.
    const int available = int(m.values.size());
    for (int mm = use_b0 ? 0 : 1; mm <= available; ++mm) {
        Complex acc(0);
        for (int j = 0; j < N; ++j) acc += weights[std::size_t(j)] * cpow(roots[std::size_t(j)], Complex(mm));
        Real scale = std::max(Real(1), abs(s(mm)));
        if (abs(acc - Complex(s(mm))) > Real("1e-20") * scale)
            throw NoSolutionError("no-solution at this order: moment residual too large");
    }

    std::vector<Factor> out;
    out.reserve(std::size_t(N));
    for (int j = 0; j < N; ++j) out.push_back(Factor{roots[std::size_t(j)], weights[std::size_t(j)]});
    canonicalize(out);
    return out;
}

FactorApproximant build_factor(const AsymptoticSeries& series, OddConvention odd_convention) {
    const int k = series.order();
    if (k < 1) throw OrderUnavailableError("order-k-unavailable: order must be >= 1");
    MomentVector m = compute_moments(series);
    // Constant tail: the product degenerates to 1 and the moment system is
    // identically zero, so skip it rather than report a failure.
    bool all_zero = true;
    for (const auto& b : m.values)
        if (b != 0) { all_zero = false; break; }
    if (all_zero) return FactorApproximant{series.prefactor, series.power_step, {}};
    try {
        std::vector<Factor> factors;
        if (k % 2 == 0) {
            factors = solve_prony(m, k / 2);
        } else {
            Real pin = odd_convention == OddConvention::UnitNode ? Real(1) : series.coefficients[1];
            factors = solve_prony(m, (k + 1) / 2, pin);
        }
        return FactorApproximant{series.prefactor, series.power_step, std::move(factors)};
    } catch (const NoSolutionError& e) {
        throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
    } catch (const DegenerateNodesError& e) {
        throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
    }
}

FactorApproximant build_factor_constrained(const AsymptoticSeries& series) {
    const int k = series.order();
    if (k < 1) throw OrderUnavailableError("order-k-unavailable: order must be >= 1");
    if (series.prefactor.exponent >= 0)
        throw OrderUnavailableError("order-k-unavailable: prefactor exponent must be negative");
    const Real b0 = to_real(-series.prefactor.exponent / series.power_step);
    MomentVector m = compute_moments(series);
    try {
        std::vector<Factor> factors;
        if (k % 2 == 1) {
            factors = solve_prony(m, (k + 1) / 2, std::nullopt, b0);
        } else {
            factors = solve_prony(m, k / 2 + 1, Real(1), b0);
        }
        return FactorApproximant{series.prefactor, series.power_step, std::move(factors)};
    } catch (const NoSolutionError& e) {
        throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
    } catch (const DegenerateNodesError& e) {
        throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
    }
}

namespace {

// Residuals of the interpolating system for a candidate node polynomial:
// the weights are eliminated against the first N conditions, the leftover
// moment equations and the amplitude condition remain.
struct InterpolatingSystem {
    MomentVector moments;        // B1..Bk
    Real exponent_sum_target;    // B0 = (alpha1 - alpha)/q
    Real log_amplitude_target;   // ln(b1/A)
    int k = 0;
    int N = 0;

    struct Eval {
        std::vector<Real> residuals;
        std::vector<Complex> roots;
        std::vector<Complex> weights;
        bool ok = false;
    };

    Eval operator()(const std::vector<Real>& c) const {
        Eval ev;
        try {
            ev.roots = prony_nodes(c, std::nullopt);
            auto s = [&](int idx) -> Real {
                return idx == 0 ? exponent_sum_target : moments.values.at(std::size_t(idx - 1));
            };
            std::vector<std::vector<Complex>> v;
            std::vector<Complex> rhs;
            for (int t = 0; t < N; ++t) {
                std::vector<Complex> row(static_cast<std::size_t>(N));
                for (int j = 0; j < N; ++j) row[std::size_t(j)] = cpow(ev.roots[std::size_t(j)], Complex(t));
                v.push_back(std::move(row));
                rhs.push_back(Complex(s(t)));
            }
            ev.weights = solve_linear(std::move(v), std::move(rhs));
            for (int mm = N; mm <= k; ++mm) {
                Complex acc(0);
                for (int j = 0; j < N; ++j)
                    acc += ev.weights[std::size_t(j)] * cpow(ev.roots[std::size_t(j)], Complex(mm));
                ev.residuals.push_back((acc - Complex(s(mm))).real());
            }
            Complex logamp(0);
            for (int j = 0; j < N; ++j)
                logamp += ev.weights[std::size_t(j)] * log(ev.roots[std::size_t(j)]);
            ev.residuals.push_back(logamp.real() - log_amplitude_target);
            ev.ok = true;
        } catch (const std::exception&) {
            ev.ok = false;
        }
        return ev;
    }
};

Real residual_norm(const std::vector<Real>& r) {
    Real n = 0;
    for (const auto& x : r) n = std::max(n, Real(abs(x)));
    return n;
}

}  // namespace

FactorApproximant build_factor_interpolating(const AsymptoticSeries& series,
                                             const StrongCouplingExpansion& asymptote) {
    const int k = series.order();
    if (k < 2) throw OrderUnavailableError("order-k-unavailable: order must be >= 2");
    if (asymptote.terms.empty())
        throw SchemaError("interpolating build needs at least the leading asymptote term");
    const Real b1 = asymptote.terms[0].b;
    const Rational alpha1 = asymptote.terms[0].alpha;
    const Rational sum_target_q = (alpha1 - series.prefactor.exponent) / series.power_step;
    MomentVector m = compute_moments(series);

    if ((k + 1) % 2 == 0) {
        // k+1 even: k moment equations plus the power condition close the
        // system; it is a Prony problem with known B0.
        try {
            auto factors = solve_prony(m, (k + 1) / 2, std::nullopt, to_real(sum_target_q));
            return FactorApproximant{series.prefactor, series.power_step, std::move(factors)};
        } catch (const NoSolutionError& e) {
            throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
        } catch (const DegenerateNodesError& e) {
            throw OrderUnavailableError(std::string("order-k-unavailable: ") + e.what());
        }
    }

    // k+1 odd: one extra factor, closed by the amplitude condition; damped
    // Newton on the node-polynomial coefficients, seeded from the
    // unconstrained even-order Prony solution times an extra node.
    const Real ratio = b1 / series.prefactor.amplitude;
    if (ratio <= 0)
        throw OrderUnavailableError("order-k-unavailable: amplitude condition has no real log");
    InterpolatingSystem sys{m, to_real(sum_target_q), log(ratio), k, (k + 2) / 2};

    std::vector<Real> seed(std::size_t(sys.N), Real(0));
    try {
        std::vector<Real> inner = prony_node_polynomial(m, k / 2, std::nullopt, false);
        // (x - 1) * inner polynomial as the starting node polynomial.
        std::vector<Real> full(std::size_t(sys.N) + 1, Real(0));
        inner.push_back(Real(1));  // monic
        for (std::size_t i = 0; i < inner.size(); ++i) {
            full[i] -= inner[i];
            if (i + 1 < full.size()) full[i + 1] += inner[i];
        }
        for (int i = 0; i < sys.N; ++i) seed[std::size_t(i)] = full[std::size_t(i)];
    } catch (const std::exception&) {
        for (int i = 0; i < sys.N; ++i) seed[std::size_t(i)] = Real(i % 2 ? -1 : 1);
    }

    std::uint64_t rng = 0x9e3779b97f4a7c15ULL;
    auto next_unit = [&rng]() {
        rng = rng * 6364136223846793005ULL + 1442695040888963407ULL;
        return Real(double(rng >> 11) / 9007199254740992.0) * 2 - 1;
    };

    for (int start = 0; start < 32; ++start) {
        std::vector<Real> x = seed;
        if (start > 0)
            for (auto& xi : x) xi *= 1 + Real("0.15") * Real(start) / 32 * next_unit();
        auto ev = sys(x);
        if (!ev.ok) continue;
        Real best = residual_norm(ev.residuals);
        bool converged = best < Real("1e-15");
        for (int iter = 0; iter < 120 && !converged; ++iter) {
            // Finite-difference Jacobian at working precision.
            std::vector<std::vector<Real>> jac(ev.residuals.size(),
                                               std::vector<Real>(x.size(), Real(0)));
            bool jac_ok = true;
            for (std::size_t j = 0; j < x.size() && jac_ok; ++j) {
                Real h = Real("1e-30") * (1 + abs(x[j]));
                std::vector<Real> xp = x;
                xp[j] += h;
                auto evp = sys(xp);
                if (!evp.ok) {
                    jac_ok = false;
                    break;
                }
                for (std::size_t r = 0; r < jac.size(); ++r)
                    jac[r][j] = (evp.residuals[r] - ev.residuals[r]) / h;
            }
            if (!jac_ok) break;
            std::vector<Real> step;
            try {
                std::vector<Real> rhs;
                for (const auto& r : ev.residuals) rhs.push_back(-r);
                step = solve_linear(jac, rhs);
            } catch (const std::exception&) {
                break;
            }
            Real damp = 1;
            bool improved = false;
            for (int half = 0; half < 24; ++half, damp /= 2) {
                std::vector<Real> xt = x;
                for (std::size_t j = 0; j < x.size(); ++j) xt[j] += damp * step[j];
                auto evt = sys(xt);
                if (evt.ok && residual_norm(evt.residuals) < best) {
                    x = std::move(xt);
                    ev = std::move(evt);
                    best = residual_norm(ev.residuals);
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
            converged = best < Real("1e-15");
        }
        if (converged) {
            // The log-modulus residual cannot distinguish a real product from
            // a complex one of the same magnitude (a negative real node with
            // non-integer weight rotates the product); accept only the branch
            // where the limit amplitude is genuinely real.
            Complex logamp(0);
            for (int j = 0; j < sys.N; ++j)
                logamp += ev.weights[std::size_t(j)] * log(ev.roots[std::size_t(j)]);
            Complex amp = exp(logamp);
            if (abs(amp.imag()) > Real("1e-10") * abs(amp.real())) continue;
            std::vector<Factor> factors;
            for (int j = 0; j < sys.N; ++j)
                factors.push_back(Factor{ev.roots[std::size_t(j)], ev.weights[std::size_t(j)]});
            canonicalize(factors);
            return FactorApproximant{series.prefactor, series.power_step, std::move(factors)};
        }
    }
    throw OrderUnavailableError("order-k-unavailable: interpolating solve did not converge");
}

Complex exponent_sum(const FactorApproximant& approx) {
    Complex s(0);
    for (const auto& f : approx.factors) s += f.exponent;
    return s;
}

Real evaluate_factor(const FactorApproximant& approx, const Real& g) {
    if (g < 0) throw BranchPointError("evaluate_factor: negative argument");
    if (g == 0 && approx.prefactor.exponent != 0)
        throw BranchPointError("evaluate_factor: prefactor is singular at g = 0");
    const Real u = g == 0 ? Real(0) : Real(pow(g, to_real(approx.power_step)));
    Complex acc(0);
    for (const auto& f : approx.factors) {
        Complex base = Complex(1) + f.node * Complex(u);
        if (effectively_real(f.node) && base.real() <= 0 && effectively_real(base)) {
            std::ostringstream os;
            os << "pole-or-branch at g=" << double(g);
            throw BranchPointError(os.str());
        }
        acc += f.exponent * log(base);
    }
    Complex value = Complex(approx.prefactor.amplitude) *
                    Complex(g == 0 ? Real(1) : Real(pow(g, to_real(approx.prefactor.exponent)))) *
                    exp(acc);
    if (abs(value.imag()) > Real("1e-8") * abs(value.real()))
        throw BranchPointError("evaluate_factor: imaginary residue exceeds tolerance");
    return value.real();
}

std::pair<Real, Real> factor_asymptote(const FactorApproximant& approx) {
    Complex logamp(0);
    for (const auto& f : approx.factors) logamp += f.exponent * log(f.node);
    Complex amp = Complex(approx.prefactor.amplitude) * exp(logamp);
    if (abs(amp.imag()) > Real("1e-8") * abs(amp.real()))
        throw BranchPointError("factor_asymptote: limit amplitude is not real");
    Complex sn = exponent_sum(approx);
    Real exponent = to_real(approx.prefactor.exponent) + to_real(approx.power_step) * sn.real();
    return {amp.real(), exponent};
}

AsymptoticSeries expand_approximant(const FactorApproximant& approx, int order) {
    if (order < 0) throw SchemaError("expand_approximant: order must be >= 0");
    Series<Complex> acc(std::size_t(order), Complex(0));
    for (const auto& f : approx.factors) {
        // n * log(1 + A u) = n * sum (-1)^(m-1) A^m u^m / m
        Complex p(1);
        for (int m = 1; m <= order; ++m) {
            p *= f.node;
            acc.c[std::size_t(m)] += f.exponent * Complex(m % 2 ? 1 : -1) * p / Complex(m);
        }
    }
    Series<Complex> tail = exp_zero(acc);
    std::vector<Real> coeffs(std::size_t(order) + 1);
    for (int m = 0; m <= order; ++m) coeffs[std::size_t(m)] = tail.c[std::size_t(m)].real();
    return AsymptoticSeries{approx.prefactor, approx.power_step, std::move(coeffs)};
}

}  // namespace ssfa

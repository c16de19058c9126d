#include "ssfa/root.hpp"

#include <algorithm>
#include <sstream>

namespace ssfa {

namespace {

Real rpow(const Real& base, const Real& e) {
    if (base <= 0) throw DepthUnavailableError("depth-unavailable: nonpositive base");
    return pow(base, e);
}

// Nested ladder expanded as a Taylor series in the ladder variable x about
// the anchor (x = 0), truncated at `order`.
Series<Real> anchor_tail(const std::vector<RootLevel>& ladder, int order) {
    Series<Real> v(std::size_t(order), Real(0));
    v.c[0] = 1;
    for (const auto& level : ladder) {
        if (level.power <= order) v.c[std::size_t(level.power)] += level.amplitude;
        v = pow_unit(v, level.exponent);
    }
    return v;
}

// Far-side expansion of an infinity-anchored interpolant ladder (powers
// x^j): R/f0 = A_p^{n_p} x^{p n_p} S(t) with t = x^(-1/2).  Unset levels
// (amplitude 0) only contribute beyond the truncation order and their
// weight ratios are dropped.
Series<Real> far_tail(const std::vector<RootLevel>& ladder, int order) {
    Series<Real> s(std::size_t(order), Real(0));
    s.c[0] = 1;
    const auto& first = ladder.front();
    if (first.amplitude != 0 && order >= 2) s.c[2] = 1 / first.amplitude;
    s = pow_unit(s, first.exponent);
    for (std::size_t j = 1; j < ladder.size(); ++j) {
        const auto& lo = ladder[j - 1];
        const auto& hi = ladder[j];
        Real w = 0;
        if (lo.amplitude != 0 && hi.amplitude != 0)
            w = pow(lo.amplitude, lo.exponent) / hi.amplitude;
        Series<Real> arg(std::size_t(order), Real(0));
        arg.c[0] = 1;
        for (int m = 1; m <= order; ++m) arg.c[std::size_t(m)] = w * s.c[std::size_t(m - 1)];
        s = pow_unit(arg, hi.exponent);
    }
    return s;
}

}  // namespace

Rational interior_exponent(int level) {
    return Rational(2 * level + 1, 2 * level);
}

RootApproximant build_root_interpolant(const AsymptoticSeries& series,
                                       const StrongCouplingExpansion& anchor, int depth) {
    if (anchor.terms.empty()) throw SchemaError("anchor needs at least a leading term");
    if (depth < 1) throw SchemaError("depth must be >= 1");
    for (std::size_t j = 1; j < anchor.terms.size(); ++j)
        if (anchor.terms[j].alpha >= anchor.terms[j - 1].alpha)
            throw SchemaError("anchor powers must be strictly descending");

    const Rational q = series.power_step;
    const Rational s = 2 * q;  // ladder runs in x = g^(-s); far-side steps are g^q
    const Rational alpha_anchor = anchor.terms[0].alpha;
    const Rational alpha_far = series.prefactor.exponent;
    const Real anchor_amp = anchor.terms[0].b;

    const int ma = int(anchor.terms.size());
    const int far_count = depth - (ma - 1);
    if (far_count < 1) throw SchemaError("anchor supplies more conditions than the depth admits");
    if (far_count - 1 > series.order())
        throw SchemaError("depth exceeds the available condition count");
    for (int j = 1; j < ma; ++j)
        if (anchor.terms[std::size_t(j)].alpha != alpha_anchor - j * s)
            throw SchemaError("anchor term powers do not sit on the ladder grid");

    const Rational terminal = (alpha_anchor - alpha_far) / (s * depth);
    if (terminal == 0) throw DepthUnavailableError("depth-unavailable: degenerate terminal exponent");

    RootApproximant root;
    root.prefactor = PowerPrefactor{anchor_amp, alpha_anchor};
    root.anchor = AnchorSide::Infinity;
    root.ladder_step = s;
    root.ladder.resize(std::size_t(depth));
    for (int j = 1; j <= depth; ++j) {
        Rational e = j < depth ? interior_exponent(j) : terminal;
        root.ladder[std::size_t(j - 1)] = RootLevel{Real(0), j, to_real(e), e};
    }

    // Subleading anchor terms pin the innermost amplitudes; each enters the
    // x^j anchor coefficient linearly.
    for (int j = 1; j < ma; ++j) {
        Real target = anchor.terms[std::size_t(j)].b / anchor_amp;
        auto& level = root.ladder[std::size_t(j - 1)];
        level.amplitude = 0;
        Real base = anchor_tail(root.ladder, j).c[std::size_t(j)];
        level.amplitude = 1;
        Real slope = anchor_tail(root.ladder, j).c[std::size_t(j)] - base;
        if (slope == 0) throw DepthUnavailableError("depth-unavailable: singular anchor condition");
        Real a = (target - base) / slope;
        if (a <= 0) throw DepthUnavailableError("depth-unavailable: negative radicand");
        level.amplitude = a;
    }

    // Leading far-side amplitude fixes the outermost level.
    Real ratio = series.prefactor.amplitude / anchor_amp;
    if (ratio <= 0) throw DepthUnavailableError("depth-unavailable: amplitude ratio not positive");
    root.ladder.back().amplitude = rpow(ratio, 1 / to_real(terminal));

    // Remaining far-side coefficients, outermost inward; condition m is
    // linear in A_i^{e_i} with i = depth - m.
    for (int m = 1; m < far_count; ++m) {
        const int i = depth - m;
        auto& level = root.ladder[std::size_t(i - 1)];
        if (level.amplitude != 0)
            throw DepthUnavailableError("depth-unavailable: condition collision");
        Real target = series.coefficients[std::size_t(m)];
        level.amplitude = 0;
        Real base = far_tail(root.ladder, m).c[std::size_t(m)];
        level.amplitude = 1;
        Real slope = far_tail(root.ladder, m).c[std::size_t(m)] - base;
        if (slope == 0) throw DepthUnavailableError("depth-unavailable: singular far condition");
        Real u = (target - base) / slope;
        if (u <= 0) throw DepthUnavailableError("depth-unavailable: negative radicand");
        level.amplitude = rpow(u, 1 / level.exponent);
    }
    return root;
}

Real predict_next_coefficient(const RootApproximant& root, const AsymptoticSeries& series) {
    if (root.anchor != AnchorSide::Infinity)
        throw SchemaError("predict_next_coefficient expects an interpolant ladder");
    const int next = series.order() + 1;
    Series<Real> s = far_tail(root.ladder, next);
    return series.prefactor.amplitude * s.c[std::size_t(next)];
}

std::vector<RootApproximant> bootstrap_sequence(const AsymptoticSeries& series,
                                                const StrongCouplingExpansion& anchor,
                                                int max_depth) {
    AsymptoticSeries cur = series;
    const int ma = int(anchor.terms.size());
    const int depth0 = (ma - 1) + cur.order() + 1;
    if (max_depth < depth0)
        throw SchemaError("max_depth below the initial condition count");
    std::vector<RootApproximant> out;
    for (int depth = depth0; depth <= max_depth; ++depth) {
        RootApproximant r;
        try {
            r = build_root_interpolant(cur, anchor, depth);
        } catch (const DepthUnavailableError&) {
            break;
        }
        out.push_back(r);
        if (depth < max_depth) {
            Series<Real> s = far_tail(r.ladder, cur.order() + 1);
            cur.coefficients.push_back(s.c[std::size_t(cur.order() + 1)]);
        }
    }
    return out;
}

namespace {

struct StageExpansion {
    Real amplitude;   // solved A_j
    Real residual;    // mismatch of the second coefficient
    bool ok = false;
};

// Candidate evaluation for one iterated stage: split the outer exponent as
// n_prev/n_new, add A x^(2j-1), solve A linearly from coefficient 2j-1 and
// report the residual of coefficient 2j.
StageExpansion evaluate_stage(std::vector<RootLevel> ladder, const Real& n_new,
                              const std::vector<Real>& tail, int j) {
    StageExpansion out;
    if (n_new == 0) return out;
    Real n_prev = ladder.back().exponent;
    ladder.back().exponent = n_prev / n_new;
    ladder.back().exponent_exact.reset();
    ladder.push_back(RootLevel{Real(0), 2 * j - 1, n_new, std::nullopt});
    const int lo = 2 * j - 1, hi = 2 * j;
    Series<Real> base = anchor_tail(ladder, hi);
    ladder.back().amplitude = 1;
    Series<Real> bumped = anchor_tail(ladder, hi);
    Real slope = bumped.c[std::size_t(lo)] - base.c[std::size_t(lo)];
    if (slope == 0) return out;
    out.amplitude = (tail[std::size_t(lo)] - base.c[std::size_t(lo)]) / slope;
    Real c_hi = base.c[std::size_t(hi)] +
                out.amplitude * (bumped.c[std::size_t(hi)] - base.c[std::size_t(hi)]);
    out.residual = c_hi - tail[std::size_t(hi)];
    out.ok = true;
    return out;
}

}  // namespace

std::vector<RootApproximant> build_root_iterated(const AsymptoticSeries& series) {
    const int k = series.order();
    if (k < 2) throw SchemaError("iterated roots need order >= 2");
    const std::vector<Real>& a = series.coefficients;

    std::vector<RootApproximant> out;
    // Stage 1: (1 + A1 u)^{n1} from a1, a2; closed form.
    const Real p = a[1];
    if (p == 0) return out;
    Real denom = p * p - 2 * a[2];
    if (denom == 0) return out;
    Real n1 = p * p / denom;
    Real a1 = p / n1;
    if (a1 == 0) return out;
    RootApproximant stage;
    stage.prefactor = series.prefactor;
    stage.anchor = AnchorSide::Zero;
    stage.ladder_step = series.power_step;
    stage.ladder.push_back(RootLevel{a1, 1, n1, std::nullopt});
    out.push_back(stage);

    for (int j = 2; 2 * j <= k; ++j) {
        const auto& prev = out.back().ladder;
        // Scan the new outer exponent for sign changes of the residual,
        // bisect each bracket, and keep the smallest positive solution.
        const int grid = 800;
        const Real lo("1e-4"), hi(4);
        Real step = pow(hi / lo, Real(1) / grid);
        std::vector<Real> solutions;
        Real x_prev = lo;
        auto ev_prev = evaluate_stage(prev, x_prev, a, j);
        for (int i = 1; i <= grid; ++i) {
            Real x = lo * pow(step, Real(i));
            auto ev = evaluate_stage(prev, x, a, j);
            if (ev.ok && ev_prev.ok && ev.residual * ev_prev.residual < 0) {
                Real xa = x_prev, xb = x, ra = ev_prev.residual;
                for (int it = 0; it < 400; ++it) {
                    Real xm = (xa + xb) / 2;
                    auto em = evaluate_stage(prev, xm, a, j);
                    if (!em.ok) break;
                    if (em.residual * ra <= 0)
                        xb = xm;
                    else {
                        xa = xm;
                        ra = em.residual;
                    }
                }
                solutions.push_back((xa + xb) / 2);
            }
            x_prev = x;
            ev_prev = ev;
        }
        if (solutions.empty()) break;
        Real n_new = solutions.front();
        auto ev = evaluate_stage(prev, n_new, a, j);
        if (!ev.ok || ev.amplitude == 0) break;

        RootApproximant nextstage = out.back();
        Real n_prev = nextstage.ladder.back().exponent;
        nextstage.ladder.back().exponent = n_prev / n_new;
        nextstage.ladder.back().exponent_exact.reset();
        nextstage.ladder.push_back(RootLevel{ev.amplitude, 2 * j - 1, n_new, std::nullopt});
        out.push_back(std::move(nextstage));
    }
    return out;
}

Real evaluate_root(const RootApproximant& root, const Real& g) {
    if (g < 0) throw BranchPointError("evaluate_root: negative argument");
    Real x;
    if (root.anchor == AnchorSide::Infinity) {
        if (g == 0) throw BranchPointError("branch-violation at g=0: ladder variable diverges");
        x = pow(g, -to_real(root.ladder_step));
    } else {
        x = g == 0 ? Real(0) : Real(pow(g, to_real(root.ladder_step)));
    }
    Real v = 1;
    for (const auto& level : root.ladder) {
        Real base = v + level.amplitude * pow(x, level.power);
        if (base <= 0) {
            std::ostringstream os;
            os << "branch-violation at g=" << double(g);
            throw BranchPointError(os.str());
        }
        v = pow(base, level.exponent);
    }
    Real pre = root.prefactor.amplitude;
    if (g != 0)
        pre *= pow(g, to_real(root.prefactor.exponent));
    else if (root.prefactor.exponent != 0)
        throw BranchPointError("evaluate_root: prefactor is singular at g = 0");
    return pre * v;
}

std::pair<Real, Real> root_asymptote(const RootApproximant& root) {
    if (root.anchor == AnchorSide::Infinity) {
        const auto& last = root.ladder.back();
        Real amp = root.prefactor.amplitude * pow(last.amplitude, last.exponent);
        Real expo = to_real(root.prefactor.exponent) -
                    to_real(root.ladder_step) * root.depth() * last.exponent;
        return {amp, expo};
    }
    // Dominance chain through the nesting at large x.
    Real amp = 0, pw = 0;
    bool first = true;
    for (const auto& level : root.ladder) {
        Real term_pw = Real(level.power);
        Real base_amp, base_pw;
        if (first) {
            // innermost base is 1 + A x^p
            base_amp = level.amplitude;
            base_pw = term_pw;
            first = false;
        } else if (pw > term_pw) {
            base_amp = amp;
            base_pw = pw;
        } else if (pw < term_pw) {
            base_amp = level.amplitude;
            base_pw = term_pw;
        } else {
            base_amp = amp + level.amplitude;
            base_pw = pw;
        }
        if (base_amp <= 0) throw BranchPointError("root_asymptote: nonpositive dominant base");
        amp = pow(base_amp, level.exponent);
        pw = base_pw * level.exponent;
    }
    return {root.prefactor.amplitude * amp,
            to_real(root.prefactor.exponent) + to_real(root.ladder_step) * pw};
}

AsymptoticSeries expand_approximant(const RootApproximant& root, int order) {
    if (order < 0) throw SchemaError("expand_approximant: order must be >= 0");
    if (root.anchor == AnchorSide::Zero) {
        Series<Real> v = anchor_tail(root.ladder, order);
        return AsymptoticSeries{root.prefactor, root.ladder_step, v.c};
    }
    Series<Real> s = far_tail(root.ladder, order);
    const auto& last = root.ladder.back();
    Real amp = root.prefactor.amplitude * pow(last.amplitude, last.exponent);
    Rational expo = root.prefactor.exponent;
    if (last.exponent_exact)
        expo -= root.ladder_step * root.depth() * (*last.exponent_exact);
    return AsymptoticSeries{PowerPrefactor{amp, expo}, root.ladder_step / 2, s.c};
}

WeightedApproximant combine_weighted(const FactorApproximant& factor,
                                     const RootApproximant& root,
                                     std::optional<Real> lambda,
                                     std::optional<Real> next_coefficient) {
    if (lambda) return WeightedApproximant{factor, root, *lambda};
    if (!next_coefficient) return WeightedApproximant{factor, root, Real(1) / 2};
    // Match the next series coefficient: lambda f_{k+1} + (1-lambda) r_{k+1} = a_{k+1}.
    int order = 2 * int(factor.factors.size()) + 1;
    Real f = expand_approximant(factor, order).coefficients.back();
    Real r = expand_approximant(root, order).coefficients.back();
    if (f == r) return WeightedApproximant{factor, root, Real(1) / 2};
    return WeightedApproximant{factor, root, (*next_coefficient - r) / (f - r)};
}

Real evaluate_weighted(const WeightedApproximant& w, const Real& g) {
    return w.lambda * evaluate_factor(w.factor, g) + (1 - w.lambda) * evaluate_root(w.root, g);
}

}  // namespace ssfa

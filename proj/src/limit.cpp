#include "ssfa/limit.hpp"

#include <algorithm>

namespace ssfa {

LimitEstimate aggregate_estimates(LimitEstimate raw) {
    raw.filled.clear();
    raw.final.reset();
    std::vector<int> orders;
    for (const auto& [k, v] : raw.per_order) orders.push_back(k);
    std::sort(orders.begin(), orders.end());

    for (std::size_t i = 0; i < orders.size(); ++i) {
        int k = orders[i];
        const auto& v = raw.per_order.at(k);
        if (v) {
            raw.filled[k] = *v;
            continue;
        }
        // A single interior gap takes the mean of its neighbors; endpoints
        // cannot be filled.
        if (i == 0 || i + 1 == orders.size()) continue;
        const auto& lo = raw.per_order.at(orders[i - 1]);
        const auto& hi = raw.per_order.at(orders[i + 1]);
        if (lo && hi) raw.filled[k] = (*lo + *hi) / 2;
    }

    if (raw.filled.size() < 2)
        throw InsufficientOrdersError("insufficient-orders: fewer than two usable orders");
    auto it = raw.filled.rbegin();
    Real last = it->second;
    ++it;
    raw.final = (last + it->second) / 2;
    return raw;
}

LimitEstimate limit_power_restriction(const AsymptoticSeries& series,
                                      const std::vector<int>& orders) {
    LimitEstimate out;
    for (int k : orders) {
        try {
            auto f = build_factor_constrained(series.truncated(k));
            auto [amp, exponent] = factor_asymptote(f);
            (void)exponent;  // zero by construction
            out.per_order[k] = amp;
        } catch (const std::exception& e) {
            out.per_order[k] = std::nullopt;
            out.notes[k] = e.what();
        }
    }
    try {
        return aggregate_estimates(out);
    } catch (const InsufficientOrdersError&) {
        return out;  // per-order notes already explain the gaps
    }
}

OmegaEstimate estimate_omega(const AsymptoticSeries& series, int max_even_order) {
    AsymptoticSeries beta = beta_series(series);
    const Real gamma = to_real(beta.prefactor.exponent);
    const Real q = to_real(beta.power_step);

    OmegaEstimate out;
    bool found = false;
    for (int k = 2; k <= std::min(max_even_order, beta.order()); k += 2) {
        OmegaOrder row;
        try {
            auto f = build_factor(beta.truncated(k));
            Complex sn = exponent_sum(f);
            Real omega = -(gamma + q * sn.real());
            row.beta = f;
            if (abs(sn.imag()) > Real("1e-10") * (1 + abs(sn.real()))) {
                row.note = "exponent sum not real";
            } else if (omega <= 0) {
                row.note = "omega not positive";
            } else {
                row.omega = omega;
                out.selected = omega;
                out.selected_order = k;
                found = true;
            }
        } catch (const std::exception& e) {
            row.note = e.what();
        }
        out.per_order[k] = std::move(row);
    }
    if (!found) throw OmegaUnavailableError("omega-unavailable: no real positive exponent");
    return out;
}

LimitEstimate limit_via_transformation(const AsymptoticSeries& series, const Real& omega,
                                       const std::vector<int>& orders) {
    LimitEstimate out;
    for (int k : orders) {
        try {
            TransformedSeries t = transform_series(series.truncated(k), omega);
            auto f = build_factor(t.base, OddConvention::UnitNode);
            // F_k*(1) is the finite product A * prod (1 + B_i)^{n_i}; a real
            // node at or below -1 with non-integer exponent leaves the branch.
            Complex acc(0);
            for (const auto& fc : f.factors) {
                Complex base = Complex(1) + fc.node;
                // A node at (or numerically at) -1 puts the branch point on
                // z = 1 itself; the order is then unusable.
                if (effectively_real(fc.node) &&
                    base.real() <= Real("1e-30") * (1 + abs(fc.node)))
                    throw BranchPointError("pole-or-branch at z=1");
                acc += fc.exponent * log(base);
            }
            Complex value = Complex(f.prefactor.amplitude) * exp(acc);
            if (abs(value.imag()) > Real("1e-8") * abs(value.real()))
                throw BranchPointError("value at z=1 is not real");
            out.per_order[k] = value.real();
        } catch (const std::exception& e) {
            out.per_order[k] = std::nullopt;
            out.notes[k] = e.what();
        }
    }
    try {
        return aggregate_estimates(out);
    } catch (const InsufficientOrdersError&) {
        return out;  // per-order notes already explain the gaps
    }
}

}  // namespace ssfa

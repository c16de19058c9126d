#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssfa/factor.hpp"

namespace ssfa {

// Per-order result of the approach-exponent estimation; beta holds the
// factor approximant of the beta-series when the build succeeded.
struct OmegaOrder {
    std::optional<Real> omega;
    std::optional<FactorApproximant> beta;
    std::string note;
};

struct OmegaEstimate {
    std::map<int, OmegaOrder> per_order;
    Real selected;
    int selected_order = 0;
};

// Per-order limits with the gap-filling and final-average bookkeeping.
struct LimitEstimate {
    std::map<int, std::optional<Real>> per_order;
    std::map<int, std::string> notes;
    std::map<int, Real> filled;
    std::optional<Real> final;
};

// Direct method: power-restricted factor approximants, limit = asymptote
// amplitude.  Orders that cannot be built are marked unavailable.
LimitEstimate limit_power_restriction(const AsymptoticSeries& series,
                                      const std::vector<int>& orders);

// Approach exponent from even-order factor approximants of the beta-series:
// omega_k = -(gamma + q * sum m_i); selected is the largest even order with
// a real positive omega.
OmegaEstimate estimate_omega(const AsymptoticSeries& series, int max_even_order);

// Transformation method: substitute g = z(1-z)^(-1/omega), build the factor
// approximant of the z-series (unit-node odd convention) and evaluate the
// finite product at z = 1.
LimitEstimate limit_via_transformation(const AsymptoticSeries& series, const Real& omega,
                                       const std::vector<int>& orders);

// Fills single interior gaps with the neighbor mean and sets final to the
// average of the two largest filled orders.
LimitEstimate aggregate_estimates(LimitEstimate raw);

}  // namespace ssfa

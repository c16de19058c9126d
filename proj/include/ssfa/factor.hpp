#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ssfa/asymptotic.hpp"

namespace ssfa {

// Large-variable asymptote sum b_j g^(alpha_j), alpha strictly descending.
struct StrongCouplingTerm {
    Real b;
    Rational alpha;
};

struct StrongCouplingExpansion {
    std::vector<StrongCouplingTerm> terms;
};

// One factor (1 + A u)^n; complex entries occur in conjugate pairs so the
// product is real on the real axis.
struct Factor {
    Complex node;      // A
    Complex exponent;  // n
};

// f_k*(g) = f0(g) * prod (1 + A_i u)^(n_i), u = g^power_step.
struct FactorApproximant {
    PowerPrefactor prefactor;
    Rational power_step{1};
    std::vector<Factor> factors;
};

enum class OddConvention { UnitNode, A1OverA0 };

// Solves sum_i n_i A_i^m = B_m via the Hankel/Prony reduction.  Moment
// budget: plain case 2N, pinned node 2N-1, known B0 2N-1 plus B0, pinned
// node with known B0 2N-2 plus B0.  Throws NoSolutionError ("no-solution
// at this order") or DegenerateNodesError ("degenerate-nodes").
std::vector<Factor> solve_prony(const MomentVector& moments, int nodes,
                                std::optional<Real> fixed_node = std::nullopt,
                                std::optional<Real> moment_zero = std::nullopt);

FactorApproximant build_factor(const AsymptoticSeries& series,
                               OddConvention odd_convention = OddConvention::UnitNode);

// Power-restricted build: sum n_i = -alpha/q exactly, so the approximant
// tends to a constant at infinity.  Odd orders give a square moment system
// with B0; even orders pin A1 = 1 and keep every moment.
FactorApproximant build_factor_constrained(const AsymptoticSeries& series);

// Boundary-interpolating build of order k+1 matching the leading term of
// the strong-coupling asymptote (power condition always, amplitude
// condition additionally when k+1 is odd).
FactorApproximant build_factor_interpolating(const AsymptoticSeries& series,
                                             const StrongCouplingExpansion& asymptote);

Real evaluate_factor(const FactorApproximant& approx, const Real& g);

// (amplitude, exponent) of the large-g behavior A prod A_i^{n_i} g^{alpha+q sum n_i}.
std::pair<Real, Real> factor_asymptote(const FactorApproximant& approx);

AsymptoticSeries expand_approximant(const FactorApproximant& approx, int order);

Complex exponent_sum(const FactorApproximant& approx);

}  // namespace ssfa

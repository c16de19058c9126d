#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ssfa/factor.hpp"

namespace ssfa {

// One level of the nested ladder: the running value V becomes
// (V + amplitude * x^power)^exponent, with V = 1 at the innermost level
// (whose term is 1 + amplitude * x^power).
struct RootLevel {
    Real amplitude;
    int power = 1;
    Real exponent;
    std::optional<Rational> exponent_exact;  // set when the schedule fixes it
};

enum class AnchorSide { Zero, Infinity };

// R_p*(g) = f0(g) * nested ladder in x, where x = g^ladder_step when
// anchored at zero and x = g^(-ladder_step) when anchored at infinity.
// The prefactor is the anchor-side leading behavior.
struct RootApproximant {
    PowerPrefactor prefactor;
    AnchorSide anchor = AnchorSide::Zero;
    Rational ladder_step{1};
    std::vector<RootLevel> ladder;

    int depth() const { return int(ladder.size()); }
};

// Interior ladder exponent (2j+1)/(2j) of level j.
Rational interior_exponent(int level);

// Interpolant anchored at the leading asymptote term, with interior
// exponents on the (2j+1)/(2j) schedule and the terminal exponent fixed by
// bridging the leading powers of the two ends.  Amplitudes come from the
// subleading anchor terms (innermost-first) and the far-side series
// coefficients (outermost-first); each step is a linear solve whose result
// must be a positive radicand, else "depth-unavailable".
RootApproximant build_root_interpolant(const AsymptoticSeries& series,
                                       const StrongCouplingExpansion& anchor, int depth);

// The first far-side Taylor coefficient beyond the matched order, in the
// same normalization as the paper's listings (prefactor amplitude folded in).
Real predict_next_coefficient(const RootApproximant& root, const AsymptoticSeries& series);

// Alternates interpolant construction with coefficient prediction until
// max_depth, returning every intermediate approximant.
std::vector<RootApproximant> bootstrap_sequence(const AsymptoticSeries& series,
                                                const StrongCouplingExpansion& anchor,
                                                int max_depth);

// Iterated roots: stage 1 solves (A1, n1) from a1, a2; each later stage
// freezes the lower structure, splits the outer exponent, adds A_j g^(2j-1)
// and solves the two new unknowns from the next two coefficients.
std::vector<RootApproximant> build_root_iterated(const AsymptoticSeries& series);

Real evaluate_root(const RootApproximant& root, const Real& g);

// (amplitude, exponent) of the leading behavior on the non-anchored side.
std::pair<Real, Real> root_asymptote(const RootApproximant& root);

// Taylor coefficients about g = 0: the plain expansion for zero-anchored
// ladders, the far-side expansion for infinity-anchored ones.
AsymptoticSeries expand_approximant(const RootApproximant& root, int order);

// W(g) = lambda f*(g) + (1-lambda) R*(g).
struct WeightedApproximant {
    FactorApproximant factor;
    RootApproximant root;
    Real lambda;
};

// lambda = auto when next_coefficient is supplied: solves the linear
// matching equation for the order-(k+1) series coefficient.
WeightedApproximant combine_weighted(const FactorApproximant& factor,
                                     const RootApproximant& root,
                                     std::optional<Real> lambda,
                                     std::optional<Real> next_coefficient = std::nullopt);

Real evaluate_weighted(const WeightedApproximant& w, const Real& g);

}  // namespace ssfa

#pragma once

#include <vector>

#include "ssfa/types.hpp"

namespace ssfa {

// Roots of the monic polynomial x^N + c[N-1] x^(N-1) + ... + c[0].
// Seeds come from double-precision companion-matrix eigenvalues and are
// polished simultaneously (Aberth corrections) at working precision.
std::vector<Complex> monic_roots(const std::vector<Real>& c);

}  // namespace ssfa

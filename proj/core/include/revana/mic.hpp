#pragma once

#include <cstddef>

#include "revana/stats.hpp"

namespace revana {

struct MicOptions {
  double b_exponent = 0.6;  // grid budget B(n) = max(4, ceil(n^b_exponent))
  int clump_factor = 15;    // superclump budget multiplier for the DP
};

std::size_t grid_budget(std::size_t n, double b_exponent);

// Maximal information coefficient. For every grid size (a, b) with
// a, b >= 2 and a * b <= B(n), one axis is equipartitioned (ties never
// split) and the other optimized by dynamic programming over clump
// boundaries; both orientations are tried and the normalized mutual
// information I / log2(min(a, b)) is maximized. Throws DegenerateInputError
// for n < 4.
double mic(const PairedSample& s, const MicOptions& opt = {});

// Exhaustive reference: enumerates every placement of cuts at value gaps on
// both axes. Exponential in n, hence the max_n guard (InputTooLargeError).
// mic(s) <= mic_exact(s) always: the approximation searches a subset of the
// same grids.
double mic_exact(const PairedSample& s, std::size_t max_n = 12,
                 const MicOptions& opt = {});

}  // namespace revana

#pragma once

#include <vector>

namespace parden::moo {

/// n_dirs points on the (m-1)-simplex. For m == 2 the Riesz s-energy
/// minimizer is exactly uniform spacing, so that is returned directly; for
/// m >= 3 the s-energy (s = m^2) is minimized by projected gradient descent
/// with step halving from seeded random simplex starts, corners pinned.
std::vector<std::vector<double>> reference_directions(int m, int n_dirs);

}  // namespace parden::moo

#pragma once

#include <Eigen/Core>
#include <vector>

#include "spherestat/measure.hpp"

namespace spherestat {

// Seeded generators of randomized inputs for verification runs and tests.
// Everything here is driven by an explicit Stream so runs replay exactly.

// Unit-norm weight vector with entries summing to zero.
Eigen::VectorXd random_sum_zero(int n, Stream& stream);

// Probability measure with the given number of atoms at uniform positions
// and positive dirichlet-ish weights bounded away from zero.
DiscreteMeasure random_probability_measure(int dim, int atoms, Stream& stream);

// Probability measure supported strictly inside the hemisphere around
// pole (atoms are sign-flipped into it).
DiscreteMeasure random_measure_on_hemisphere(const Hemisphere& h, int atoms,
                                             Stream& stream);

// Reflection-invariant probability measure on `pairs` antipodal pairs.
DiscreteMeasure random_r_invariant_measure(int dim, int pairs, Stream& stream);

// Haar-ish random orthogonal matrix (QR of a Gaussian matrix with sign fix).
Eigen::MatrixXd random_orthogonal(int dim, Stream& stream);

}  // namespace spherestat

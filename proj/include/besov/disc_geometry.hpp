#ifndef BESOV_DISC_GEOMETRY_HPP
#define BESOV_DISC_GEOMETRY_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "besov/common.hpp"

namespace besov {

/// d(z, w) = |(z - w) / (1 - conj(z) w)|, the pseudo-hyperbolic distance.
inline double pseudo_hyperbolic(complex z, complex w) {
    return std::abs((z - w) / (1.0 - std::conj(z) * w));
}

struct SequenceGeometry {
    double blaschke_sum = 0.0;       // sum of (1 - |z_n|)
    double min_separation = 0.0;     // pairwise min of d(z_n, z_k); NaN for < 2 points
    double uniform_separation = 1.0; // inf_n prod_{k != n} d(z_k, z_n)
};

/// Blaschke sum, pairwise separation and the uniform-separation infimum
/// of a finite sequence in the disc.  Conventions: a singleton has
/// undefined separation (NaN) and empty-product uniform separation 1.
inline SequenceGeometry sequence_geometry(const std::vector<complex>& zeros) {
    SequenceGeometry g;
    for (complex z : zeros) {
        if (!(std::abs(z) < 1.0))
            throw validation_error("sequence_geometry: points must lie in the open disc");
        g.blaschke_sum += 1.0 - std::abs(z);
    }
    const std::size_t n = zeros.size();
    if (n < 2) {
        g.min_separation = std::numeric_limits<double>::quiet_NaN();
        g.uniform_separation = 1.0;
        return g;
    }
    double min_sep = std::numeric_limits<double>::infinity();
    double unif = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double d = pseudo_hyperbolic(zeros[k], zeros[i]);
            prod *= d;
            if (k > i) min_sep = std::min(min_sep, d);
        }
        unif = std::min(unif, prod);
    }
    g.min_separation = min_sep;
    g.uniform_separation = unif;
    return g;
}

}  // namespace besov

#endif

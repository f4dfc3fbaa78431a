#pragma once

#include "nlsfem/types.hpp"

#include <vector>

namespace nlsfem {

/// Tensor Gauss-Legendre rule on the reference element [0,1]^dim.
struct QuadratureRule {
    int dim = 1;
    int points_per_dir = 0;
    /// Polynomial degree integrated exactly in each direction (2n - 1).
    int exactness = 0;
    std::vector<Point> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
};

/// n-point Gauss-Legendre nodes and weights on [0,1], n in [1,10].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor rule with n points per direction; x varies fastest in 2D.
/// Throws ConfigurationError for n outside [1,10] or dim outside {1,2}.
QuadratureRule gauss_rule(int dim, int n_points_per_dir);

} // namespace nlsfem

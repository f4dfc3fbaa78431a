#include "nlsfem/quadrature.hpp"

#include "nlsfem/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nlsfem {

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1 || n > 10) {
        throw ConfigurationError("Gauss rule needs 1..10 points per direction, got " + std::to_string(n));
    }
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);

    // Newton iteration on P_n over [-1,1], roots are symmetric.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        // Map [-1,1] -> [0,1]; store in increasing order.
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        nodes[lo] = 0.5 * (1.0 - x);
        nodes[hi] = 0.5 * (1.0 + x);
        weights[lo] = 0.5 * w;
        weights[hi] = 0.5 * w;
    }
    if (n % 2 == 1) {
        nodes[static_cast<std::size_t>(n / 2)] = 0.5;
    }
}

QuadratureRule gauss_rule(int dim, int n_points_per_dir)
{
    if (dim != 1 && dim != 2) {
        throw ConfigurationError("quadrature dimension must be 1 or 2");
    }
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre_unit(n_points_per_dir, x, w);

    QuadratureRule rule;
    rule.dim = dim;
    rule.points_per_dir = n_points_per_dir;
    rule.exactness = 2 * n_points_per_dir - 1;
    if (dim == 1) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            rule.points.push_back({x[i], 0.0});
            rule.weights.push_back(w[i]);
        }
    } else {
        for (std::size_t j = 0; j < x.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                rule.points.push_back({x[i], x[j]});
                rule.weights.push_back(w[i] * w[j]);
            }
        }
    }
    return rule;
}

} // namespace nlsfem

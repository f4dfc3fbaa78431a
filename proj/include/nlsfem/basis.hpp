#pragma once

#include "nlsfem/quadrature.hpp"
#include "nlsfem/types.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace nlsfem {

enum class BasisKind { LagrangeP1, LagrangeP2, LagrangeP3, HermiteCubic };

/// Parses "p1" | "p2" | "p3" | "hermite".
BasisKind parse_basis_kind(std::string_view text);
std::string to_string(BasisKind kind);

/// Polynomial degree p of the family; the expected L2 order is p + 1.
int polynomial_degree(BasisKind kind);

/// Reference shape functions on [0,1].
///
/// Lagrange P_p: p+1 equispaced nodes a/p, local index a = node index.
/// Cubic Hermite: local order (v(0), h v'(0), v(1), h v'(1)); derivative dofs
/// are scaled by the element size so the reference element is mesh-independent.
class Basis1D {
public:
    explicit Basis1D(BasisKind kind);

    [[nodiscard]] BasisKind kind() const noexcept { return kind_; }
    [[nodiscard]] int size() const noexcept { return n_; }
    [[nodiscard]] double value(int a, double xi) const;
    [[nodiscard]] double derivative(int a, double xi) const;

private:
    BasisKind kind_;
    int n_;
    std::vector<double> nodes_;
};

/// Shape values and reference gradients tabulated at the points of a rule.
/// Layout is point-major: entry (q, a) lives at q * dofs + a.
struct Tabulation {
    std::size_t points = 0;
    std::size_t dofs = 0;
    std::vector<double> value;
    std::vector<double> grad_x;
    std::vector<double> grad_y;
};

/// Reference element of one family in 1D or 2D. The 2D element is the tensor
/// product of the 1D one with local index a = ax + n1d * ay.
class BasisFamily {
public:
    BasisFamily(BasisKind kind, int dim);

    [[nodiscard]] BasisKind kind() const noexcept { return basis1d_.kind(); }
    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] int degree() const { return polynomial_degree(kind()); }
    [[nodiscard]] bool is_hermite() const noexcept { return kind() == BasisKind::HermiteCubic; }
    [[nodiscard]] int dofs_per_direction() const noexcept { return basis1d_.size(); }
    [[nodiscard]] int dofs_per_element() const noexcept;
    [[nodiscard]] const Basis1D& basis1d() const noexcept { return basis1d_; }

    [[nodiscard]] double value(int a, const Point& xi) const;
    [[nodiscard]] std::array<double, 2> gradient(int a, const Point& xi) const;

    [[nodiscard]] Tabulation tabulate(const QuadratureRule& rule) const;

private:
    Basis1D basis1d_;
    int dim_;
};

BasisFamily reference_basis(BasisKind kind, int dim);

} // namespace nlsfem

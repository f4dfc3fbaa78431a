#pragma once

#include "nlsfem/space.hpp"
#include "nlsfem/types.hpp"

#include <functional>
#include <span>

namespace nlsfem {

using ComplexFunction = std::function<Complex(const Point&)>;
using ComplexGradientFunction = std::function<ComplexGradient(const Point&)>;

/// Closed-form data for a smooth function: value, gradient, and the mixed
/// derivative d2/dy1dy2 (only needed to interpolate onto 2D Hermite elements).
struct SmoothFunction {
    ComplexFunction value;
    ComplexGradientFunction gradient;
    ComplexFunction mixed;
};

/// Member of the finite element space vanishing on the boundary, stored as
/// complex coefficients over the free dofs.
class DiscreteField {
public:
    DiscreteField() = default;
    explicit DiscreteField(FeSpacePtr space);
    DiscreteField(FeSpacePtr space, ComplexVector coefficients);

    [[nodiscard]] const FeSpacePtr& space() const noexcept { return space_; }
    [[nodiscard]] const ComplexVector& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] ComplexVector& coefficients() noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    /// Value at y in the closed box; throws DomainError outside.
    [[nodiscard]] Complex evaluate(const Point& y) const;
    [[nodiscard]] ComplexGradient gradient(const Point& y) const;

    /// Local coefficients of element e, zero for constrained dofs.
    void gather(int e, std::span<Complex> local) const;

    [[nodiscard]] bool all_finite() const;

private:
    FeSpacePtr space_;
    ComplexVector coeffs_;
};

Complex evaluate_field(const DiscreteField& field, const Point& y);

/// Nodal (Lagrange) or Hermite interpolant restricted to the free dofs.
DiscreteField interpolate(const FeSpacePtr& space, const SmoothFunction& u);

} // namespace nlsfem

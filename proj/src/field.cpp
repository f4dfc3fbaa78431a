#include "nlsfem/field.hpp"

#include "nlsfem/errors.hpp"

#include <cmath>
#include <vector>

namespace nlsfem {

DiscreteField::DiscreteField(FeSpacePtr space)
    : space_(std::move(space)), coeffs_(static_cast<std::size_t>(space_->num_free()), Complex{})
{
}

DiscreteField::DiscreteField(FeSpacePtr space, ComplexVector coefficients)
    : space_(std::move(space)), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != static_cast<std::size_t>(space_->num_free())) {
        throw ConfigurationError("coefficient vector length does not match the free dof count");
    }
}

void DiscreteField::gather(int e, std::span<Complex> local) const
{
    const auto free = space_->dofs().element_free(e);
    for (std::size_t a = 0; a < free.size(); ++a) {
        local[a] = free[a] >= 0 ? coeffs_[static_cast<std::size_t>(free[a])] : Complex{};
    }
}

Complex DiscreteField::evaluate(const Point& y) const
{
    const auto [e, xi] = space_->mesh().locate(y);
    const BasisFamily& basis = space_->basis();
    std::vector<Complex> local(static_cast<std::size_t>(basis.dofs_per_element()));
    gather(e, local);
    Complex sum{};
    for (std::size_t a = 0; a < local.size(); ++a) {
        sum += basis.value(static_cast<int>(a), xi) * local[a];
    }
    return sum;
}

ComplexGradient DiscreteField::gradient(const Point& y) const
{
    const auto [e, xi] = space_->mesh().locate(y);
    const BasisFamily& basis = space_->basis();
    std::vector<Complex> local(static_cast<std::size_t>(basis.dofs_per_element()));
    gather(e, local);
    const double inv_side = 1.0 / space_->mesh().side();
    ComplexGradient g{};
    for (std::size_t a = 0; a < local.size(); ++a) {
        const auto ref = basis.gradient(static_cast<int>(a), xi);
        g[0] += (ref[0] * inv_side) * local[a];
        g[1] += (ref[1] * inv_side) * local[a];
    }
    return g;
}

bool DiscreteField::all_finite() const
{
    for (const Complex& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

Complex evaluate_field(const DiscreteField& field, const Point& y)
{
    return field.evaluate(y);
}

DiscreteField interpolate(const FeSpacePtr& space, const SmoothFunction& u)
{
    DiscreteField out(space);
    const DofMap& dofs = space->dofs();
    const double s = space->mesh().side();
    for (int i = 0; i < dofs.num_free(); ++i) {
        const DofDescriptor& d = dofs.descriptor(dofs.global_index(i));
        Complex v;
        if (d.dx == 0 && d.dy == 0) {
            v = u.value(d.node);
        } else if (d.dx == 1 && d.dy == 1) {
            if (!u.mixed) {
                throw ConfigurationError("Hermite 2D interpolation needs the mixed derivative");
            }
            v = s * s * u.mixed(d.node);
        } else {
            const ComplexGradient g = u.gradient(d.node);
            v = s * (d.dx == 1 ? g[0] : g[1]);
        }
        out.coefficients()[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

} // namespace nlsfem

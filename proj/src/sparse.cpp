#include "nlsfem/sparse.hpp"

#include "nlsfem/simd/kernels.hpp"

#include <algorithm>
#include <set>

namespace nlsfem {

int CsrPattern::find(int i, int j) const
{
    const auto begin = col.begin() + row_ptr[static_cast<std::size_t>(i)];
    const auto end = col.begin() + row_ptr[static_cast<std::size_t>(i) + 1];
    const auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return -1;
    return static_cast<int>(it - col.begin());
}

CsrPatternPtr build_pattern(const FeSpace& space)
{
    const DofMap& dofs = space.dofs();
    std::vector<std::set<int>> rows(static_cast<std::size_t>(dofs.num_free()));
    for (int e = 0; e < space.mesh().num_elements(); ++e) {
        const auto free = dofs.element_free(e);
        for (const int i : free) {
            if (i < 0) continue;
            for (const int j : free) {
                if (j >= 0) rows[static_cast<std::size_t>(i)].insert(j);
            }
        }
    }
    auto pattern = std::make_shared<CsrPattern>();
    pattern->rows = dofs.num_free();
    pattern->row_ptr.reserve(rows.size() + 1);
    pattern->row_ptr.push_back(0);
    for (const auto& r : rows) {
        pattern->col.insert(pattern->col.end(), r.begin(), r.end());
        pattern->row_ptr.push_back(static_cast<int>(pattern->col.size()));
    }
    return pattern;
}

void multiply(const ComplexCsr& B, const ComplexVector& x, ComplexVector& y)
{
    y.resize(static_cast<std::size_t>(B.rows()));
    simd::active_kernels().csr_matvec(B.pattern->row_ptr.data(), B.pattern->col.data(),
                                      B.values.data(), x.data(), y.data(),
                                      static_cast<std::size_t>(B.rows()));
}

ComplexVector multiply(const RealCsr& B, const ComplexVector& x)
{
    const CsrPattern& p = *B.pattern;
    ComplexVector y(static_cast<std::size_t>(p.rows));
    for (int i = 0; i < p.rows; ++i) {
        Complex sum{};
        for (int k = p.row_ptr[static_cast<std::size_t>(i)]; k < p.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            sum += B.values[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(p.col[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(i)] = sum;
    }
    return y;
}

Complex bilinear(const RealCsr& B, const ComplexVector& x, const ComplexVector& y)
{
    const ComplexVector By = multiply(B, y);
    Complex sum{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::conj(x[i]) * By[i];
    }
    return sum;
}

} // namespace nlsfem

#pragma once

#include "nlsfem/space.hpp"
#include "nlsfem/types.hpp"

#include <memory>
#include <vector>

namespace nlsfem {

/// Compressed-row sparsity pattern with sorted column indices per row.
struct CsrPattern {
    int rows = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;

    [[nodiscard]] std::size_t nnz() const noexcept { return col.size(); }
    /// Position of (i, j) in the value array, or -1 if structurally zero.
    [[nodiscard]] int find(int i, int j) const;
};

using CsrPatternPtr = std::shared_ptr<const CsrPattern>;

/// Couplings between free dofs that share an element.
CsrPatternPtr build_pattern(const FeSpace& space);

template <class T>
struct CsrMatrix {
    CsrPatternPtr pattern;
    std::vector<T> values;

    [[nodiscard]] int rows() const noexcept { return pattern->rows; }

    [[nodiscard]] T at(int i, int j) const
    {
        const int k = pattern->find(i, j);
        return k < 0 ? T{} : values[static_cast<std::size_t>(k)];
    }
};

using RealCsr = CsrMatrix<double>;
using ComplexCsr = CsrMatrix<Complex>;

/// y = B x through the active SIMD kernel.
void multiply(const ComplexCsr& B, const ComplexVector& x, ComplexVector& y);
ComplexVector multiply(const RealCsr& B, const ComplexVector& x);

/// x^H B y for real B.
Complex bilinear(const RealCsr& B, const ComplexVector& x, const ComplexVector& y);

} // namespace nlsfem

#include "kernels_internal.hpp"

namespace nlsfem::simd {

namespace {

void combine3(Complex a, const double* x, Complex b, const double* y, Complex c, const double* z,
              Complex* out, std::size_t n)
{
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = a * x[j] + b * y[j] + c * z[j];
    }
}

void csr_matvec(const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                Complex* y, std::size_t rows)
{
    for (std::size_t i = 0; i < rows; ++i) {
        Complex sum{0.0, 0.0};
        for (int j = row_ptr[i]; j < row_ptr[i + 1]; ++j) {
            sum += val[j] * x[col[j]];
        }
        y[i] = sum;
    }
}

void tab_eval(const double* table, std::size_t nq, std::size_t nd, const Complex* c, Complex* out)
{
    for (std::size_t q = 0; q < nq; ++q) {
        Complex sum{0.0, 0.0};
        const double* row = table + q * nd;
        for (std::size_t a = 0; a < nd; ++a) {
            sum += row[a] * c[a];
        }
        out[q] = sum;
    }
}

void tab_accumulate(const double* table, std::size_t nq, std::size_t nd, const Complex* s,
                    Complex* out)
{
    for (std::size_t q = 0; q < nq; ++q) {
        const double* row = table + q * nd;
        for (std::size_t a = 0; a < nd; ++a) {
            out[a] += row[a] * s[q];
        }
    }
}

void nonlinear(const Complex* z, const double* w, double rho, Complex* out, std::size_t n)
{
    for (std::size_t q = 0; q < n; ++q) {
        const double r2 = z[q].real() * z[q].real() + z[q].imag() * z[q].imag();
        out[q] = (w[q] * detail::modulus_power(r2, rho)) * z[q];
    }
}

double weighted_sq_diff(const Complex* a, const Complex* b, const double* w, std::size_t n)
{
    double sum = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
        const double dr = a[q].real() - b[q].real();
        const double di = a[q].imag() - b[q].imag();
        sum += w[q] * (dr * dr + di * di);
    }
    return sum;
}

constexpr KernelTable kScalar{
    Isa::Scalar, "scalar", combine3, csr_matvec, tab_eval, tab_accumulate, nonlinear, weighted_sq_diff,
};

} // namespace

const KernelTable& scalar_kernels()
{
    return kScalar;
}

} // namespace nlsfem::simd

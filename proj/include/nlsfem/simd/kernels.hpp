#pragma once

// Data-parallel inner loops of assembly, stepping and error evaluation.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The variant is chosen once at runtime from the CPU
// feature bits; NLSFEM_SIMD=scalar in the environment forces the reference
// path. Complex data are interleaved (re, im) as in std::complex<double>.

#include "nlsfem/types.hpp"

#include <cstddef>

namespace nlsfem::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    Isa isa;
    const char* name;

    /// out[j] = a x[j] + b y[j] + c z[j] for real x, y, z.
    void (*combine3)(Complex a, const double* x, Complex b, const double* y, Complex c,
                     const double* z, Complex* out, std::size_t n);

    /// y = B x for a complex CSR matrix B with `rows` rows.
    void (*csr_matvec)(const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                       Complex* y, std::size_t rows);

    /// out[q] = sum_a table[q * nd + a] c[a] for q < nq.
    void (*tab_eval)(const double* table, std::size_t nq, std::size_t nd, const Complex* c,
                     Complex* out);

    /// out[a] += sum_q table[q * nd + a] s[q] for a < nd.
    void (*tab_accumulate)(const double* table, std::size_t nq, std::size_t nd, const Complex* s,
                           Complex* out);

    /// out[q] = w[q] |z[q]|^rho z[q].
    void (*nonlinear)(const Complex* z, const double* w, double rho, Complex* out, std::size_t n);

    /// sum_q w[q] |a[q] - b[q]|^2.
    double (*weighted_sq_diff)(const Complex* a, const Complex* b, const double* w, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_kernels();

/// The table selected for this process.
const KernelTable& active_kernels();

bool cpu_supports_avx2();

} // namespace nlsfem::simd

// Compiled with -mavx2 -mfma; only reached through dispatch after a CPU check.

#include "kernels_internal.hpp"

#include <immintrin.h>

namespace nlsfem::simd {

namespace {

// (x0, x0, x1, x1) from two consecutive reals.
inline __m256d spread_pair(const double* x)
{
    const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(x));
    return _mm256_permute4x64_pd(v, _MM_SHUFFLE(1, 1, 0, 0));
}

inline __m256d broadcast_complex(Complex a)
{
    return _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
}

// Two complex products (a0 b0, a1 b1) on interleaved lanes.
inline __m256d complex_mul(__m256d a, __m256d b)
{
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0xF);
    const __m256d b_swap = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline __m128d fold(__m256d acc)
{
    return _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
}

// Scalar tails work on raw doubles so no std::complex code is emitted with AVX encodings.
inline double* raw(Complex* p)
{
    return reinterpret_cast<double*>(p);
}

inline const double* raw(const Complex* p)
{
    return reinterpret_cast<const double*>(p);
}

inline __m256d load2(const Complex* p)
{
    return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline void store2(Complex* p, __m256d v)
{
    _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

void combine3(Complex a, const double* x, Complex b, const double* y, Complex c, const double* z,
              Complex* out, std::size_t n)
{
    const __m256d va = broadcast_complex(a);
    const __m256d vb = broadcast_complex(b);
    const __m256d vc = broadcast_complex(c);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d r = _mm256_mul_pd(va, spread_pair(x + j));
        r = _mm256_fmadd_pd(vb, spread_pair(y + j), r);
        r = _mm256_fmadd_pd(vc, spread_pair(z + j), r);
        store2(out + j, r);
    }
    for (; j < n; ++j) {
        raw(out)[2 * j] = a.real() * x[j] + b.real() * y[j] + c.real() * z[j];
        raw(out)[2 * j + 1] = a.imag() * x[j] + b.imag() * y[j] + c.imag() * z[j];
    }
}

void csr_matvec(const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                Complex* y, std::size_t rows)
{
    const auto* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < rows; ++i) {
        __m256d acc = _mm256_setzero_pd();
        int j = row_ptr[i];
        const int end = row_ptr[i + 1];
        for (; j + 2 <= end; j += 2) {
            const __m128d x0 = _mm_loadu_pd(xd + 2 * static_cast<std::ptrdiff_t>(col[j]));
            const __m128d x1 = _mm_loadu_pd(xd + 2 * static_cast<std::ptrdiff_t>(col[j + 1]));
            const __m256d xv = _mm256_set_m128d(x1, x0);
            acc = _mm256_add_pd(acc, complex_mul(load2(val + j), xv));
        }
        if (j < end) {
            const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(raw(val + j)));
            const __m256d xv = _mm256_castpd128_pd256(_mm_loadu_pd(xd + 2 * static_cast<std::ptrdiff_t>(col[j])));
            acc = _mm256_add_pd(acc, _mm256_insertf128_pd(complex_mul(v, xv), _mm_setzero_pd(), 1));
        }
        _mm_storeu_pd(raw(y + i), fold(acc));
    }
}

void tab_eval(const double* table, std::size_t nq, std::size_t nd, const Complex* c, Complex* out)
{
    for (std::size_t q = 0; q < nq; ++q) {
        const double* row = table + q * nd;
        __m256d acc = _mm256_setzero_pd();
        std::size_t a = 0;
        for (; a + 2 <= nd; a += 2) {
            acc = _mm256_fmadd_pd(spread_pair(row + a), load2(c + a), acc);
        }
        __m128d sum = fold(acc);
        for (; a < nd; ++a) {
            sum = _mm_fmadd_pd(_mm_set1_pd(row[a]), _mm_loadu_pd(raw(c + a)), sum);
        }
        _mm_storeu_pd(raw(out + q), sum);
    }
}

void tab_accumulate(const double* table, std::size_t nq, std::size_t nd, const Complex* s,
                    Complex* out)
{
    std::size_t a = 0;
    for (; a + 2 <= nd; a += 2) {
        __m256d acc = load2(out + a);
        for (std::size_t q = 0; q < nq; ++q) {
            acc = _mm256_fmadd_pd(spread_pair(table + q * nd + a), broadcast_complex(s[q]), acc);
        }
        store2(out + a, acc);
    }
    for (; a < nd; ++a) {
        __m128d sum = _mm_loadu_pd(raw(out + a));
        for (std::size_t q = 0; q < nq; ++q) {
            sum = _mm_fmadd_pd(_mm_set1_pd(table[q * nd + a]), _mm_loadu_pd(raw(s + q)), sum);
        }
        _mm_storeu_pd(raw(out + a), sum);
    }
}

void nonlinear(const Complex* z, const double* w, double rho, Complex* out, std::size_t n)
{
    const bool integral = rho == static_cast<double>(static_cast<int>(rho)) && rho >= 0.0 && rho <= 16.0;
    const int irho = integral ? static_cast<int>(rho) : 0;
    std::size_t q = 0;
    for (; q + 2 <= n; q += 2) {
        const __m256d zv = load2(z + q);
        const __m256d sq = _mm256_mul_pd(zv, zv);
        // (|z0|^2, |z0|^2, |z1|^2, |z1|^2)
        const __m256d r2 = _mm256_hadd_pd(sq, sq);
        __m256d factor;
        if (integral) {
            factor = _mm256_set1_pd(1.0);
            for (int i = 0; i < irho / 2; ++i) factor = _mm256_mul_pd(factor, r2);
            if (irho % 2 == 1) factor = _mm256_mul_pd(factor, _mm256_sqrt_pd(r2));
        } else {
            alignas(32) double lanes[4];
            _mm256_store_pd(lanes, r2);
            const double f0 = detail::modulus_power(lanes[0], rho);
            const double f1 = detail::modulus_power(lanes[2], rho);
            factor = _mm256_setr_pd(f0, f0, f1, f1);
        }
        factor = _mm256_mul_pd(spread_pair(w + q), factor);
        store2(out + q, _mm256_mul_pd(factor, zv));
    }
    for (; q < n; ++q) {
        const double zr = raw(z)[2 * q];
        const double zi = raw(z)[2 * q + 1];
        const double f = w[q] * detail::modulus_power(zr * zr + zi * zi, rho);
        raw(out)[2 * q] = f * zr;
        raw(out)[2 * q + 1] = f * zi;
    }
}

double weighted_sq_diff(const Complex* a, const Complex* b, const double* w, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t q = 0;
    for (; q + 2 <= n; q += 2) {
        const __m256d d = _mm256_sub_pd(load2(a + q), load2(b + q));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(d, d), spread_pair(w + q), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; q < n; ++q) {
        const double dr = raw(a)[2 * q] - raw(b)[2 * q];
        const double di = raw(a)[2 * q + 1] - raw(b)[2 * q + 1];
        sum += w[q] * (dr * dr + di * di);
    }
    return sum;
}

constexpr KernelTable kAvx2{
    Isa::Avx2, "avx2", combine3, csr_matvec, tab_eval, tab_accumulate, nonlinear, weighted_sq_diff,
};

} // namespace

const KernelTable& detail::avx2_table()
{
    return kAvx2;
}

} // namespace nlsfem::simd

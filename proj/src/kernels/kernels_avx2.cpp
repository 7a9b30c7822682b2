#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "qpgeom/kernels.hpp"

namespace qpgeom::kernels {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

void spmv(const Csr& a, const double* x, double* y) {
    for (int r = 0; r < a.rows; ++r) {
        int k = a.row_ptr[static_cast<std::size_t>(r)];
        const int end = a.row_ptr[static_cast<std::size_t>(r) + 1];
        __m256d acc = _mm256_setzero_pd();
        for (; k + 4 <= end; k += 4) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.col.data() + k));
            const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.val.data() + k), xv, acc);
        }
        double tail = hsum(acc);
        for (; k < end; ++k) tail += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
        y[r] = tail;
    }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        m = _mm256_max_pd(m, _mm256_and_pd(kAbsMask, _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k))));
    double out = hmax(m);
    for (; k < n; ++k) out = std::max(out, std::fabs(a[k] - b[k]));
    return out;
}

double max_rel_error(const double* ref, const double* est, std::size_t n, double floor) {
    const __m256d f = _mm256_set1_pd(floor);
    __m256d m = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d rv = _mm256_loadu_pd(ref + k);
        const __m256d keep = _mm256_cmp_pd(rv, f, _CMP_GE_OQ);
        const __m256d err = _mm256_div_pd(_mm256_and_pd(kAbsMask, _mm256_sub_pd(_mm256_loadu_pd(est + k), rv)), rv);
        m = _mm256_max_pd(m, _mm256_and_pd(keep, err));
    }
    double out = hmax(m);
    for (; k < n; ++k)
        if (ref[k] >= floor) out = std::max(out, std::fabs(est[k] - ref[k]) / ref[k]);
    return out;
}

double sum(const double* a, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) s = _mm256_add_pd(s, _mm256_loadu_pd(a + k));
    double out = hsum(s);
    for (; k < n; ++k) out += a[k];
    return out;
}

void scale(double* a, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) _mm256_storeu_pd(a + k, _mm256_mul_pd(_mm256_loadu_pd(a + k), f));
    for (; k < n; ++k) a[k] *= factor;
}

void axpy_powers(double* out, std::size_t n, double c, double r) {
    const double r2 = r * r;
    __m256d p = _mm256_set_pd(c * r2 * r, c * r2, c * r, c);
    const __m256d step = _mm256_set1_pd(r2 * r2);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_loadu_pd(out + k), p));
        p = _mm256_mul_pd(p, step);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, p);
    for (std::size_t j = 0; k < n; ++k, ++j) out[k] += lanes[j];
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{"avx2", spmv, max_abs_diff, max_rel_error, sum, scale, axpy_powers};
    return &table;
}

}  // namespace qpgeom::kernels

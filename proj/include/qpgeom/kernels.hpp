#pragma once

#include <cstddef>
#include <vector>

namespace qpgeom::kernels {

/// Compressed sparse rows.
struct Csr {
    int rows = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;
};

/// Numeric inner loops of the oracle. Every variant must agree with the
/// scalar table up to floating-point reassociation.
struct KernelTable {
    const char* name;
    /// y = A x
    void (*spmv)(const Csr& a, const double* x, double* y);
    /// max_k |a_k - b_k|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    /// max_k |est_k - ref_k| / ref_k over k with ref_k >= floor; 0 if none
    double (*max_rel_error)(const double* ref, const double* est, std::size_t n, double floor);
    double (*sum)(const double* a, std::size_t n);
    void (*scale)(double* a, std::size_t n, double factor);
    /// out_j += c * r^j for j < n
    void (*axpy_powers)(double* out, std::size_t n, double c, double r);
};

const KernelTable& scalar_table();
/// Null when the build has no AVX2 variant.
const KernelTable* avx2_table();

/// AVX2 when compiled in and supported by the CPU, unless the environment
/// variable QPGEOM_SIMD is set to "scalar".
const KernelTable& active();

}  // namespace qpgeom::kernels

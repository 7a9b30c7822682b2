#include <algorithm>
#include <cmath>

#include "qpgeom/kernels.hpp"

namespace qpgeom::kernels {

namespace {

void spmv(const Csr& a, const double* x, double* y) {
    for (int r = 0; r < a.rows; ++r) {
        double acc = 0.0;
        for (int k = a.row_ptr[static_cast<std::size_t>(r)]; k < a.row_ptr[static_cast<std::size_t>(r) + 1]; ++k)
            acc += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
        y[r] = acc;
    }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

double max_rel_error(const double* ref, const double* est, std::size_t n, double floor) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        if (ref[k] >= floor) m = std::max(m, std::fabs(est[k] - ref[k]) / ref[k]);
    return m;
}

double sum(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += a[k];
    return s;
}

void scale(double* a, std::size_t n, double factor) {
    for (std::size_t k = 0; k < n; ++k) a[k] *= factor;
}

void axpy_powers(double* out, std::size_t n, double c, double r) {
    double p = c;
    for (std::size_t k = 0; k < n; ++k) {
        out[k] += p;
        p *= r;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", spmv, max_abs_diff, max_rel_error, sum, scale, axpy_powers};
    return table;
}

}  // namespace qpgeom::kernels

#include "qpgeom/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

#include "qpgeom/kernels.hpp"

namespace qpgeom {

const char* to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::direct_solve: return "direct_solve";
        case SolveMethod::power_iteration: return "power_iteration";
        case SolveMethod::gth: return "gth";
    }
    return "?";
}

NotConverged::NotConverged(int iterations, double residual)
    : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) + " iterations (residual " +
                         std::to_string(residual) + ")"),
      iterations_(iterations) {}

namespace {

struct Entry {
    int from;
    int to;
    double prob;
};

std::vector<Entry> transitions(const WalkSpec& w, int N) {
    const int side = N + 1;
    std::vector<Entry> out;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            const int from = i * side + j;
            double hold = 0.0;
            for (const auto& mv : moves_from(w, i, j)) {
                const int a = i + mv.ds, b = j + mv.dt;
                const double p = mv.prob.to_double();
                if (a > N || b > N || (a == i && b == j))
                    hold += p;
                else
                    out.push_back({from, a * side + b, p});
            }
            if (hold > 0.0) out.push_back({from, from, hold});
        }
    return out;
}

// Transpose of P in CSR form, so that y = P^T x is pi P for row vector pi.
kernels::Csr transpose_csr(const std::vector<Entry>& entries, int states) {
    kernels::Csr a;
    a.rows = states;
    a.row_ptr.assign(static_cast<std::size_t>(states) + 1, 0);
    for (const auto& e : entries) ++a.row_ptr[static_cast<std::size_t>(e.to) + 1];
    for (int r = 0; r < states; ++r) a.row_ptr[static_cast<std::size_t>(r) + 1] += a.row_ptr[static_cast<std::size_t>(r)];
    a.col.resize(entries.size());
    a.val.resize(entries.size());
    std::vector<int> fill(a.row_ptr.begin(), a.row_ptr.end() - 1);
    for (const auto& e : entries) {
        const auto slot = static_cast<std::size_t>(fill[static_cast<std::size_t>(e.to)]++);
        a.col[slot] = e.from;
        a.val[slot] = e.prob;
    }
    return a;
}

double residual(const kernels::Csr& pt, const std::vector<double>& pi, std::vector<double>& scratch) {
    const auto& k = kernels::active();
    k.spmv(pt, pi.data(), scratch.data());
    return k.max_abs_diff(scratch.data(), pi.data(), pi.size());
}

std::vector<double> direct(const std::vector<Entry>& entries, int states) {
    const int anchor = states - 1;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries.size() + 2 * static_cast<std::size_t>(states));
    // Row r of (P^T - I): sum_from pi(from) P(from, r) - pi(r) = 0.
    for (const auto& e : entries)
        if (e.to != anchor) trips.emplace_back(e.to, e.from, e.prob);
    for (int s = 0; s < states; ++s) {
        if (s != anchor) trips.emplace_back(s, s, -1.0);
        trips.emplace_back(anchor, s, 1.0);
    }
    Eigen::SparseMatrix<double> a(states, states);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU factorization failed: " + lu.lastErrorMessage());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(states);
    rhs[anchor] = 1.0;
    const Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU solve failed");
    return {x.data(), x.data() + states};
}

// States are ordered i * (N + 1) + j, so every transition stays within
// `band` = N + 2 of the diagonal and elimination fill does too.
std::vector<double> gth(const std::vector<Entry>& entries, int states, int band) {
    const int width = 2 * band + 1;
    std::vector<double> a(static_cast<std::size_t>(states) * static_cast<std::size_t>(width), 0.0);
    auto at = [&](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(width) + static_cast<std::size_t>(j - i + band)];
    };
    for (const auto& e : entries)
        if (e.from != e.to) at(e.from, e.to) += e.prob;
    for (int k = states - 1; k > 0; --k) {
        const int lo = std::max(0, k - band);
        double s = 0.0;
        for (int j = lo; j < k; ++j) s += at(k, j);
        if (s <= 0.0) throw std::runtime_error("truncated chain is reducible");
        for (int i = lo; i < k; ++i) at(i, k) /= s;
        for (int i = lo; i < k; ++i) {
            const double f = at(i, k);
            if (f == 0.0) continue;
            for (int j = lo; j < k; ++j) at(i, j) += f * at(k, j);
        }
    }
    std::vector<double> pi(static_cast<std::size_t>(states), 0.0);
    pi[0] = 1.0;
    for (int k = 1; k < states; ++k) {
        double acc = 0.0;
        for (int i = std::max(0, k - band); i < k; ++i) acc += pi[static_cast<std::size_t>(i)] * at(i, k);
        pi[static_cast<std::size_t>(k)] = acc;
    }
    return pi;
}

}  // namespace

StationaryEstimate truncated_stationary(const WalkSpec& w, int N, SolveMethod method, double threshold, int max_iterations) {
    if (N < 1) throw std::invalid_argument("truncation N must be positive");
    const int states = (N + 1) * (N + 1);
    const auto entries = transitions(w, N);
    const auto pt = transpose_csr(entries, states);
    const auto& k = kernels::active();

    StationaryEstimate est;
    est.N = N;
    est.method = method;
    std::vector<double> scratch(static_cast<std::size_t>(states));
    if (method != SolveMethod::power_iteration) {
        est.pi = method == SolveMethod::gth ? gth(entries, states, N + 2) : direct(entries, states);
        for (auto& p : est.pi) p = std::max(p, 0.0);
        k.scale(est.pi.data(), est.pi.size(), 1.0 / k.sum(est.pi.data(), est.pi.size()));
        est.residual_norm = residual(pt, est.pi, scratch);
        return est;
    }

    est.pi.assign(static_cast<std::size_t>(states), 1.0 / states);
    for (int it = 1; it <= max_iterations; ++it) {
        k.spmv(pt, est.pi.data(), scratch.data());
        const double delta = k.max_abs_diff(scratch.data(), est.pi.data(), est.pi.size());
        est.pi.swap(scratch);
        k.scale(est.pi.data(), est.pi.size(), 1.0 / k.sum(est.pi.data(), est.pi.size()));
        est.iterations = it;
        if (delta <= threshold) {
            est.residual_norm = residual(pt, est.pi, scratch);
            if (est.residual_norm <= threshold) return est;
        }
    }
    throw NotConverged(max_iterations, residual(pt, est.pi, scratch));
}

std::vector<double> measure_grid(const TermSet& g, int N) {
    const auto side = static_cast<std::size_t>(N + 1);
    std::vector<double> m(side * side, 0.0);
    const auto& k = kernels::active();
    for (const auto& t : g) {
        const double alpha = t.alpha.to_double(), rho = t.rho.to_double(), sigma = t.sigma.to_double();
        for (std::size_t i = 0; i < side; ++i) k.axpy_powers(m.data() + i * side, side, alpha * std::pow(rho, static_cast<double>(i)), sigma);
    }
    return m;
}

Comparison compare(const StationaryEstimate& est, const TermSet& g, int window) {
    const int N = est.N;
    const auto side = static_cast<std::size_t>(N + 1);
    auto m = measure_grid(g, N);
    const auto& k = kernels::active();
    const double total = k.sum(m.data(), m.size());
    if (total != 0.0) k.scale(m.data(), m.size(), 1.0 / total);

    Comparison c;
    const int W = std::min(window, N);
    for (int i = 0; i <= W; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * side;
        const double e = k.max_rel_error(est.pi.data() + row, m.data() + row, static_cast<std::size_t>(W) + 1, 1e-12);
        if (e > c.max_rel_error) {
            c.max_rel_error = e;
            c.worst_i = i;
            for (int j = 0; j <= W; ++j) {
                const double p = est.at(i, j);
                if (p >= 1e-12 && std::fabs(m[row + static_cast<std::size_t>(j)] - p) / p == e) c.worst_j = j;
            }
        }
    }
    return c;
}

}  // namespace qpgeom

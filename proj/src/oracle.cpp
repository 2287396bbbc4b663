#include "semisep/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "semisep/errors.hpp"

namespace semisep {

namespace {

void check_cap(int n, int cap) {
    if (n > cap)
        throw std::invalid_argument("assemble_dense: n=" + std::to_string(n) +
                                    " exceeds dense cap " + std::to_string(cap));
}

} // namespace

DenseMatrix::DenseMatrix(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("DenseMatrix: n must be >= 1");
    a.assign(static_cast<size_t>(n) * n, 0.0);
}

DenseMatrix assemble_dense(const SemiSeparableSpec& s, int cap) {
    check_cap(s.n, cap);
    DenseMatrix m(s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            m.at(i, j) = entry(s, i, j);
    return m;
}

DenseMatrix assemble_dense(const ExponentialKernelSpec& s, int cap) {
    check_cap(s.n, cap);
    DenseMatrix m(s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            m.at(i, j) = kernel_entry(s, i, j);
    return m;
}

DenseLU DenseLU::factor(DenseMatrix m) {
    const int n = m.n;
    DenseLU f;
    f.n = n;
    f.lu = std::move(m.a);
    f.piv.assign(static_cast<size_t>(n), 0);
    f.parity = 1;
    auto at = [&](int i, int j) -> double& { return f.lu[static_cast<size_t>(i) * n + j]; };

    for (int k = 0; k < n; ++k) {
        int pr = k;
        double best = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double c = std::abs(at(i, k));
            if (c > best) { best = c; pr = i; }
        }
        if (best == 0.0)
            throw SingularMatrixError(k, "dense LU: no nonzero pivot in column " + std::to_string(k));
        f.piv[k] = pr;
        if (pr != k) {
            f.parity = -f.parity;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(pr, j));
        }
        const double inv = 1.0 / at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double mult = at(i, k) * inv;
            at(i, k) = mult;
            if (mult != 0.0)
                for (int j = k + 1; j < n; ++j) at(i, j) -= mult * at(k, j);
        }
    }
    return f;
}

std::vector<double> DenseLU::solve(std::span<const double> b) const {
    if (b.size() != static_cast<size_t>(n))
        throw std::invalid_argument("DenseLU::solve: b must have n entries");
    std::vector<double> x(b.begin(), b.end());
    auto at = [&](int i, int j) { return lu[static_cast<size_t>(i) * n + j]; };

    // The factorization swaps entire rows (multipliers included), so P*A =
    // L*U holds globally: permute b completely before the forward sweep.
    for (int k = 0; k < n; ++k) std::swap(x[k], x[piv[k]]);
    for (int k = 0; k < n; ++k) {
        const double xk = x[k];
        if (xk != 0.0)
            for (int i = k + 1; i < n; ++i) x[i] -= at(i, k) * xk;
    }
    for (int k = n - 1; k >= 0; --k) {
        double acc = x[k];
        for (int j = k + 1; j < n; ++j) acc -= at(k, j) * x[j];
        x[k] = acc / at(k, k);
    }
    return x;
}

LogDet DenseLU::logdet() const {
    LogDet r;
    r.value = 0.0;
    r.sign = parity;
    for (int k = 0; k < n; ++k) {
        const double d = lu[static_cast<size_t>(k) * n + k];
        if (d == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        r.value += std::log(std::abs(d));
        if (d < 0.0) r.sign = -r.sign;
    }
    return r;
}

std::vector<double> dense_solve(DenseMatrix m, std::span<const double> b) {
    return DenseLU::factor(std::move(m)).solve(b);
}

LogDet dense_logdet(DenseMatrix m) {
    try {
        return DenseLU::factor(std::move(m)).logdet();
    } catch (const SingularMatrixError&) {
        return {-std::numeric_limits<double>::infinity(), 0};
    }
}

namespace {

template <typename EntryFn>
double residual_rowwise(int n, EntryFn&& aij, std::span<const double> x,
                        std::span<const double> b) {
    if (x.size() != static_cast<size_t>(n) || b.size() != static_cast<size_t>(n))
        throw std::invalid_argument("dense_residual_inf: x and b must have n entries");
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = -b[i];
        for (int j = 0; j < n; ++j) acc += aij(i, j) * x[j];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

} // namespace

double dense_residual_inf(const SemiSeparableSpec& s, std::span<const double> x,
                          std::span<const double> b) {
    return residual_rowwise(s.n, [&](int i, int j) { return entry(s, i, j); }, x, b);
}

double dense_residual_inf(const ExponentialKernelSpec& s, std::span<const double> x,
                          std::span<const double> b) {
    return residual_rowwise(s.n, [&](int i, int j) { return kernel_entry(s, i, j); }, x, b);
}

} // namespace semisep

#include "semisep/semiseparable.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace semisep {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_ij(int n, int i, int j) {
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("entry: index out of range (n=" + std::to_string(n) +
                                ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")");
}

} // namespace

SemiSeparableSpec::SemiSeparableSpec(int n_, int p_, std::vector<double> diag_,
                                     std::vector<double> u_, std::vector<double> v_)
    : n(n_), p(p_), diag(std::move(diag_)), u(std::move(u_)), v(std::move(v_)) {
    require(n >= 1, "SemiSeparableSpec: n must be >= 1");
    require(p >= 0, "SemiSeparableSpec: p must be >= 0");
    require(diag.size() == static_cast<size_t>(n), "SemiSeparableSpec: diag must have n entries");
    require(u.size() == static_cast<size_t>(n) * static_cast<size_t>(p),
            "SemiSeparableSpec: u must have n*p entries");
    require(v.size() == static_cast<size_t>(n) * static_cast<size_t>(p),
            "SemiSeparableSpec: v must have n*p entries");
}

ExponentialKernelSpec::ExponentialKernelSpec(int n_, int p_, double d_,
                                             std::vector<double> alpha_,
                                             std::vector<double> beta_,
                                             std::vector<double> t_)
    : n(n_), p(p_), d(d_), alpha(std::move(alpha_)), beta(std::move(beta_)), t(std::move(t_)) {
    require(n >= 1, "ExponentialKernelSpec: n must be >= 1");
    require(p >= 1, "ExponentialKernelSpec: p must be >= 1");
    require(alpha.size() == static_cast<size_t>(p), "ExponentialKernelSpec: alpha must have p entries");
    require(beta.size() == static_cast<size_t>(p), "ExponentialKernelSpec: beta must have p entries");
    require(t.size() == static_cast<size_t>(n), "ExponentialKernelSpec: t must have n entries");
    for (double b : beta) require(b >= 0.0, "ExponentialKernelSpec: beta entries must be >= 0");
    for (int i = 0; i + 1 < n; ++i)
        require(t[i] <= t[i + 1], "ExponentialKernelSpec: t must be nondecreasing");
}

double entry(const SemiSeparableSpec& s, int i, int j) {
    check_ij(s.n, i, j);
    if (i == j) return s.diag[i];
    const int lo = i < j ? i : j;
    const int hi = i < j ? j : i;
    double acc = 0.0;
    for (int l = 0; l < s.p; ++l) acc += s.ug(lo, l) * s.vg(hi, l);
    return acc;
}

double kernel_entry(const ExponentialKernelSpec& s, int i, int j) {
    check_ij(s.n, i, j);
    if (i == j) return s.d;
    const double gap = std::abs(s.t[i] - s.t[j]);
    double acc = 0.0;
    for (int l = 0; l < s.p; ++l) acc += s.alpha[l] * std::exp(-s.beta[l] * gap);
    return acc;
}

SemiSeparableSpec kernel_to_generators(const ExponentialKernelSpec& s) {
    std::vector<double> u(static_cast<size_t>(s.n) * s.p);
    std::vector<double> v(static_cast<size_t>(s.n) * s.p);
    for (int i = 0; i < s.n; ++i) {
        for (int l = 0; l < s.p; ++l) {
            u[static_cast<size_t>(i) * s.p + l] = s.alpha[l] * std::exp(s.beta[l] * s.t[i]);
            v[static_cast<size_t>(i) * s.p + l] = std::exp(-s.beta[l] * s.t[i]);
        }
    }
    std::vector<double> diag(static_cast<size_t>(s.n), s.d);
    return SemiSeparableSpec(s.n, s.p, std::move(diag), std::move(u), std::move(v));
}

std::vector<double> matvec(const SemiSeparableSpec& s, std::span<const double> x) {
    if (x.size() != static_cast<size_t>(s.n))
        throw std::invalid_argument("matvec: x must have n entries");
    const int n = s.n, p = s.p;
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    std::vector<double> acc(static_cast<size_t>(p));

    // Backward sweep: acc[l] = sum_{j>i} v(j,l)*x[j] when visiting i.
    for (int l = 0; l < p; ++l) acc[l] = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        double s1 = 0.0;
        for (int l = 0; l < p; ++l) s1 += s.ug(i, l) * acc[l];
        y[i] = s1;
        for (int l = 0; l < p; ++l) acc[l] += s.vg(i, l) * x[i];
    }
    // Forward sweep: acc[l] = sum_{j<i} u(j,l)*x[j] when visiting i.
    for (int l = 0; l < p; ++l) acc[l] = 0.0;
    for (int i = 0; i < n; ++i) {
        double s1 = s.diag[i] * x[i];
        for (int l = 0; l < p; ++l) s1 += s.vg(i, l) * acc[l];
        y[i] += s1;
        for (int l = 0; l < p; ++l) acc[l] += s.ug(i, l) * x[i];
    }
    return y;
}

std::vector<double> matvec(const ExponentialKernelSpec& s, std::span<const double> x) {
    if (x.size() != static_cast<size_t>(s.n))
        throw std::invalid_argument("matvec: x must have n entries");
    const int n = s.n, p = s.p;
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    std::vector<double> acc(static_cast<size_t>(p));

    // acc[l] = sum_{j>i} exp(-beta_l (t_j - t_i)) x_j, advanced by one decay
    // factor per step. Only nonpositive exponents are ever formed.
    for (int l = 0; l < p; ++l) acc[l] = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        double s1 = 0.0;
        for (int l = 0; l < p; ++l) s1 += s.alpha[l] * acc[l];
        y[i] = s1;
        if (i > 0) {
            const double gap = s.t[i] - s.t[i - 1];
            for (int l = 0; l < p; ++l)
                acc[l] = std::exp(-s.beta[l] * gap) * (acc[l] + x[i]);
        }
    }
    for (int l = 0; l < p; ++l) acc[l] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            const double gap = s.t[i] - s.t[i - 1];
            for (int l = 0; l < p; ++l)
                acc[l] = std::exp(-s.beta[l] * gap) * (acc[l] + x[i - 1]);
        }
        double s1 = s.d * x[i];
        for (int l = 0; l < p; ++l) s1 += s.alpha[l] * acc[l];
        y[i] += s1;
    }
    return y;
}

} // namespace semisep

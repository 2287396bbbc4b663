#include "semisep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace semisep {

namespace {

EssFactor factor_system(ExtendedSystem sys) {
    BandedFactorization fac = lu_factor(sys.assemble_band());
    return EssFactor{std::move(sys), std::move(fac), KernelLdlt{}};
}

// Right-looking LDL^T recursion on the kernel matrix itself. With
// S_j = sum_{k<j} d_k * (G(k,j) .* w_k)(G(k,j) .* w_k)^T (p x p, maintained
// by one decay-scaled rank-1 update per row), matching A = L*D*L^T entry by
// entry forces
//
//   d_j = d - alpha^T S_j alpha,   w_j = (1 - S_j alpha) / d_j.
//
// No pivoting: the result is kept only if every d_j is positive and finite,
// which certifies A positive definite (all leading minors positive) and the
// recursion backward stable. Anything else -- indefinite kernels, exactly
// singular leading blocks -- is left to the pivoted banded factors.
KernelLdlt build_kernel_ldlt(const ExponentialKernelSpec& s) {
    KernelLdlt f;
    f.n = s.n;
    f.p = s.p;
    f.alpha = s.alpha;
    const int n = s.n;
    const int p = s.p;
    f.gamma.resize(n > 0 ? static_cast<size_t>(n - 1) * p : 0);
    for (int k = 0; k + 1 < n; ++k) {
        const double dt = s.t[k + 1] - s.t[k];
        for (int l = 0; l < p; ++l)
            f.gamma[static_cast<size_t>(k) * p + l] = std::exp(-s.beta[l] * dt);
    }
    f.w.assign(static_cast<size_t>(n) * p, 0.0);
    f.d.assign(n, 0.0);
    std::vector<double> sm(static_cast<size_t>(p) * p, 0.0); // S_j
    std::vector<double> sa(p, 0.0);                          // S_j * alpha
    bool ok = true;
    for (int j = 0; j < n; ++j) {
        if (j > 0) {
            const double* wp = &f.w[static_cast<size_t>(j - 1) * p];
            const double* g = &f.gamma[static_cast<size_t>(j - 1) * p];
            const double dp = f.d[j - 1];
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b)
                    sm[static_cast<size_t>(a) * p + b] =
                        g[a] * (sm[static_cast<size_t>(a) * p + b] + dp * wp[a] * wp[b]) * g[b];
        }
        double quad = 0.0;
        for (int a = 0; a < p; ++a) {
            double acc = 0.0;
            for (int b = 0; b < p; ++b) acc += sm[static_cast<size_t>(a) * p + b] * s.alpha[b];
            sa[a] = acc;
            quad += s.alpha[a] * acc;
        }
        const double dj = s.d - quad;
        if (!(dj > 0.0) || !std::isfinite(dj)) { // !(> 0) also rejects NaN
            ok = false;
            break;
        }
        f.d[j] = dj;
        double* wj = &f.w[static_cast<size_t>(j) * p];
        for (int a = 0; a < p; ++a) {
            wj[a] = (1.0 - sa[a]) / dj;
            if (!std::isfinite(wj[a])) ok = false;
        }
        if (!ok) break;
    }
    f.valid = ok;
    return f;
}

// Forward sweep (I + strict lower part) z = b carries the p running sums
// F_i[a] = sum_{j<i} G_a(j,i) w[j,a] z_j; the backward sweep carries the
// mirrored sums. Both touch each of gamma and w once: O(p*n) total.
std::vector<double> ldlt_solve(const KernelLdlt& f, std::span<const double> b) {
    const int n = f.n;
    const int p = f.p;
    std::vector<double> x(b.begin(), b.end());
    std::vector<double> acc(p, 0.0);
    for (int i = 1; i < n; ++i) {
        const double* g = &f.gamma[static_cast<size_t>(i - 1) * p];
        const double* wp = &f.w[static_cast<size_t>(i - 1) * p];
        const double zp = x[i - 1];
        double dot = 0.0;
        for (int a = 0; a < p; ++a) {
            acc[a] = g[a] * (acc[a] + wp[a] * zp);
            dot += f.alpha[a] * acc[a];
        }
        x[i] -= dot;
    }
    for (int i = 0; i < n; ++i) x[i] /= f.d[i];
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int i = n - 2; i >= 0; --i) {
        const double* g = &f.gamma[static_cast<size_t>(i) * p];
        const double* wi = &f.w[static_cast<size_t>(i) * p];
        const double xn = x[i + 1];
        double dot = 0.0;
        for (int a = 0; a < p; ++a) {
            acc[a] = g[a] * (acc[a] + f.alpha[a] * xn);
            dot += wi[a] * acc[a];
        }
        x[i] -= dot;
    }
    return x;
}

} // namespace

EssFactor factorize(const SemiSeparableSpec& s) { return factor_system(embed_rankp(s)); }

EssFactor factorize(const ExponentialKernelSpec& s) {
    EssFactor f = factor_system(embed_stable_exponential(s));
    f.ldlt = build_kernel_ldlt(s);
    return f;
}

EssFactor factorize_naive_unsafe(const ExponentialKernelSpec& s) {
    return factor_system(embed_rankp(kernel_to_generators(s)));
}

std::vector<double> solve(const EssFactor& f, std::span<const double> b) {
    if (b.size() != static_cast<size_t>(f.n()))
        throw std::invalid_argument("solve: b must have n entries");
    if (f.ldlt.valid) return ldlt_solve(f.ldlt, b);
    const std::vector<double> be = embed_rhs(f.sys, b);
    const std::vector<double> xe = lu_solve(f.fac, be);
    return extract_solution(f.sys, xe);
}

LogDet logdet(const EssFactor& f) {
    LogDet r = log_abs_det(f.fac);
    // det(A_ext) = (-1)^(p*(n-1)) * det(A); undo that factor so the sign
    // refers to the original matrix.
    const long long flips =
        static_cast<long long>(f.p()) * static_cast<long long>(f.n() - 1);
    if (flips % 2 != 0) r.sign = -r.sign;
    return r;
}

namespace {

template <typename Spec>
double residual_impl(const Spec& s, std::span<const double> x, std::span<const double> b) {
    if (x.size() != static_cast<size_t>(s.n) || b.size() != static_cast<size_t>(s.n))
        throw std::invalid_argument("residual_inf: x and b must have n entries");
    const std::vector<double> ax = matvec(s, x);
    double worst = 0.0;
    for (size_t i = 0; i < ax.size(); ++i) {
        const double r = std::abs(ax[i] - b[i]);
        if (std::isnan(r)) return r; // don't let max() swallow a NaN residual
        if (r > worst) worst = r;
    }
    return worst;
}

} // namespace

double residual_inf(const SemiSeparableSpec& s, std::span<const double> x,
                    std::span<const double> b) {
    return residual_impl(s, x, b);
}

double residual_inf(const ExponentialKernelSpec& s, std::span<const double> x,
                    std::span<const double> b) {
    return residual_impl(s, x, b);
}

} // namespace semisep

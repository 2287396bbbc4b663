#include "semisep/embedding.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace semisep {

namespace {

// Dimensions, positions and array shapes shared by every embedding variant.
ExtendedSystem make_skeleton(int n, int p, EmbeddingKind kind) {
    ExtendedSystem e;
    e.n = n;
    e.p = p;
    e.m = (2 * p + 1) * n - 2 * p;
    // p = 0 carries no auxiliary variables; the system is exactly diagonal.
    e.kl = p == 0 ? 0 : std::min(p + 1, e.m - 1);
    e.ku = e.kl;
    e.kind = kind;
    e.x_positions.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        e.x_positions[static_cast<size_t>(i)] = static_cast<std::int32_t>((2 * p + 1) * i);
    e.diag.resize(static_cast<size_t>(n));
    const size_t gaps = n > 1 ? static_cast<size_t>(n - 1) * p : 0;
    e.a_up.assign(gaps, 0.0);
    e.a_lo.assign(gaps, 0.0);
    e.c_l.assign(gaps, 0.0);
    e.c_r.assign(gaps, 0.0);
    return e;
}

} // namespace

BandedMatrix ExtendedSystem::assemble_band() const {
    BandedMatrix b(m, kl, ku);
    const int stride = 2 * p + 1;
    for (int i = 0; i < n; ++i) {
        const int xi = stride * i;
        b.set(xi, xi, diag[static_cast<size_t>(i)]);
    }
    for (int s = 0; s + 1 < n; ++s) {
        const int xs = stride * s;      // column of x_s
        const int xn = stride * (s + 1); // column of x_{s+1}
        for (int l = 0; l < p; ++l) {
            const size_t sl = static_cast<size_t>(s) * p + l;
            const int rcol = xs + 1 + l;     // r_{s+1}^(l)
            const int lcol = xs + 1 + p + l; // l-block_s, component l

            // x_s's equation picks up the backward sums of gap s.
            b.set(xs, rcol, a_up[sl]);
            // x_{s+1}'s equation picks up the forward sums of gap s.
            b.set(xn, lcol, a_lo[sl]);

            // Definition rows are crossed on purpose: the forward-sum
            // definition sits in the r-slot's row and vice versa. Pairing
            // each definition with the slot it references (rather than the
            // slot it defines) is what caps every offset at p+1.
            b.set(rcol, xs, a_up[sl]);
            b.set(rcol, lcol, -1.0);
            if (s > 0) b.set(rcol, lcol - stride, c_l[sl]);

            b.set(lcol, rcol, -1.0);
            b.set(lcol, xn, a_lo[sl]);
            if (s + 2 < n) b.set(lcol, rcol + stride, c_r[sl]);
        }
    }
    return b;
}

ExtendedSystem embed_rank1(const SemiSeparableSpec& s) {
    if (s.p != 1)
        throw std::invalid_argument("embed_rank1: spec has rank p != 1; use embed_rankp");
    return embed_rankp(s);
}

ExtendedSystem embed_rankp(const SemiSeparableSpec& s) {
    ExtendedSystem e = make_skeleton(s.n, s.p, EmbeddingKind::Naive);
    const int n = s.n, p = s.p;
    for (int i = 0; i < n; ++i) e.diag[static_cast<size_t>(i)] = s.diag[static_cast<size_t>(i)];
    for (int gap = 0; gap + 1 < n; ++gap) {
        for (int l = 0; l < p; ++l) {
            const size_t sl = static_cast<size_t>(gap) * p + l;
            e.a_up[sl] = s.ug(gap, l);
            e.a_lo[sl] = s.vg(gap + 1, l);
            if (gap > 0) e.c_l[sl] = 1.0;
            if (gap + 2 < n) e.c_r[sl] = 1.0;
        }
    }
    return e;
}

ExtendedSystem embed_stable_exponential(const ExponentialKernelSpec& s) {
    ExtendedSystem e = make_skeleton(s.n, s.p, EmbeddingKind::Stable);
    const int n = s.n, p = s.p;
    for (int i = 0; i < n; ++i) e.diag[static_cast<size_t>(i)] = s.d;
    // gamma[gap*p + l] = exp(-beta_l * (t_{gap+1} - t_gap)), in (0, 1] since
    // t is nondecreasing; positive exponents never occur.
    for (int gap = 0; gap + 1 < n; ++gap) {
        const double dt = s.t[static_cast<size_t>(gap) + 1] - s.t[static_cast<size_t>(gap)];
        for (int l = 0; l < p; ++l) {
            const size_t sl = static_cast<size_t>(gap) * p + l;
            e.a_up[sl] = std::exp(-s.beta[static_cast<size_t>(l)] * dt);
            e.a_lo[sl] = s.alpha[static_cast<size_t>(l)];
        }
    }
    for (int gap = 0; gap + 1 < n; ++gap) {
        for (int l = 0; l < p; ++l) {
            const size_t sl = static_cast<size_t>(gap) * p + l;
            if (gap > 0) e.c_l[sl] = e.a_up[sl]; // same decay as the gap itself
            if (gap + 2 < n)
                e.c_r[sl] = e.a_up[sl + static_cast<size_t>(p)]; // decay of gap s+1
        }
    }
    return e;
}

std::vector<double> embed_rhs(const ExtendedSystem& e, std::span<const double> b) {
    if (b.size() != static_cast<size_t>(e.n))
        throw std::invalid_argument("embed_rhs: b must have n entries");
    std::vector<double> be(static_cast<size_t>(e.m), 0.0);
    for (int i = 0; i < e.n; ++i)
        be[static_cast<size_t>(e.x_positions[static_cast<size_t>(i)])] = b[static_cast<size_t>(i)];
    return be;
}

std::vector<double> extract_solution(const ExtendedSystem& e, std::span<const double> x_ext) {
    if (x_ext.size() != static_cast<size_t>(e.m))
        throw std::invalid_argument("extract_solution: x_ext must have m entries");
    std::vector<double> x(static_cast<size_t>(e.n));
    for (int i = 0; i < e.n; ++i)
        x[static_cast<size_t>(i)] = x_ext[static_cast<size_t>(e.x_positions[static_cast<size_t>(i)])];
    return x;
}

} // namespace semisep

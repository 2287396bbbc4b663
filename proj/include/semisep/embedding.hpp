#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semisep/banded.hpp"
#include "semisep/semiseparable.hpp"

namespace semisep {

enum class EmbeddingKind {
    Naive, // generator-form coefficients (u/v products), exact but overflow-prone
    Stable // decay-factor coefficients, every stored value bounded
};

// Sparse banded embedding of a rank-p semi-separable system A x = b.
//
// The n unknowns are augmented with 2p auxiliaries per gap between
// consecutive points: p backward running sums r and p forward running sums l,
// giving m = (2p+1)n - 2p unknowns ordered
//
//   [ x_0, r-block_0, l-block_0, x_1, r-block_1, l-block_1, ..., x_{n-1} ]
//
// so x_i sits at column (2p+1)*i. Each running sum couples only to its
// neighbor gap's sums, its own x, and the adjacent x, which confines every
// equation to a band of half-bandwidth p+1 around the diagonal (the classical
// bound is 2p+1; this ordering does better by interleaving the two sum
// families). The extended matrix is unsymmetric but keeps |det| up to sign,
// and Gaussian elimination on it costs O(p^2 n) instead of dense O(n^3).
//
// The struct stores the O(p*n) coefficient arrays of the extended matrix;
// assemble_band() materializes the banded form on demand (column-streamed,
// no intermediate representation). Instances are immutable once built.
struct ExtendedSystem {
    int n = 0;  // original dimension
    int p = 0;  // rank / number of exponentials
    int m = 0;  // extended dimension, (2p+1)n - 2p
    int kl = 0; // half-bandwidth below the diagonal (p+1, clamped to m-1)
    int ku = 0; // half-bandwidth above the diagonal (same)
    EmbeddingKind kind = EmbeddingKind::Naive;

    // x_positions[i] = column/row of x_i in the extended system = (2p+1)*i.
    std::vector<std::int32_t> x_positions;

    // Per-point diagonal of the x-equations (n entries).
    std::vector<double> diag;

    // Per-gap coefficient blocks, (n-1) x p row-major, gap s between points
    // s and s+1:
    //   a_up[s*p+l]  coefficient tying x_s's equation to r_{s+1}^(l), and
    //                r/l definitions to x_s
    //   a_lo[s*p+l]  coefficient tying x_{s+1}'s equation to l-block_s, and
    //                r definitions to x_{s+1}
    //   c_l[s*p+l]   carry of l-block_{s-1} into l-block_s (zero at s = 0)
    //   c_r[s*p+l]   carry of r-block_{s+1} into r-block_s (zero at s = n-2)
    std::vector<double> a_up, a_lo, c_l, c_r;

    int x_position(int i) const { return (2 * p + 1) * i; }

    // Materializes the banded matrix. Every structural entry is written
    // through the band bounds check, so out-of-band placement throws.
    BandedMatrix assemble_band() const;
};

// Rank-1 embedding. Rejects p != 1 and points the caller at embed_rankp.
ExtendedSystem embed_rank1(const SemiSeparableSpec& s);

// General rank-p embedding of generator form. p == 0 degenerates to the
// trivial diagonal system (m == n), which is not an error.
ExtendedSystem embed_rankp(const SemiSeparableSpec& s);

// Embedding of an exponential-sum kernel using only the gap decay factors
// gamma_s^(l) = exp(-beta_l * (t_{s+1} - t_s)) in (0, 1]. Every stored
// coefficient is bounded by max(1, |d|, max_l |alpha_l|) regardless of the
// span of t; the pattern is identical to the naive embedding of the same
// kernel.
ExtendedSystem embed_stable_exponential(const ExponentialKernelSpec& s);

// Scatter b into the extended right-hand side: b[i] lands at x_positions[i],
// auxiliary equations get zero.
std::vector<double> embed_rhs(const ExtendedSystem& e, std::span<const double> b);

// Gather the x components back out of an extended solution vector.
std::vector<double> extract_solution(const ExtendedSystem& e, std::span<const double> x_ext);

} // namespace semisep

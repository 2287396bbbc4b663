#pragma once

#include <span>
#include <vector>

#include "semisep/banded.hpp"
#include "semisep/embedding.hpp"
#include "semisep/semiseparable.hpp"

namespace semisep {

// Symmetric triangular factorization A = L*D*L^T of the original kernel
// matrix, stored in the same decay parameterization the embedding uses:
// L is unit lower triangular with L(i,j) = sum_l alpha[l] * G_l(j,i) * w[j,l]
// for i > j, where G_l(j,i) = prod_{k=j..i-1} gamma[k,l] and
// gamma[k,l] = exp(-beta[l] * (t[k+1] - t[k])). A solve streams gamma and w
// once forward and once backward: O(p*n) per right-hand side and O(p*n)
// storage. Built without pivoting, so it is kept only when every pivot d[k]
// comes out positive and finite -- which certifies the kernel matrix
// positive definite and the recursion backward stable. valid == false means
// the caller must use the banded factors instead.
struct KernelLdlt {
    bool valid = false;
    int n = 0;
    int p = 0;
    std::vector<double> alpha; // p entries (constant row generator)
    std::vector<double> gamma; // (n-1)*p decay factors, row-major
    std::vector<double> w;     // n*p rows of the L generator
    std::vector<double> d;     // n pivots of D
};

// Factored form of a semi-separable (or exponential-kernel) matrix: the
// extended banded embedding plus its LU factorization, and -- for kernel
// input that certifies positive definite -- the O(p*n) symmetric form above.
// Build once with factorize(), then solve any number of right-hand sides
// (O(p*n) each on the fast path, O(p^2*n) through the band otherwise) and
// read off log|det| in O(n). Immutable after construction; concurrent
// solves on one factor are safe (each solve works on its own copy of the
// right-hand side).
struct EssFactor {
    ExtendedSystem sys;
    BandedFactorization fac;
    KernelLdlt ldlt;

    int n() const { return sys.n; }
    int p() const { return sys.p; }
};

// Generator-form path. Overflow behavior follows the generators it is given.
EssFactor factorize(const SemiSeparableSpec& s);

// Kernel path via the decay-factor embedding; safe for arbitrarily wide t.
EssFactor factorize(const ExponentialKernelSpec& s);

// Demonstration-only kernel path through kernel_to_generators(): factors the
// naive exp(+beta*t)/exp(-beta*t) generator embedding. Overflows to inf/nan
// once beta*(t_max - t_min) exceeds the double exponent range (~700). Exists
// to make the failure mode observable next to the stable path; never use it
// for real work.
EssFactor factorize_naive_unsafe(const ExponentialKernelSpec& s);

// Solve A x = b. Uses the symmetric fast path when the factorization
// carries one (O(p*n) per call), else routes b through the extended system
// and the banded factors (O(p^2*n) worst case; exact for any input the
// factorization accepted).
std::vector<double> solve(const EssFactor& f, std::span<const double> b);

// log|det A| and sign(det A), always read from the banded pivots. The
// extended system's determinant equals det(A) up to the fixed sign
// (-1)^(p*(n-1)) (eliminating each crossed auxiliary pair flips the sign
// once), which this corrects for.
LogDet logdet(const EssFactor& f);

// max_i |A x - b|_i via the O(p*n) matvec; no dense matrix is formed.
double residual_inf(const SemiSeparableSpec& s, std::span<const double> x,
                    std::span<const double> b);
double residual_inf(const ExponentialKernelSpec& s, std::span<const double> x,
                    std::span<const double> b);

} // namespace semisep

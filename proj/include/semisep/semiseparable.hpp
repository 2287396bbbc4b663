#pragma once

#include <span>
#include <vector>

namespace semisep {

// Rank-p semi-separable matrix in generator form:
//
//   A(i,j) = diag[i]                          if i == j
//          = sum_l u(min(i,j),l) * v(max(i,j),l)   otherwise
//
// i.e. the upper triangle is U*V^T restricted to i < j and the matrix is
// symmetric in its off-diagonal part. Indices are 0-based everywhere.
struct SemiSeparableSpec {
    int n = 0; // matrix dimension, >= 1
    int p = 0; // generator rank, >= 0 (p == 0 is a plain diagonal matrix)
    std::vector<double> diag; // n entries
    std::vector<double> u;    // n*p, row-major: u[i*p + l]
    std::vector<double> v;    // n*p, row-major: v[i*p + l]

    SemiSeparableSpec(int n_, int p_, std::vector<double> diag_,
                      std::vector<double> u_, std::vector<double> v_);

    double ug(int i, int l) const { return u[static_cast<size_t>(i) * p + l]; }
    double vg(int i, int l) const { return v[static_cast<size_t>(i) * p + l]; }
};

// Covariance-style kernel on sorted nodes t[0] <= ... <= t[n-1]:
//
//   A(i,j) = d                                        if i == j
//          = sum_l alpha[l] * exp(-beta[l] * |t_i - t_j|)  otherwise
//
// alpha[l] may be any real, beta[l] >= 0. The nodes must be nondecreasing;
// the factorization path never forms exp(+beta*t), only decay factors
// exp(-beta * gap), so wide t ranges are safe.
struct ExponentialKernelSpec {
    int n = 0; // dimension, >= 1
    int p = 0; // number of exponentials, >= 1
    double d = 0.0;            // diagonal value
    std::vector<double> alpha; // p entries
    std::vector<double> beta;  // p entries, each >= 0
    std::vector<double> t;     // n entries, nondecreasing

    ExponentialKernelSpec(int n_, int p_, double d_, std::vector<double> alpha_,
                          std::vector<double> beta_, std::vector<double> t_);
};

// Single matrix entry. O(p).
double entry(const SemiSeparableSpec& s, int i, int j);
double kernel_entry(const ExponentialKernelSpec& s, int i, int j);

// Direct generator form of a kernel spec: u[i] = alpha_l * exp(+beta_l t_i),
// v[i] = exp(-beta_l t_i). Entry-for-entry equal to kernel_entry in exact
// arithmetic, but overflows/underflows once beta*t leaves the exponent range
// (roughly beta * (t_max - t_min) > 700). Demonstration and small-range use
// only; the solver's kernel path does not go through this.
SemiSeparableSpec kernel_to_generators(const ExponentialKernelSpec& s);

// y = A*x in O(p*n) time and O(p) extra space, via forward/backward sweeps
// of the running generator sums (no dense matrix is formed).
std::vector<double> matvec(const SemiSeparableSpec& s, std::span<const double> x);

// Same, using only decay factors exp(-beta * gap); stable for any t range.
std::vector<double> matvec(const ExponentialKernelSpec& s, std::span<const double> x);

} // namespace semisep

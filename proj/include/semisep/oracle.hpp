#pragma once

#include <span>
#include <vector>

#include "semisep/semiseparable.hpp"

namespace semisep {

struct LogDet {
    double value = 0.0; // log |det|; -inf when det == 0
    int sign = 0;       // +1, -1, or 0 when det == 0
};

// Plain dense matrix, row-major. Reference implementation only: everything
// here is O(n^2) memory and O(n^3) solve time, used to cross-check the fast
// path on small problems.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a; // n*n, row-major

    explicit DenseMatrix(int n_);

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Entry-for-entry densification of a spec. Guarded by `cap` so an oversized
// problem fails fast instead of allocating n^2 doubles; raise the cap
// explicitly where a bigger dense matrix is really wanted.
inline constexpr int kDenseCapDefault = 5000;

DenseMatrix assemble_dense(const SemiSeparableSpec& s, int cap = kDenseCapDefault);
DenseMatrix assemble_dense(const ExponentialKernelSpec& s, int cap = kDenseCapDefault);

// Textbook dense LU with partial pivoting, factored in place.
struct DenseLU {
    int n = 0;
    std::vector<double> lu;  // packed L (unit diag, below) and U (on/above)
    std::vector<int> piv;    // piv[k] = row swapped into position k at step k
    int parity = 1;          // +1 / -1, sign of the permutation

    static DenseLU factor(DenseMatrix m); // throws SingularMatrixError
    std::vector<double> solve(std::span<const double> b) const;
    LogDet logdet() const;
};

// One-call conveniences over DenseLU.
std::vector<double> dense_solve(DenseMatrix m, std::span<const double> b);
LogDet dense_logdet(DenseMatrix m);

// max_i |A x - b|_i without forming A (A given by a spec, densified row by
// row on the fly; O(n^2) time, O(1) extra memory, independent of matvec()).
double dense_residual_inf(const SemiSeparableSpec& s, std::span<const double> x,
                          std::span<const double> b);
double dense_residual_inf(const ExponentialKernelSpec& s, std::span<const double> x,
                          std::span<const double> b);

} // namespace semisep

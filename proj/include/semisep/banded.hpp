#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semisep/oracle.hpp" // LogDet

namespace semisep {

class BandedFactorization;

// Unsymmetric banded matrix in LAPACK-style band storage.
//
// A matrix of dimension m with kl sub- and ku super-diagonals is stored
// column-major in an array of leading dimension ldab = 2*kl + ku + 1:
//
//   entry (i, j)  ->  ab[j*ldab + (kl + ku + i - j)]
//
// The top kl storage rows of each column are kept zero until factorization;
// they receive the extra superdiagonals created by row interchanges (fill can
// push a row's rightmost entry from j = i + ku out to j = i + ku + kl). Having
// the fill region reserved up front makes the factorization allocation-free.
class BandedMatrix {
public:
    // kl/ku are clamped to dim-1 (a 1x1 matrix has no off-diagonals no matter
    // what the caller asks for).
    BandedMatrix(int dim, int kl, int ku);

    int dim() const { return dim_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }
    int ldab() const { return ldab_; }

    // Zero for any (i, j) outside the declared band; throws std::out_of_range
    // for indices outside the matrix.
    double get(int i, int j) const;

    // Throws std::out_of_range when (i, j) lies outside the declared band;
    // the reserved fill region is not writable through here.
    void set(int i, int j, double v);

    // Dense copy (reference/debug use).
    std::vector<std::vector<double>> densify() const;

    // Raw storage access for the factorization and the column-streaming
    // assembler. data()[j*ldab() + kl()+ku() + i - j] is entry (i, j).
    double* data() { return ab_.data(); }
    const double* data() const { return ab_.data(); }

    friend BandedFactorization lu_factor(BandedMatrix m);

private:
    int dim_, kl_, ku_, ldab_;
    std::vector<double> ab_;
};

// Absolute pivot threshold: a pivot column whose candidates are all below
// this is treated as singular.
inline constexpr double kPivotTol = 1e-300;

// P*A = L*U of a banded matrix, computed by Gaussian elimination with partial
// pivoting restricted to the band. The factored band holds U on and above the
// diagonal (up to kl+ku superdiagonals) and the multipliers of unit-lower L
// below it. Row interchanges are recorded per elimination step.
//
// Alongside the band, the factorization records the nonzero structure of L
// (by column) and U (by row). Solves stream these compact lists, so a solve
// costs O(nnz(L) + nnz(U) + m), which for the extended semi-separable systems
// is O(p*N) rather than the O(p^2*N) a blind sweep over the band would cost.
class BandedFactorization {
public:
    int dim() const { return m_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    // piv[k] = matrix row swapped into position k at elimination step k
    // (k <= piv[k] <= k + kl).
    const std::vector<std::int32_t>& pivots() const { return piv_; }
    int parity() const { return parity_; } // sign of the row permutation

    const std::vector<double>& u_diag() const { return udiag_; }

    // L structure, CSC without the unit diagonal: column k holds rows
    // l_rows[l_ptr[k] .. l_ptr[k+1]) with multipliers l_vals[...].
    const std::vector<std::int32_t>& l_ptr() const { return lptr_; }
    const std::vector<std::int32_t>& l_rows() const { return lrow_; }
    const std::vector<double>& l_vals() const { return lval_; }

    // U structure, CSR without the diagonal: row k holds columns
    // u_cols[u_ptr[k] .. u_ptr[k+1]) with values u_vals[...].
    const std::vector<std::int32_t>& u_ptr() const { return uptr_; }
    const std::vector<std::int32_t>& u_cols() const { return ucol_; }
    const std::vector<double>& u_vals() const { return uval_; }

    friend BandedFactorization lu_factor(BandedMatrix m);

private:
    int m_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<double> ab_; // factored band (L multipliers + U), in place
    std::vector<std::int32_t> piv_;
    int parity_ = 1;
    std::vector<double> udiag_;
    std::vector<std::int32_t> lptr_, lrow_;
    std::vector<double> lval_;
    std::vector<std::int32_t> uptr_, ucol_;
    std::vector<double> uval_;
};

// Factors in place in the matrix's own storage (pass by value: move in to
// avoid the copy). Throws SingularMatrixError naming the first column whose
// pivot candidates are all below kPivotTol.
BandedFactorization lu_factor(BandedMatrix m);

// Solves A x = b for one right-hand side.
std::vector<double> lu_solve(const BandedFactorization& f, std::span<const double> b);

// log|det A| and sign(det A) from the factorization: sum of log|U_kk| and the
// product of their signs times the interchange parity. {-inf, 0} if some
// U_kk is exactly zero (cannot happen for a factorization that passed the
// pivot threshold; kept for completeness of the contract).
LogDet log_abs_det(const BandedFactorization& f);

} // namespace semisep

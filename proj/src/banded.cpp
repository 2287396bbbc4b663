#include "semisep/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "semisep/errors.hpp"

namespace semisep {

namespace {

void check_index(int dim, int i, int j) {
    if (i < 0 || i >= dim || j < 0 || j >= dim)
        throw std::out_of_range("banded: index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside matrix of dim " + std::to_string(dim));
}

} // namespace

BandedMatrix::BandedMatrix(int dim, int kl, int ku) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("BandedMatrix: dim must be >= 1");
    if (kl < 0 || ku < 0) throw std::invalid_argument("BandedMatrix: kl and ku must be >= 0");
    kl_ = std::min(kl, dim - 1);
    ku_ = std::min(ku, dim - 1);
    ldab_ = 2 * kl_ + ku_ + 1;
    ab_.assign(static_cast<size_t>(ldab_) * dim_, 0.0);
}

double BandedMatrix::get(int i, int j) const {
    check_index(dim_, i, j);
    if (j - i > ku_ || i - j > kl_) return 0.0;
    return ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::set(int i, int j, double v) {
    check_index(dim_, i, j);
    if (j - i > ku_ || i - j > kl_)
        throw std::out_of_range("banded: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside band kl=" + std::to_string(kl_) +
                                " ku=" + std::to_string(ku_));
    ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] = v;
}

std::vector<std::vector<double>> BandedMatrix::densify() const {
    std::vector<std::vector<double>> d(static_cast<size_t>(dim_),
                                       std::vector<double>(static_cast<size_t>(dim_), 0.0));
    for (int j = 0; j < dim_; ++j) {
        const int ilo = std::max(0, j - ku_);
        const int ihi = std::min(dim_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i)
            d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
    }
    return d;
}

BandedFactorization lu_factor(BandedMatrix m) {
    const int dim = m.dim();
    const int kl = m.kl();
    const int ku = m.ku();
    const int ldab = m.ldab();
    const int d0 = kl + ku; // storage row of the diagonal within a column

    BandedFactorization f;
    f.m_ = dim;
    f.kl_ = kl;
    f.ku_ = ku;
    f.ldab_ = ldab;
    f.ab_ = std::move(m.ab_); // factor in place in the moved-in storage
    double* ab = f.ab_.data();

    f.piv_.assign(static_cast<size_t>(dim), 0);
    f.udiag_.assign(static_cast<size_t>(dim), 0.0);
    f.lptr_.assign(static_cast<size_t>(dim) + 1, 0);
    f.uptr_.assign(static_cast<size_t>(dim) + 1, 0);
    // Structural upper bounds: a column of L holds at most kl multipliers
    // and a row of U at most kl+ku off-diagonal entries. Reserving the bound
    // keeps the push_back loops reallocation-free; the untouched tail costs
    // virtual address space only.
    f.lrow_.reserve(static_cast<size_t>(dim) * static_cast<size_t>(kl));
    f.lval_.reserve(static_cast<size_t>(dim) * static_cast<size_t>(kl));
    f.ucol_.reserve(static_cast<size_t>(dim) * static_cast<size_t>(kl + ku));
    f.uval_.reserve(static_cast<size_t>(dim) * static_cast<size_t>(kl + ku));

    // Scratch list of this column's nonzero multipliers (offsets below the
    // diagonal); bounded by kl.
    std::vector<int> live(static_cast<size_t>(std::max(kl, 1)));

    int ju = 0; // rightmost column (inclusive) that any active row reaches
    for (int k = 0; k < dim; ++k) {
        double* colk = ab + static_cast<size_t>(k) * ldab;
        const int km = std::min(kl, dim - 1 - k); // candidates below the diagonal

        // Partial pivoting over rows k .. k+km of column k.
        int mp = 0;
        double best = std::abs(colk[d0]);
        for (int idx = 1; idx <= km; ++idx) {
            const double c = std::abs(colk[d0 + idx]);
            if (c > best) { best = c; mp = idx; }
        }
        if (best < kPivotTol)
            throw SingularMatrixError(
                k, "banded LU: no pivot above threshold in column " + std::to_string(k));

        f.piv_[k] = static_cast<std::int32_t>(k + mp);
        ju = std::min(std::max(ju, k + mp + ku), dim - 1);
        if (mp != 0) {
            f.parity_ = -f.parity_;
            // Swap matrix rows k and k+mp across columns k..ju. In band
            // storage row k of column j sits at offset d0 + k - j.
            for (int j = k; j <= ju; ++j) {
                double* cj = ab + static_cast<size_t>(j) * ldab + (d0 + k - j);
                std::swap(cj[0], cj[mp]);
            }
        }

        const double pivot = colk[d0];
        f.udiag_[k] = pivot;

        // Scale the subdiagonal of column k into multipliers; remember which
        // ones are nonzero (structural zeros are common here and skipping
        // them is what keeps the elimination cost proportional to the actual
        // fill, not the band area).
        const double inv = 1.0 / pivot;
        int nlive = 0;
        for (int idx = 1; idx <= km; ++idx) {
            const double mult = colk[d0 + idx] * inv;
            if (mult != 0.0) {
                colk[d0 + idx] = mult;
                live[nlive++] = idx;
                f.lrow_.push_back(static_cast<std::int32_t>(k + idx));
                f.lval_.push_back(mult);
            }
        }
        f.lptr_[static_cast<size_t>(k) + 1] =
            static_cast<std::int32_t>(f.lrow_.size());

        // Rank-1 update of the trailing block, column by column, skipping
        // columns whose pivot-row entry is zero.
        if (nlive > 0) {
            for (int j = k + 1; j <= ju; ++j) {
                double* cj = ab + static_cast<size_t>(j) * ldab + (d0 + k - j);
                const double t = cj[0];
                if (t != 0.0)
                    for (int q = 0; q < nlive; ++q) cj[live[q]] -= colk[d0 + live[q]] * t;
            }
        }

        // Row k is final now; collect its off-diagonal U entries. The row
        // cannot reach past ju (fill included).
        for (int j = k + 1; j <= ju; ++j) {
            const double val = ab[static_cast<size_t>(j) * ldab + (d0 + k - j)];
            if (val != 0.0) {
                f.ucol_.push_back(static_cast<std::int32_t>(j));
                f.uval_.push_back(val);
            }
        }
        f.uptr_[static_cast<size_t>(k) + 1] =
            static_cast<std::int32_t>(f.ucol_.size());
    }
    return f;
}

std::vector<double> lu_solve(const BandedFactorization& f, std::span<const double> b) {
    const int dim = f.dim();
    if (b.size() != static_cast<size_t>(dim))
        throw std::invalid_argument("lu_solve: b must have dim entries");
    std::vector<double> x(b.begin(), b.end());

    // Forward: apply the interchanges and L in elimination order.
    const auto& lptr = f.l_ptr();
    const auto& lrow = f.l_rows();
    const auto& lval = f.l_vals();
    for (int k = 0; k < dim; ++k) {
        const int pr = f.pivots()[static_cast<size_t>(k)];
        if (pr != k) std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(pr)]);
        const double xk = x[static_cast<size_t>(k)];
        if (xk != 0.0) {
            const int e = lptr[static_cast<size_t>(k) + 1];
            for (int q = lptr[static_cast<size_t>(k)]; q < e; ++q)
                x[static_cast<size_t>(lrow[static_cast<size_t>(q)])] -=
                    lval[static_cast<size_t>(q)] * xk;
        }
    }

    // Backward: U x = y over the recorded row structure.
    const auto& uptr = f.u_ptr();
    const auto& ucol = f.u_cols();
    const auto& uval = f.u_vals();
    for (int k = dim - 1; k >= 0; --k) {
        double acc = x[static_cast<size_t>(k)];
        const int e = uptr[static_cast<size_t>(k) + 1];
        for (int q = uptr[static_cast<size_t>(k)]; q < e; ++q)
            acc -= uval[static_cast<size_t>(q)] * x[static_cast<size_t>(ucol[static_cast<size_t>(q)])];
        x[static_cast<size_t>(k)] = acc / f.u_diag()[static_cast<size_t>(k)];
    }
    return x;
}

LogDet log_abs_det(const BandedFactorization& f) {
    LogDet r;
    r.value = 0.0;
    r.sign = f.parity();
    for (double d : f.u_diag()) {
        if (d == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        r.value += std::log(std::abs(d));
        if (d < 0.0) r.sign = -r.sign;
    }
    return r;
}

} // namespace semisep

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "semisep/semiseparable.hpp"

namespace semisep {

// Deterministic uniform doubles. mt19937_64's algorithm is pinned by the
// standard, and the explicit 53-bit mapping below sidesteps
// uniform_real_distribution, whose output is implementation-defined. Same
// seed => same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 eng_;
};

struct Problem {
    ExponentialKernelSpec spec;
    std::vector<double> rhs;
};

// Random kernel instance. Draw order is frozen (changing it silently changes
// every seeded artifact): alpha[0..p) ~ U[0,2), beta[0..p) ~ U[0,2),
// t[0..n) ~ U[0,20) then sorted ascending; d = 1 + sum(alpha), which makes
// the matrix equal to (PSD kernel) + identity, hence SPD with every
// eigenvalue >= 1.
ExponentialKernelSpec random_kernel(int n, int p, std::uint64_t seed);

// random_kernel plus a right-hand side with entries ~ U[-1,1), drawn from
// the same stream immediately after the spec.
Problem random_problem(int n, int p, std::uint64_t seed);

// n entries ~ U[-1,1) from a fresh stream.
std::vector<double> random_rhs(int n, std::uint64_t seed);

// Random generator-form instance: u, v entries ~ U[-1,1), diagonal
// ~ diag_shift + U[-1,1). diag_shift = 0 gives (possibly) indefinite
// matrices, useful for exercising determinant signs.
SemiSeparableSpec random_semiseparable(int n, int p, std::uint64_t seed,
                                       double diag_shift = 0.0);

} // namespace semisep

#include "semisep/generator.hpp"

#include <algorithm>
#include <numeric>

namespace semisep {

namespace {

ExponentialKernelSpec draw_kernel(int n, int p, Rng& rng) {
    std::vector<double> alpha(static_cast<size_t>(p));
    std::vector<double> beta(static_cast<size_t>(p));
    std::vector<double> t(static_cast<size_t>(n));
    for (double& a : alpha) a = rng.uniform(0.0, 2.0);
    for (double& b : beta) b = rng.uniform(0.0, 2.0);
    for (double& x : t) x = rng.uniform(0.0, 20.0);
    std::sort(t.begin(), t.end());
    const double d = 1.0 + std::accumulate(alpha.begin(), alpha.end(), 0.0);
    return ExponentialKernelSpec(n, p, d, std::move(alpha), std::move(beta), std::move(t));
}

} // namespace

ExponentialKernelSpec random_kernel(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    return draw_kernel(n, p, rng);
}

Problem random_problem(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    ExponentialKernelSpec spec = draw_kernel(n, p, rng);
    std::vector<double> rhs(static_cast<size_t>(n));
    for (double& x : rhs) x = rng.uniform(-1.0, 1.0);
    return Problem{std::move(spec), std::move(rhs)};
}

std::vector<double> random_rhs(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> rhs(static_cast<size_t>(n));
    for (double& x : rhs) x = rng.uniform(-1.0, 1.0);
    return rhs;
}

SemiSeparableSpec random_semiseparable(int n, int p, std::uint64_t seed, double diag_shift) {
    Rng rng(seed);
    std::vector<double> diag(static_cast<size_t>(n));
    std::vector<double> u(static_cast<size_t>(n) * static_cast<size_t>(p));
    std::vector<double> v(static_cast<size_t>(n) * static_cast<size_t>(p));
    for (double& x : diag) x = diag_shift + rng.uniform(-1.0, 1.0);
    for (double& x : u) x = rng.uniform(-1.0, 1.0);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return SemiSeparableSpec(n, p, std::move(diag), std::move(u), std::move(v));
}

} // namespace semisep

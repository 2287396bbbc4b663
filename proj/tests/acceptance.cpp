// Acceptance suite: ten go/no-go checks covering accuracy against the dense
// oracle, determinant identities, structural guarantees of the embedding,
// numerical stability on wide time spans, and wall-clock scaling in both N
// and p. Prints one line per criterion and exits with the number of
// failures. Every tolerance is pinned here, in code.
//
// Timing-based criteria (5 and 6) use medians over repeated runs and broad
// bounds so they hold on shared, noisy machines; they still fail loudly if
// the implementation loses its linear-in-N or polynomial-in-p behavior.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semisep/banded.hpp"
#include "semisep/embedding.hpp"
#include "semisep/generator.hpp"
#include "semisep/oracle.hpp"
#include "semisep/solver.hpp"

using namespace semisep;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double inf_norm(const std::vector<double>& v) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

// --- criterion 1: residual reproduction -----------------------------------

void criterion1() {
    const double tol = 1e-12;
    double worst = 0.0;
    for (const int n : {500, 10000, 100000}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Problem prob = random_problem(n, 5, seed);
            const EssFactor f = factorize(prob.spec);
            const auto x = solve(f, prob.rhs);
            worst = std::max(worst, residual_inf(prob.spec, x, prob.rhs));
        }
    }
    report(1, "residual |Ax-b|_inf, N in {500,1e4,1e5}, p=5, 5 seeds", worst <= tol,
           "worst " + fmt(worst) + ", tol " + fmt(tol));
}

// --- criterion 2: log-determinant vs dense oracle --------------------------

void criterion2() {
    const double tol = 1e-12;
    double worst = 0.0;
    for (const int n : {500, 1000, 2000}) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto spec = random_kernel(n, 5, seed);
            const LogDet fast = logdet(factorize(spec));
            const LogDet ref = dense_logdet(assemble_dense(spec));
            worst = std::max(worst, rel_diff(fast.value, ref.value));
            if (fast.sign != ref.sign) worst = 1.0; // sign mismatch is a hard fail
        }
    }
    report(2, "logdet relative error vs dense, N in {500,1000,2000}, p=5", worst <= tol,
           "worst " + fmt(worst) + ", tol " + fmt(tol));
}

// --- criterion 3: determinant identity |det A_ext| = |det A| ---------------

void criterion3() {
    const double tol = 1e-10;
    double worst = 0.0;
    int idx = 0;
    for (const auto& [n, p] : std::vector<std::pair<int, int>>{
             {5, 1},   {12, 2},  {23, 3},  {40, 4},  {57, 1},  {74, 2},  {91, 3},
             {108, 4}, {125, 1}, {142, 2}, {159, 3}, {200, 4}}) {
        ++idx;
        const auto spec = random_kernel(n, p, static_cast<std::uint64_t>(idx));
        // raw extended-system determinant, no sign correction: the identity
        // under test is about magnitudes
        const LogDet ext = log_abs_det(factorize(spec).fac);
        const LogDet ref = dense_logdet(assemble_dense(spec));
        worst = std::max(worst, std::abs(ext.value - ref.value));
    }
    for (int k = 0; k < 8; ++k) {
        const int n = 20 + 22 * k;
        const int p = 1 + (k % 4);
        const auto s = random_semiseparable(n, p, static_cast<std::uint64_t>(900 + k), 2.0 * p + 1.5);
        const LogDet ext = log_abs_det(factorize(s).fac);
        const LogDet ref = dense_logdet(assemble_dense(s));
        worst = std::max(worst, std::abs(ext.value - ref.value));
    }
    report(3, "|log|det A_ext| - log|det A|| over 20 instances, N<=200, p<=4", worst <= tol,
           "worst " + fmt(worst) + ", tol " + fmt(tol));
}

// --- criterion 4: solve equivalence with the dense oracle ------------------

void criterion4() {
    const double tol = 1e-10;
    double worst = 0.0;
    for (const int n : {4, 16, 64, 256}) {
        for (const int p : {1, 2, 5}) {
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const Problem prob = random_problem(n, p, seed * 31 + static_cast<std::uint64_t>(n));
                const auto x = solve(factorize(prob.spec), prob.rhs);
                const auto want = dense_solve(assemble_dense(prob.spec), prob.rhs);
                worst = std::max(worst, max_abs_diff(x, want) / std::max(1e-300, inf_norm(want)));
            }
        }
    }
    report(4, "solution vs dense LU, N in {4,16,64,256}, p in {1,2,5}, 10 seeds", worst <= tol,
           "worst rel err " + fmt(worst) + ", tol " + fmt(tol));
}

// --- criteria 5 and 6: scaling ---------------------------------------------

double factor_solve_ms(int n, int p, std::uint64_t seed) {
    const Problem prob = random_problem(n, p, seed);
    double ms = 0.0;
    {
        std::optional<EssFactor> f;
        ms += time_ms([&] { f.emplace(factorize(prob.spec)); });
        std::vector<double> x;
        ms += time_ms([&] { x = solve(*f, prob.rhs); });
        volatile double sink = x[0];
        (void)sink;
    }
    return ms;
}

double median_factor_solve_ms(int n, int p, int reps) {
    std::vector<double> t;
    for (int r = 0; r < reps; ++r) t.push_back(factor_solve_ms(n, p, 1));
    return median(std::move(t));
}

void criterion5() {
    factor_solve_ms(10000, 5, 1); // warm-up

    const double t1e4 = median_factor_solve_ms(10000, 5, 3);
    const double t1e5 = median_factor_solve_ms(100000, 5, 3);
    const double t2e5 = median_factor_solve_ms(200000, 5, 3);
    const double t1e6 = median_factor_solve_ms(1000000, 5, 3);

    const double ratio = t2e5 / t1e5;
    const bool ratio_ok = ratio >= 1.4 && ratio <= 3.5;

    // least-squares slope of log t vs log N over the three decades
    const std::vector<double> lx{std::log(1e4), std::log(1e5), std::log(1e6)};
    const std::vector<double> ly{std::log(t1e4), std::log(t1e5), std::log(t1e6)};
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
    const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = num / den;
    const bool slope_ok = slope >= 0.8 && slope <= 1.3;

    report(5, "linear N-scaling of factorize+solve at p=5", ratio_ok && slope_ok,
           "2e5/1e5 ratio " + fmt(ratio) + " in [1.4,3.5]; slope " + fmt(slope) +
               " in [0.8,1.3]; times ms " + fmt(t1e4) + "/" + fmt(t1e5) + "/" + fmt(t2e5) + "/" +
               fmt(t1e6));
}

struct PhaseTimes {
    double assembly = 0.0;
    double factorize = 0.0;
    double solve = 0.0;
};

PhaseTimes phase_times(int n, int p, int reps) {
    const Problem prob = random_problem(n, p, 1);
    std::vector<double> ta, tf, ts;
    for (int r = 0; r < reps; ++r) {
        // Assembly means building the compact extended system; the factorize
        // phase is the public factorization entry point (band fill-in, LU,
        // and the symmetric fast path; its internal re-embed is <1% of it).
        std::optional<ExtendedSystem> sys;
        ta.push_back(time_ms([&] { sys.emplace(embed_stable_exponential(prob.spec)); }));
        std::optional<EssFactor> f;
        tf.push_back(time_ms([&] { f.emplace(factorize(prob.spec)); }));
        std::vector<double> x;
        ts.push_back(time_ms([&] { x = solve(*f, prob.rhs); }));
        volatile double sink = x[0] + static_cast<double>(sys->m);
        (void)sink;
    }
    return PhaseTimes{median(std::move(ta)), median(std::move(tf)), median(std::move(ts))};
}

void criterion6() {
    phase_times(10000, 8, 1); // warm-up
    const PhaseTimes p8 = phase_times(10000, 8, 5);
    const PhaseTimes p16 = phase_times(10000, 16, 5);

    const double ra = p16.assembly / p8.assembly;
    const double rf = p16.factorize / p8.factorize;
    const double rs = p16.solve / p8.solve;
    const bool ok = ra <= 3.0 && rf <= 6.0 && rs <= 3.0;
    report(6, "p-scaling at N=1e4, p=16 vs p=8", ok,
           "assembly x" + fmt(ra) + " (<=3), factorize x" + fmt(rf) + " (<=6), solve x" + fmt(rs) +
               " (<=3)");
}

// --- criterion 7: structural identities ------------------------------------

void criterion7() {
    bool ok = true;
    std::string detail = "all dims and bandwidths as required";
    for (int n = 1; n <= 50 && ok; ++n) {
        for (int p = 0; p <= 8 && ok; ++p) {
            const auto s = random_semiseparable(n, p, static_cast<std::uint64_t>(n * 100 + p), 1.0);
            const auto e = embed_rankp(s);
            if (e.m != (2 * p + 1) * n - 2 * p) {
                ok = false;
                detail = "dimension mismatch at n=" + std::to_string(n) + " p=" + std::to_string(p);
                break;
            }
            // materialize and scan: every nonzero must lie within |i-j| <= 2p+1
            // (the embedding actually achieves p+1)
            const auto band = e.assemble_band();
            if (band.kl() > 2 * p + 1 || band.ku() > 2 * p + 1) {
                ok = false;
                detail = "declared band too wide at n=" + std::to_string(n) +
                         " p=" + std::to_string(p);
                break;
            }
            if (n <= 20) {
                const auto dense = band.densify();
                for (int i = 0; i < e.m && ok; ++i)
                    for (int j = 0; j < e.m; ++j)
                        if (dense[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0.0 &&
                            std::abs(i - j) > 2 * p + 1) {
                            ok = false;
                            detail = "nonzero outside half-bandwidth at n=" + std::to_string(n) +
                                     " p=" + std::to_string(p);
                            break;
                        }
            }
        }
    }
    report(7, "extended dim (2p+1)N-2p and half-bandwidth <= 2p+1, N<=50, p<=8 exhaustive", ok,
           detail);
}

// --- criterion 8: stability demonstration ----------------------------------

void criterion8() {
    std::vector<double> t(100);
    for (int i = 0; i < 100; ++i) t[static_cast<size_t>(i)] = 2000.0 * i / 99.0;
    const ExponentialKernelSpec spec(100, 1, 2.0, {1.0}, {2.0}, t);
    const auto b = random_rhs(100, 1);

    const auto x = solve(factorize(spec), b);
    const double resid = residual_inf(spec, x, b);
    const bool stable_ok = resid < 1e-10;

    const SemiSeparableSpec gen = kernel_to_generators(spec);
    bool naive_nonfinite = false;
    for (double v : gen.u) naive_nonfinite = naive_nonfinite || !std::isfinite(v);
    for (double v : gen.v) naive_nonfinite = naive_nonfinite || !std::isfinite(v);

    report(8, "stability: t in [0,2000], beta=2, N=100", stable_ok && naive_nonfinite,
           "stable residual " + fmt(resid) + " (<1e-10); naive generators non-finite: " +
               (naive_nonfinite ? "yes" : "no"));
}

// --- criterion 9: Schur complement recovers A ------------------------------

void criterion9() {
    const double tol = 1e-12;
    double worst = 0.0;
    for (int n = 2; n <= 12; n += 2) {
        for (int p = 1; p <= 4; ++p) {
            const auto spec = random_kernel(n, p, static_cast<std::uint64_t>(n * 10 + p));
            const auto e = embed_stable_exponential(spec);
            const auto ext = e.assemble_band().densify();
            const DenseMatrix a = assemble_dense(spec);

            const int m = e.m;
            std::vector<int> tpos;
            {
                std::vector<int> is_x(static_cast<size_t>(m), 0);
                for (const auto q : e.x_positions) is_x[static_cast<size_t>(q)] = 1;
                for (int q = 0; q < m; ++q)
                    if (!is_x[static_cast<size_t>(q)]) tpos.push_back(q);
            }
            const int mt = static_cast<int>(tpos.size());
            if (mt == 0) continue;

            DenseMatrix ett(mt);
            for (int i = 0; i < mt; ++i)
                for (int j = 0; j < mt; ++j)
                    ett.at(i, j) = ext[static_cast<size_t>(tpos[static_cast<size_t>(i)])]
                                      [static_cast<size_t>(tpos[static_cast<size_t>(j)])];
            const DenseLU lu = DenseLU::factor(std::move(ett));

            for (int j = 0; j < n; ++j) {
                std::vector<double> col(static_cast<size_t>(mt));
                for (int i = 0; i < mt; ++i)
                    col[static_cast<size_t>(i)] =
                        ext[static_cast<size_t>(tpos[static_cast<size_t>(i)])]
                           [static_cast<size_t>(e.x_positions[static_cast<size_t>(j)])];
                const auto w = lu.solve(col);
                for (int i = 0; i < n; ++i) {
                    double acc = ext[static_cast<size_t>(e.x_positions[static_cast<size_t>(i)])]
                                    [static_cast<size_t>(e.x_positions[static_cast<size_t>(j)])];
                    for (int q = 0; q < mt; ++q)
                        acc -= ext[static_cast<size_t>(e.x_positions[static_cast<size_t>(i)])]
                                  [static_cast<size_t>(tpos[static_cast<size_t>(q)])] *
                               w[static_cast<size_t>(q)];
                    worst = std::max(worst, std::abs(acc - a.at(i, j)));
                }
            }
        }
    }
    report(9, "Schur complement onto x block equals A, N<=12, p<=4", worst <= tol,
           "worst entry err " + fmt(worst) + ", tol " + fmt(tol));
}

// --- criterion 10: matvec equivalence --------------------------------------

void criterion10() {
    const double tol = 1e-12;
    double worst = 0.0;
    for (const auto& [n, p] : std::vector<std::pair<int, int>>{
             {8, 1}, {32, 2}, {64, 3}, {128, 4}, {256, 6}, {512, 8}}) {
        const auto s = random_semiseparable(n, p, static_cast<std::uint64_t>(n + p), 0.5);
        const auto x = random_rhs(n, static_cast<std::uint64_t>(n));
        const auto fast = matvec(s, x);
        DenseMatrix a = assemble_dense(s);
        std::vector<double> want(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += a.at(i, j) * x[static_cast<size_t>(j)];
            want[static_cast<size_t>(i)] = acc;
        }
        worst = std::max(worst, max_abs_diff(fast, want) / std::max(1e-300, inf_norm(want)));

        const auto spec = random_kernel(n, std::max(1, p), static_cast<std::uint64_t>(n * 2 + p));
        const auto fastk = matvec(spec, x);
        DenseMatrix ak = assemble_dense(spec);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += ak.at(i, j) * x[static_cast<size_t>(j)];
            want[static_cast<size_t>(i)] = acc;
        }
        worst = std::max(worst, max_abs_diff(fastk, want) / std::max(1e-300, inf_norm(want)));
    }
    report(10, "O(pN) matvec vs dense product, N<=512, p<=8", worst <= tol,
           "worst rel err " + fmt(worst) + ", tol " + fmt(tol));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}

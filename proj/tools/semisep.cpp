// Command-line front end: generate seeded problem instances, solve them with
// the banded embedding (optionally cross-checked against the dense oracle),
// and emit benchmark records.
//
// Exit codes: 0 success, 1 numerical failure (singular matrix, non-finite
// result), 2 usage or input-format error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "semisep/errors.hpp"
#include "semisep/generator.hpp"
#include "semisep/oracle.hpp"
#include "semisep/problem_io.hpp"
#include "semisep/solver.hpp"

namespace {

using semisep::format_double;

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

struct GenerateArgs {
    int n = 0;
    int p = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string rhs; // defaults to out + ".rhs"
};

int run_generate(const GenerateArgs& a) {
    const semisep::Problem prob = semisep::random_problem(a.n, a.p, a.seed);
    const std::string rhs_path = a.rhs.empty() ? a.out + ".rhs" : a.rhs;
    semisep::write_problem_file(a.out, prob.spec);
    semisep::write_vector_file(rhs_path, prob.rhs);
    std::cout << "problem=" << a.out << "\n";
    std::cout << "rhs=" << rhs_path << "\n";
    return 0;
}

struct SolveArgs {
    std::string problem;
    std::string rhs; // empty: all-ones
    std::string out; // empty: print x to stdout
    bool verify = false;
    int dense_cap = semisep::kDenseCapDefault;
};

int run_solve(const SolveArgs& a) {
    const semisep::ExponentialKernelSpec spec = semisep::read_problem_file(a.problem);
    std::vector<double> b;
    if (a.rhs.empty()) {
        b.assign(static_cast<size_t>(spec.n), 1.0);
    } else {
        b = semisep::read_vector_file(a.rhs);
        if (b.size() != static_cast<size_t>(spec.n))
            throw semisep::ParseError(0, a.rhs + ": expected " + std::to_string(spec.n) +
                                             " values, got " + std::to_string(b.size()));
    }
    if (a.verify && spec.n > a.dense_cap)
        throw std::invalid_argument("--verify needs n <= dense cap (" +
                                    std::to_string(a.dense_cap) + "); raise --dense-cap");

    std::optional<semisep::EssFactor> f;
    const double factorize_ms = time_ms([&] { f.emplace(semisep::factorize(spec)); });
    std::vector<double> x;
    const double solve_ms = time_ms([&] { x = semisep::solve(*f, b); });
    const double resid = semisep::residual_inf(spec, x, b);
    const semisep::LogDet ld = semisep::logdet(*f);

    std::cout << "n=" << spec.n << "\n";
    std::cout << "p=" << spec.p << "\n";
    std::cout << "m=" << f->sys.m << "\n";
    std::cout << "factorize_ms=" << format_double(factorize_ms) << "\n";
    std::cout << "solve_ms=" << format_double(solve_ms) << "\n";
    std::cout << "residual_inf=" << format_double(resid) << "\n";
    std::cout << "logdet=" << format_double(ld.value) << "\n";
    std::cout << "logdet_sign=" << ld.sign << "\n";

    if (a.verify) {
        const semisep::DenseMatrix dense = semisep::assemble_dense(spec, a.dense_cap);
        const semisep::DenseLU lu = semisep::DenseLU::factor(dense);
        const std::vector<double> xd = lu.solve(b);
        const semisep::LogDet ldd = lu.logdet();
        double xerr = 0.0;
        for (size_t i = 0; i < x.size(); ++i) xerr = std::max(xerr, std::abs(x[i] - xd[i]));
        const double lerr = std::abs(ld.value - ldd.value);
        std::cout << "dense_logdet=" << format_double(ldd.value) << "\n";
        std::cout << "dense_logdet_sign=" << ldd.sign << "\n";
        std::cout << "logdet_abs_err=" << format_double(lerr) << "\n";
        std::cout << "logdet_rel_err="
                  << format_double(lerr / std::max(1e-300, std::abs(ldd.value))) << "\n";
        std::cout << "solution_max_abs_err=" << format_double(xerr) << "\n";
    }

    if (!a.out.empty()) {
        semisep::write_vector_file(a.out, x);
        std::cout << "x_file=" << a.out << "\n";
    } else {
        std::cout << "x\n";
        semisep::write_vector(std::cout, x);
    }

    if (!std::isfinite(resid)) {
        std::cerr << "error: non-finite residual\n";
        return 1;
    }
    return 0;
}

struct BenchArgs {
    std::vector<int> ns;
    std::vector<int> ps{5};
    std::vector<std::uint64_t> seeds{1};
    int reps = 3;
    int dense_cap = semisep::kDenseCapDefault;
};

int run_bench(const BenchArgs& a) {
    for (const int n : a.ns) {
        for (const int p : a.ps) {
            for (const std::uint64_t seed : a.seeds) {
                const semisep::Problem prob = semisep::random_problem(n, p, seed);
                const auto& spec = prob.spec;

                std::vector<double> t_asm, t_fac, t_sol;
                double resid = 0.0;
                semisep::LogDet ld{};
                int m = 0;
                for (int r = 0; r < a.reps; ++r) {
                    std::optional<semisep::ExtendedSystem> sys;
                    t_asm.push_back(
                        time_ms([&] { sys.emplace(semisep::embed_stable_exponential(spec)); }));
                    m = sys->m;
                    std::optional<semisep::BandedFactorization> fac;
                    t_fac.push_back(
                        time_ms([&] { fac.emplace(semisep::lu_factor(sys->assemble_band())); }));
                    std::vector<double> x;
                    t_sol.push_back(time_ms([&] {
                        const auto be = semisep::embed_rhs(*sys, prob.rhs);
                        const auto xe = semisep::lu_solve(*fac, be);
                        x = semisep::extract_solution(*sys, xe);
                    }));
                    if (r == 0) {
                        resid = semisep::residual_inf(spec, x, prob.rhs);
                        ld = semisep::log_abs_det(*fac);
                        const long long flips =
                            static_cast<long long>(p) * static_cast<long long>(n - 1);
                        if (flips % 2 != 0) ld.sign = -ld.sign;
                    }
                }

                std::cout << "n=" << n << " p=" << p << " seed=" << seed << " m=" << m
                          << " reps=" << a.reps
                          << " assembly_ms=" << format_double(median(t_asm))
                          << " factorize_ms=" << format_double(median(t_fac))
                          << " solve_ms=" << format_double(median(t_sol))
                          << " residual_inf=" << format_double(resid)
                          << " logdet=" << format_double(ld.value) << " logdet_sign=" << ld.sign;

                if (n <= a.dense_cap) {
                    std::optional<semisep::DenseMatrix> dm;
                    const double t_dasm =
                        time_ms([&] { dm.emplace(semisep::assemble_dense(spec, a.dense_cap)); });
                    std::optional<semisep::DenseLU> dlu;
                    const double t_dfac =
                        time_ms([&] { dlu.emplace(semisep::DenseLU::factor(std::move(*dm))); });
                    std::vector<double> xd;
                    const double t_dsol = time_ms([&] { xd = dlu->solve(prob.rhs); });
                    const semisep::LogDet ldd = dlu->logdet();
                    const double lerr =
                        std::abs(ld.value - ldd.value) / std::max(1e-300, std::abs(ldd.value));
                    std::cout << " dense_assembly_ms=" << format_double(t_dasm)
                              << " dense_factorize_ms=" << format_double(t_dfac)
                              << " dense_solve_ms=" << format_double(t_dsol)
                              << " dense_logdet=" << format_double(ldd.value)
                              << " logdet_rel_err=" << format_double(lerr);
                }
                std::cout << "\n";
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear-time solver and log-determinant engine for "
                 "semi-separable and exponential-sum covariance matrices"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cgen = app.add_subcommand(
        "generate", "Write a seeded random problem (kernel spec + right-hand side)");
    cgen->add_option("--n", gen.n, "dimension")->required()->check(CLI::PositiveNumber);
    cgen->add_option("--p", gen.p, "number of exponentials")->required()->check(CLI::PositiveNumber);
    cgen->add_option("--seed", gen.seed, "RNG seed (same seed, same files)");
    cgen->add_option("--out", gen.out, "problem file path")->required();
    cgen->add_option("--rhs", gen.rhs, "right-hand-side file path (default: <out>.rhs)");

    SolveArgs sol;
    CLI::App* csol = app.add_subcommand("solve", "Factor a problem file and solve it");
    csol->add_option("--problem", sol.problem, "problem file")->required();
    csol->add_option("--rhs", sol.rhs, "right-hand-side file (default: all ones)");
    csol->add_option("--out", sol.out, "write the solution here instead of stdout");
    csol->add_flag("--verify", sol.verify, "cross-check against the dense oracle (needs n <= dense cap)");
    csol->add_option("--dense-cap", sol.dense_cap, "largest n the dense oracle may densify");

    BenchArgs ben;
    CLI::App* cben = app.add_subcommand(
        "bench", "Benchmark records, one key=value line per (n, p, seed) case");
    cben->add_option("--n", ben.ns, "dimensions (comma separated)")->required()->delimiter(',');
    cben->add_option("--p", ben.ps, "exponential counts (comma separated)")->delimiter(',');
    cben->add_option("--seeds", ben.seeds, "seeds (comma separated)")->delimiter(',');
    cben->add_option("--reps", ben.reps, "timing repetitions per case (median is reported)")
        ->check(CLI::PositiveNumber);
    cben->add_option("--dense-cap", ben.dense_cap,
                     "add dense-oracle columns for cases with n <= this (0 disables)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cgen->parsed()) return run_generate(gen);
        if (csol->parsed()) return run_solve(sol);
        if (cben->parsed()) return run_bench(ben);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const semisep::SingularMatrixError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const semisep::ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

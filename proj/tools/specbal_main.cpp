// specbal: generate, solve, benchmark and verify spectral-discrepancy
// instances. Exit codes: 0 success, 1 verification failure, 2 usage or I/O
// error, 3 solver failure.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specbal/baselines.hpp"
#include "specbal/concentration.hpp"
#include "specbal/full_coloring.hpp"
#include "specbal/instance.hpp"
#include "specbal/kernels.hpp"
#include "specbal/log.hpp"
#include "specbal/projection.hpp"
#include "specbal/report.hpp"
#include "specbal/subspace.hpp"

namespace {

using namespace specbal;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::printf("seed=%" PRIu64 " (drawn from entropy)\n", seed);
    return seed;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct GenArgs {
    std::string family;
    int n = 0;
    int d = 0;
    int r = 1;
    int h = 1;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    Instance inst;
    if (args.family == "diagonal-spencer") {
        inst = generate_diagonal_spencer(args.n, args.d > 0 ? args.d : args.n, seed);
    } else if (args.family == "lower-bound") {
        inst = generate_lower_bound(args.n);
    } else if (args.family == "low-rank") {
        inst = generate_low_rank_random(args.n, args.d > 0 ? args.d : args.n, args.r, seed);
    } else if (args.family == "block-diagonal") {
        inst = generate_block_diagonal(args.n, args.d > 0 ? args.d : args.n, args.h, seed);
    } else {
        std::fprintf(stderr, "unknown family: %s\n", args.family.c_str());
        return 2;
    }
    if (!args.out.empty()) write_instance(inst, args.out);
    const ConcentrationParams params = concentration_params(inst);
    std::printf("n=%d d=%d sigma=%.12g v=%.12g f=%.12g\n", inst.n, inst.d, params.sigma,
                params.v, params.f);
    return 0;
}

struct SolveArgs {
    std::string instance_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    double epsilon = 0.25;
    double c_bound = 2.0;
    int max_restarts = 16;
    int endgame = 12;
    bool theoretical = false;
    int threads = 1;
    double step_scale = 1.0;
    bool no_recenter = false;
    bool no_adaptive = false;
    double adaptive_factor = 0.9;
    double projection_tol = 1e-6;
    int projection_iters = 2000;
};

SolveConfig build_solve_config(const SolveArgs& args) {
    SolveConfig cfg;
    cfg.coloring = args.theoretical ? PartialColoringConfig::theoretical_mode()
                                    : PartialColoringConfig::practical();
    if (!args.theoretical) {
        cfg.coloring.epsilon = args.epsilon;
        cfg.coloring.delta = 1.5 * args.epsilon * std::log2(1.0 / args.epsilon) / 2.0;
    }
    cfg.coloring.c_bound = args.c_bound;
    cfg.coloring.max_restarts = args.max_restarts;
    cfg.coloring.step_scale = args.step_scale;
    cfg.coloring.adaptive_radius = !args.no_adaptive && !args.theoretical;
    cfg.coloring.adaptive_factor = args.adaptive_factor;
    cfg.coloring.projection.primal_tol = args.projection_tol;
    cfg.coloring.projection.max_iterations = args.projection_iters;
    cfg.endgame_threshold = args.endgame;
    cfg.recenter = !args.no_recenter;
    cfg.threads = args.threads;
    return cfg;
}

int cmd_solve(const SolveArgs& args) {
    const Instance inst = read_instance(args.instance_path);
    const std::uint64_t seed = resolve_seed(args.seed);
    const SolveConfig cfg = build_solve_config(args);
    Rng rng(seed);
    try {
        const SolveReport report = solve(inst, cfg, rng);
        if (!args.out.empty()) write_report(report, args.out);
        std::printf("discrepancy=%.12g rounds=%d normalized=%.6g seed=%" PRIu64 "\n",
                    report.discrepancy, report.rounds, report.discrepancy / std::sqrt(inst.n),
                    seed);
        return 0;
    } catch (const SolverFailureError& e) {
        log::error("solver failure: %s", e.what());
        if (!args.out.empty()) {
            nlohmann::json j;
            j["library_version"] = kLibraryVersion;
            j["failed"] = true;
            j["error"] = e.what();
            j["best_fraction"] = e.best_fraction;
            j["seed"] = seed;
            j["instance_label"] = inst.label;
            std::ofstream out(args.out, std::ios::binary);
            out << j.dump(2) << "\n";
        }
        return 3;
    }
}

struct BenchArgs {
    std::string instance_path;
    std::optional<std::uint64_t> seed;
    int samples = 200;
    int threads = 1;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    const Instance inst = read_instance(args.instance_path);
    const std::uint64_t seed = resolve_seed(args.seed);
    const double sqrt_n = std::sqrt(static_cast<double>(inst.n));

    std::FILE* out = stdout;
    std::FILE* file = nullptr;
    if (!args.out.empty()) {
        file = std::fopen(args.out.c_str(), "w");
        if (file == nullptr) {
            std::fprintf(stderr, "cannot open %s\n", args.out.c_str());
            return 2;
        }
        out = file;
    }
    std::fprintf(out, "method,discrepancy,normalized,runtime_ms,seed\n");
    auto num_row = [&](const char* method, double value, double ms) {
        std::fprintf(out, "%s,%.12g,%.12g,%.3f,%" PRIu64 "\n", method, value, value / sqrt_n, ms,
                     seed);
    };

    {
        SolveArgs sargs;
        sargs.threads = args.threads;
        auto start = std::chrono::steady_clock::now();
        Rng rng(seed);
        const SolveReport report = solve(inst, build_solve_config(sargs), rng);
        num_row("solver", report.discrepancy, elapsed_ms(start));
    }
    {
        auto start = std::chrono::steady_clock::now();
        Rng rng(Rng(seed).derive(0xbe7c1).seed());
        const MonteCarloEstimate est = [&] {
            MonteCarloEstimate acc;
            std::vector<double> vals(args.samples);
            for (int s = 0; s < args.samples; ++s) {
                Rng sample(rng.derive(s).seed());
                vals[s] = random_coloring(inst, sample).discrepancy;
            }
            acc.samples = args.samples;
            double sum = 0.0;
            for (double v : vals) sum += v;
            acc.mean = sum / args.samples;
            if (args.samples > 1) {
                double ss = 0.0;
                for (double v : vals) ss += (v - acc.mean) * (v - acc.mean);
                acc.stderr_ = std::sqrt(ss / (args.samples - 1)) /
                              std::sqrt(static_cast<double>(args.samples));
            }
            return acc;
        }();
        const double ms = elapsed_ms(start);
        num_row("random", est.mean, ms);
        num_row("random_stderr", est.stderr_, 0.0);
    }
    if (inst.n <= 24) {
        auto start = std::chrono::steady_clock::now();
        const BruteForceResult bf = brute_force_min(inst, args.threads);
        num_row("brute_force", bf.min_discrepancy, elapsed_ms(start));
    } else {
        std::fprintf(out, "brute_force,skipped (n>24),,0.000,%" PRIu64 "\n", seed);
    }
    {
        const ConcentrationParams params = concentration_params(inst);
        if (inst.d >= 2) {
            num_row("chernoff_bound", chernoff_bound(params), 0.0);
            num_row("bbvh_bound", bbvh_bound(params, 4.0), 0.0);
        } else {
            std::fprintf(out, "chernoff_bound,skipped (d<2),,0.000,%" PRIu64 "\n", seed);
            std::fprintf(out, "bbvh_bound,skipped (d<2),,0.000,%" PRIu64 "\n", seed);
        }
    }
    if (file != nullptr) std::fclose(file);
    return 0;
}

struct VerifyArgs {
    std::string instance_path;
    std::optional<std::uint64_t> seed;
};

struct CheckPrinter {
    bool all_pass = true;
    void report(const std::string& name, bool pass, double residual, const char* note = "") {
        std::printf("%s  %-34s residual=%.3e %s\n", pass ? "PASS" : "FAIL", name.c_str(),
                    residual, note);
        all_pass = all_pass && pass;
    }
    void skip(const std::string& name, const char* why) {
        std::printf("SKIP  %-34s (%s)\n", name.c_str(), why);
    }
};

// Explicit d^2 x d^2 covariance sum vec(A_i) vec(A_i)^T, for small d.
SymmetricMatrix explicit_covariance(const Instance& inst) {
    const int dd = inst.d * inst.d;
    std::vector<double> cov(static_cast<std::size_t>(dd) * dd, 0.0);
    for (const SymmetricMatrix& a : inst.matrices) {
        const std::vector<double>& v = a.entries();  // vec(A) in row-major order
        for (int i = 0; i < dd; ++i) {
            kernels::axpy(v[i], v.data(), cov.data() + static_cast<std::size_t>(i) * dd, dd);
        }
    }
    return SymmetricMatrix(dd, std::move(cov));
}

int cmd_verify(const VerifyArgs& args) {
    const Instance inst = read_instance(args.instance_path);
    const std::uint64_t seed = resolve_seed(args.seed);
    Rng rng(seed);
    CheckPrinter out;

    // unit norms
    {
        double worst = 0.0;
        for (const auto& m : inst.matrices) worst = std::max(worst, spectral_norm(m));
        out.report("unit_operator_norms", worst <= 1.0 + 1e-8, std::max(0.0, worst - 1.0));
    }

    const auto ptrs = inst.matrix_ptrs();
    const GramMatrix gram = gram_matrix(ptrs);
    const ConcentrationParams params = concentration_params(inst);

    // Gram PSD and trace identity
    {
        const double min_eig = gram.eigen.eigenvalues.back();
        double trace = 0.0;
        for (int i = 0; i < inst.n; ++i) trace += gram.gram(i, i);
        out.report("gram_psd", min_eig >= -1e-8 * std::max(trace, 1.0),
                   std::max(0.0, -min_eig));
        const double rel =
            std::fabs(trace - params.frobenius_budget) / std::max(1.0, params.frobenius_budget);
        out.report("gram_trace_equals_budget", rel <= 1e-8, rel);
    }

    // Gram vs explicit covariance spectrum
    if (inst.d <= 8) {
        const EigenDecomposition cov = symmetric_eigen(explicit_covariance(inst));
        double worst = 0.0;
        for (int i = 0; i < inst.n; ++i) {
            const double a = gram.eigen.eigenvalues[i];
            const double b = i < static_cast<int>(cov.eigenvalues.size()) ? cov.eigenvalues[i]
                                                                          : 0.0;
            worst = std::max(worst, std::fabs(a - b));
        }
        out.report("gram_covariance_spectrum", worst <= 1e-8, worst);
    } else {
        out.skip("gram_covariance_spectrum", "d > 8");
    }

    // subspace construction at delta = 0.375
    {
        const double delta = 0.375;
        const double delta_sq = params.f * params.f / delta;
        const SubspaceBasis basis = bad_subspace(gram, std::max(delta_sq, 1e-300));
        double ortho = 0.0;
        for (int i = 0; i < basis.dim(); ++i) {
            for (int j = i; j < basis.dim(); ++j) {
                const double dot =
                    kernels::dot(basis.basis.col(i), basis.basis.col(j), inst.n);
                ortho = std::max(ortho, std::fabs(dot - (i == j ? 1.0 : 0.0)));
            }
        }
        out.report("subspace_orthonormal", ortho <= 1e-8, ortho);

        const int min_dim =
            inst.n - static_cast<int>(std::ceil(params.frobenius_budget /
                                                std::max(delta_sq, 1e-300)));
        out.report("subspace_dimension_pigeonhole", basis.dim() >= min_dim,
                   static_cast<double>(min_dim - basis.dim()));

        const double delta_bound = std::sqrt(delta_sq);
        const double v_restricted = restricted_v_param(gram, basis);
        out.report("v_contraction", v_restricted <= delta_bound * (1.0 + 1e-8) + 1e-12,
                   std::max(0.0, v_restricted - delta_bound));

        const double sigma_restricted = restricted_sigma_param(ptrs, basis);
        out.report("sigma_contraction", sigma_restricted <= params.sigma * (1.0 + 1e-8) + 1e-12,
                   std::max(0.0, sigma_restricted - params.sigma));

        // constraint orthogonality through explicit V_j reconstruction
        if (inst.d <= 8 && basis.constraint_count > 0 && basis.dim() > 0) {
            double worst = 0.0;
            Rng check_rng = rng.derive(11);
            const Vec h = check_rng.gaussian_vector(basis.dim());
            const Vec y = mat_vec(basis.basis, h);
            const SymmetricMatrix ay = weighted_sum(ptrs, y);
            for (int jbad = 0; jbad < basis.constraint_count; ++jbad) {
                const double lam = gram.eigen.eigenvalues[jbad];
                if (lam <= 0.0) continue;
                std::span<const double> uj(gram.eigen.eigenvectors.col(jbad),
                                           static_cast<std::size_t>(inst.n));
                const SymmetricMatrix vj = scaled(weighted_sum(ptrs, uj), 1.0 / std::sqrt(lam));
                worst = std::max(worst, std::fabs(trace_inner(ay, vj)));
            }
            out.report("bad_direction_orthogonality", worst <= 1e-8 * std::max(1.0, params.v),
                       worst);
        }

        // projection feasibility on a Gaussian target
        {
            const double t = coloring_radius(params, 2.0);
            Rng proj_rng = rng.derive(12);
            Vec target = proj_rng.gaussian_vector(inst.n);
            const Vec x0(static_cast<std::size_t>(inst.n), 0.0);
            ProjectionConfig pcfg;
            try {
                const Vec x = project_to_body(ptrs, target, x0, t, basis, pcfg);
                double cube_violation = 0.0;
                for (double v : x) cube_violation = std::max(cube_violation, std::fabs(v) - 1.0);
                const Vec in_h = mat_vec(basis.basis, mat_tvec(basis.basis, x));
                double sub_violation = 0.0;
                for (int i = 0; i < inst.n; ++i) {
                    sub_violation = std::max(sub_violation, std::fabs(x[i] - in_h[i]));
                }
                const double norm = spectral_norm(weighted_sum(ptrs, x));
                const double tol = pcfg.primal_tol * std::max(1.0, t);
                out.report("projection_cube", cube_violation <= tol, cube_violation);
                out.report("projection_subspace", sub_violation <= 10 * tol, sub_violation);
                out.report("projection_spectral", norm <= t + 10 * tol,
                           std::max(0.0, norm - t));
            } catch (const ConvergenceError& e) {
                out.report("projection_convergence", false, e.residual);
            }
        }
    }

    return out.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signed spectral balancing: partial-coloring solver and oracles"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance file");
    gen_cmd->set_help_flag("--help", "print help");  // frees -h for the block size
    gen_cmd->add_option("--family", gen.family,
                        "diagonal-spencer | lower-bound | low-rank | block-diagonal")
        ->required();
    gen_cmd->add_option("--n", gen.n, "number of matrices")->required();
    gen_cmd->add_option("--d", gen.d, "matrix dimension (defaults to n)");
    gen_cmd->add_option("--r", gen.r, "rank for low-rank family");
    gen_cmd->add_option("--h", gen.h, "block size for block-diagonal family");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--out", gen.out, "output instance path");

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance");
    solve_cmd->add_option("instance", solve_args.instance_path, "instance JSON path")
        ->required();
    solve_cmd->add_option("--seed", solve_args.seed, "solver seed");
    solve_cmd->add_option("--out", solve_args.out, "report JSON path");
    solve_cmd->add_option("--epsilon", solve_args.epsilon, "freeze fraction parameter");
    solve_cmd->add_option("--c-bound", solve_args.c_bound, "radius multiplier");
    solve_cmd->add_option("--max-restarts", solve_args.max_restarts, "restarts per round");
    solve_cmd->add_option("--endgame", solve_args.endgame, "exhaustive endgame threshold");
    solve_cmd->add_flag("--theoretical", solve_args.theoretical,
                        "use the theoretical constants");
    solve_cmd->add_option("--threads", solve_args.threads, "worker threads");
    solve_cmd->add_option("--step-scale", solve_args.step_scale, "Gaussian step scale");
    solve_cmd->add_flag("--no-recenter", solve_args.no_recenter,
                        "bound per-round increments instead of the running total");
    solve_cmd->add_flag("--no-adaptive", solve_args.no_adaptive,
                        "disable the sampled radius cap");
    solve_cmd->add_option("--adaptive-factor", solve_args.adaptive_factor,
                          "sampled radius multiplier");
    solve_cmd->add_option("--projection-tol", solve_args.projection_tol,
                          "projection primal tolerance");
    solve_cmd->add_option("--projection-iters", solve_args.projection_iters,
                          "projection iteration budget");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "compare solver against baselines");
    bench_cmd->add_option("instance", bench.instance_path, "instance JSON path")->required();
    bench_cmd->add_option("--samples", bench.samples, "random colorings to draw");
    bench_cmd->add_option("--seed", bench.seed, "seed");
    bench_cmd->add_option("--threads", bench.threads, "worker threads");
    bench_cmd->add_option("--out", bench.out, "CSV output path (default stdout)");

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant checks on an instance");
    verify_cmd->add_option("instance", verify.instance_path, "instance JSON path")->required();
    verify_cmd->add_option("--seed", verify.seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (bench_cmd->parsed()) return cmd_bench(bench);
        if (verify_cmd->parsed()) return cmd_verify(verify);
    } catch (const specbal::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const specbal::InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const specbal::SolverFailureError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const specbal::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

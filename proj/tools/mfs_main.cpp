#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <complex>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mfs/free_product.hpp"
#include "mfs/partition_oracle.hpp"
#include "mfs/random_series.hpp"
#include "mfs/series_io.hpp"
#include "mfs/transforms.hpp"

namespace {

using Scalar = mfs::DefaultScalar;
using Series = mfs::MultiSeries<Scalar>;

// Exit-code contract: 0 = success, 1 = mathematical failure (a verification
// that ran and failed, or a transform whose precondition does not hold),
// 2 = usage or input-format error.
constexpr int kExitPass = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

std::string format_devs(const std::vector<double> &devs) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(3);
    for (std::size_t i = 0; i < devs.size(); ++i)
        os << (i ? " " : "") << devs[i];
    return os.str();
}

struct VerifyArgs {
    int dim = 2;
    int order = 4;
    int trials = 5;
    std::uint64_t seed = 1;
    double scale = 0.3;
    double tol = 1e-8;
    bool json = false;
};

int run_verify_twisted(const VerifyArgs &args) {
    const mfs::Algebra<Scalar> alg(args.dim);
    bool all_pass = true;
    int passed = 0;

    for (int trial = 0; trial < args.trials; ++trial) {
        const std::uint64_t trial_seed = args.seed + static_cast<std::uint64_t>(trial);
        mfs::Rng rng(trial_seed);
        const Series cx = mfs::random_cumulant_series(alg, args.order, rng, args.scale);
        const Series cy = mfs::random_cumulant_series(alg, args.order, rng, args.scale);

        const auto t0 = std::chrono::steady_clock::now();
        const mfs::TwistedReport rep = mfs::verify_twisted(cx, cy, args.tol);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        all_pass = all_pass && rep.pass;
        passed += rep.pass ? 1 : 0;

        if (args.json) {
            // One object per line. Wall time is deliberately excluded here so
            // identical flags + seed give byte-identical output; timing is
            // available in text mode.
            nlohmann::ordered_json j;
            j["trial"] = trial;
            j["seed"] = trial_seed;
            j["dim"] = args.dim;
            j["order"] = args.order;
            j["tol"] = args.tol;
            j["pass"] = rep.pass;
            j["max_dev"] = rep.max_dev;
            j["twisted"] = rep.twisted;
            j["solver_cross"] = rep.solver_cross;
            j["trailing_chi"] = rep.trailing_chi;
            j["leading_chi"] = rep.leading_chi;
            j["inverse_x"] = rep.inverse_x;
            j["inverse_y"] = rep.inverse_y;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "trial " << trial << ": seed=" << trial_seed << " dim=" << args.dim
                      << " order=" << args.order << " tol=" << args.tol << " "
                      << (rep.pass ? "PASS" : "FAIL") << " max_dev=" << rep.max_dev
                      << " time_ms=" << ms << "\n"
                      << "  twisted:       " << format_devs(rep.twisted) << "\n"
                      << "  solver_cross:  " << format_devs(rep.solver_cross) << "\n"
                      << "  trailing_chi:  " << format_devs(rep.trailing_chi) << "\n"
                      << "  leading_chi:   " << format_devs(rep.leading_chi) << "\n"
                      << "  inverse_x:     " << format_devs(rep.inverse_x) << "\n"
                      << "  inverse_y:     " << format_devs(rep.inverse_y) << "\n";
        }
    }
    if (!args.json)
        std::cout << "result: " << passed << "/" << args.trials << " trials passed\n";
    return all_pass ? kExitPass : kExitMathFailure;
}

struct TransformArgs {
    std::string in_path;
    std::string out_path;
};

enum class TransformOp { MomentsToCumulants, CumulantsToMoments, STransform, TTransform };

int run_transform(TransformOp op, const TransformArgs &args) {
    mfs::SeriesFile in = [&] {
        try {
            return mfs::read_series_file(args.in_path);
        } catch (const mfs::ParseError &e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitUsage);
        } catch (const mfs::Error &e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitUsage);
        }
    }();

    const auto expect_kind = [&](mfs::SeriesFile::Kind want) {
        if (in.kind != want) {
            std::cerr << "error: input kind is \"" << mfs::to_string(in.kind)
                      << "\" but this transform expects \"" << mfs::to_string(want) << "\"\n";
            std::exit(kExitUsage);
        }
    };

    try {
        mfs::SeriesFile out{mfs::SeriesFile::Kind::Generic, in.series};
        switch (op) {
        case TransformOp::MomentsToCumulants:
            expect_kind(mfs::SeriesFile::Kind::Moments);
            out.series = mfs::cumulants_from_moments(in.series);
            out.kind = mfs::SeriesFile::Kind::Cumulants;
            break;
        case TransformOp::CumulantsToMoments:
            expect_kind(mfs::SeriesFile::Kind::Cumulants);
            out.series = mfs::moments_from_cumulants(in.series);
            out.kind = mfs::SeriesFile::Kind::Moments;
            break;
        case TransformOp::STransform:
            expect_kind(mfs::SeriesFile::Kind::Moments);
            out.series = mfs::s_transform(in.series);
            out.kind = mfs::SeriesFile::Kind::STransform;
            break;
        case TransformOp::TTransform:
            expect_kind(mfs::SeriesFile::Kind::Moments);
            out.series = mfs::t_transform(in.series);
            out.kind = mfs::SeriesFile::Kind::Generic;
            break;
        }
        mfs::write_series_file(args.out_path, out);
    } catch (const mfs::LinearTermSingular &) {
        std::cerr << "error: E[x] not invertible (the degree-0 component of the input "
                     "must be an invertible matrix)\n";
        return kExitMathFailure;
    } catch (const mfs::NotInvertible &e) {
        std::cerr << "error: a constant term that must be invertible is singular: " << e.what()
                  << "\n";
        return kExitMathFailure;
    } catch (const mfs::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitPass;
}

struct OracleArgs {
    int dim = 1;
    int order = 4;
    int max_oracle_degree = 3;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

int run_oracle_compare(const OracleArgs &args) {
    if (args.max_oracle_degree > args.order) {
        std::cerr << "error: --max-oracle-degree cannot exceed --order\n";
        return kExitUsage;
    }
    const mfs::Algebra<Scalar> alg(args.dim);
    mfs::Rng rng(args.seed);
    const Series cx = mfs::random_cumulant_series(alg, args.order, rng, 0.3);
    const Series cy = mfs::random_cumulant_series(alg, args.order, rng, 0.3);

    const mfs::ProductMoments<Scalar> prod = mfs::free_product_moments(cx, cy, args.tol);
    const Series engine = mfs::truncated(prod.xy, args.max_oracle_degree);
    const Series oracle = mfs::oracle::product_moment_series(cx, cy, args.max_oracle_degree);

    const auto devs = mfs::degree_deviations(engine, oracle);
    double worst = 0.0;
    std::cout << "product moments, recursive solver vs partition oracle (dim=" << args.dim
              << " order=" << args.order << " seed=" << args.seed << ")\n";
    for (std::size_t n = 0; n < devs.size(); ++n) {
        worst = std::max(worst, devs[n]);
        std::cout << "  degree " << n << ": max deviation " << devs[n] << "\n";
    }
    const bool pass = worst <= args.tol;
    std::cout << "result: " << (pass ? "PASS" : "FAIL") << " worst=" << worst
              << " tol=" << args.tol << "\n";
    return pass ? kExitPass : kExitMathFailure;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Truncated multilinear function series engine over matrix algebras"};
    app.require_subcommand(1);

    VerifyArgs vargs;
    CLI::App *verify = app.add_subcommand(
        "verify-twisted", "Randomized verification of the twisted product rule for S-transforms");
    verify->add_option("--dim", vargs.dim, "Matrix side length d")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    verify->add_option("--order", vargs.order, "Truncation order N")
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    verify->add_option("--trials", vargs.trials, "Number of independent random pairs")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    verify->add_option("--seed", vargs.seed, "Base RNG seed; trial t uses seed + t")
        ->capture_default_str();
    verify->add_option("--scale", vargs.scale, "Random coefficient half-width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--tol", vargs.tol, "Pass/fail tolerance")
        ->envname("MFS_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_flag("--json", vargs.json, "One JSON report object per line");

    TransformArgs targs;
    CLI::App *transform =
        app.add_subcommand("transform", "Apply a series transform to a serialized series file");
    transform->require_subcommand(1);
    const auto add_io = [&](CLI::App *sub) {
        sub->add_option("--in", targs.in_path, "Input series file")->required();
        sub->add_option("--out", targs.out_path, "Output series file")->required();
    };
    CLI::App *m2c = transform->add_subcommand("moments-to-cumulants",
                                              "Moment series -> cumulant series");
    CLI::App *c2m = transform->add_subcommand("cumulants-to-moments",
                                              "Cumulant series -> moment series");
    CLI::App *st = transform->add_subcommand(
        "s-transform", "Moment series -> S-transform (order drops by one)");
    CLI::App *tt = transform->add_subcommand("t-transform",
                                             "Moment series -> multiplicative inverse of S");
    for (CLI::App *sub : {m2c, c2m, st, tt})
        add_io(sub);

    OracleArgs oargs;
    CLI::App *oracle = app.add_subcommand(
        "oracle-compare",
        "Compare the recursive product-moment solver against the non-crossing-partition oracle");
    oracle->add_option("--dim", oargs.dim, "Matrix side length d")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    oracle->add_option("--order", oargs.order, "Truncation order of the random cumulants")
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    oracle->add_option("--max-oracle-degree", oargs.max_oracle_degree,
                       "Highest product-moment degree the oracle recomputes")
        ->check(CLI::Range(0, 4))
        ->capture_default_str();
    oracle->add_option("--seed", oargs.seed, "RNG seed")->capture_default_str();
    oracle->add_option("--tol", oargs.tol, "Pass/fail tolerance")
        ->envname("MFS_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError &e) {
        app.exit(e); // prints the usage diagnostic
        return kExitUsage;
    }

    try {
        if (*verify)
            return run_verify_twisted(vargs);
        if (*m2c)
            return run_transform(TransformOp::MomentsToCumulants, targs);
        if (*c2m)
            return run_transform(TransformOp::CumulantsToMoments, targs);
        if (*st)
            return run_transform(TransformOp::STransform, targs);
        if (*tt)
            return run_transform(TransformOp::TTransform, targs);
        if (*oracle)
            return run_oracle_compare(oargs);
    } catch (const mfs::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    (void)transform;
    std::cerr << "error: no subcommand selected\n";
    return kExitUsage;
}

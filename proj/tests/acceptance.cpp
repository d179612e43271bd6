// Acceptance gate: every release-blocking property in one binary. Each
// criterion prints exactly one PASS/FAIL line with the measured worst
// deviation, and the exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mfs/free_product.hpp"
#include "mfs/partition_oracle.hpp"
#include "mfs/random_series.hpp"
#include "mfs/transforms.hpp"

namespace {

using Scalar = mfs::DefaultScalar;
using Alg = mfs::Algebra<Scalar>;
using Series = mfs::MultiSeries<Scalar>;
using Matrix = mfs::ElementMatrix<Scalar>;

int failures = 0;

void report(int number, const std::string &name, bool pass, double worst, double tol,
            double seconds) {
    std::printf("%s  criterion %d: %-46s  worst %.3e  tol %.1e  (%.1f s)\n",
                pass ? "PASS" : "FAIL", number, name.c_str(), worst, tol, seconds);
    if (!pass)
        ++failures;
}

struct Corpus {
    int dim;
    int order;
    std::vector<mfs::TwistedReport> reports;
};

double fold(const std::vector<double> &v) {
    double m = 0;
    for (double x : v)
        m = std::max(m, x);
    return m;
}

// The three campaign configurations share one corpus of twisted-verification
// reports so the later criteria measure exactly the runs that criterion 1
// passed judgment on.
std::vector<Corpus> build_corpus() {
    std::vector<Corpus> corpus;
    const int trials = 20;
    const std::vector<std::pair<int, int>> configs = {{1, 5}, {2, 5}, {3, 4}};
    for (auto [d, order] : configs) {
        Corpus c{d, order, {}};
        const Alg alg(d);
        for (int t = 0; t < trials; ++t) {
            mfs::Rng rng(static_cast<std::uint64_t>(1000 * d + t));
            const Series cx = mfs::random_cumulant_series(alg, order, rng);
            const Series cy = mfs::random_cumulant_series(alg, order, rng);
            c.reports.push_back(mfs::verify_twisted(cx, cy, 1e-8));
        }
        corpus.push_back(std::move(c));
    }
    return corpus;
}

double elapsed(const std::chrono::steady_clock::time_point &t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1_twisted(const std::vector<Corpus> &corpus, double build_seconds) {
    double worst = 0;
    for (const auto &c : corpus)
        for (const auto &rep : c.reports)
            worst = std::max(worst, fold(rep.twisted));
    const bool under_budget = build_seconds < 300.0;
    report(1, "twisted multiplicativity of S-transforms", worst <= 1e-8 && under_budget, worst,
           1e-8, build_seconds);
}

void criterion2_inverse_pair(const std::vector<Corpus> &corpus) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (const auto &c : corpus)
        for (const auto &rep : c.reports) {
            worst = std::max(worst, fold(rep.inverse_x));
            worst = std::max(worst, fold(rep.inverse_y));
        }
    report(2, "I*C and I*S invert each other (both ways)", worst <= 1e-9, worst, 1e-9,
           elapsed(t0));
}

void criterion3_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int d : {1, 2}) {
        const Alg alg(d);
        mfs::Rng rng(static_cast<std::uint64_t>(7000 + d));

        // Product moments, degrees 0..3, recursive solver vs partition oracle.
        const Series cx = mfs::random_cumulant_series(alg, 3, rng);
        const Series cy = mfs::random_cumulant_series(alg, 3, rng);
        const auto prod = mfs::free_product_moments(cx, cy);
        const Series oracle_prod = mfs::oracle::product_moment_series(cx, cy, 3);
        worst = std::max(worst,
                         static_cast<double>(mfs::max_deviation(prod.xy, oracle_prod).max_abs));

        // Single-variable moments, degrees 0..5.
        const Series c = mfs::random_cumulant_series(alg, 5, rng);
        const Series recursive = mfs::moments_from_cumulants(c);
        const Series oracle_single = mfs::oracle::moment_series(c, 5);
        worst = std::max(worst,
                         static_cast<double>(mfs::max_deviation(recursive, oracle_single).max_abs));
    }
    report(3, "recursive solvers match the partition oracle", worst <= 1e-10, worst, 1e-10,
           elapsed(t0));
}

void criterion4_bijection() {
    const auto t0 = std::chrono::steady_clock::now();
    using mfs::CumulantRecursion;
    double worst = 0;
    for (int d : {1, 2, 3}) {
        const Alg alg(d);
        mfs::Rng rng(static_cast<std::uint64_t>(8000 + d));
        const Series c = mfs::random_cumulant_series(alg, 5, rng);
        for (auto path : {CumulantRecursion::FirstLetter, CumulantRecursion::LastLetter}) {
            const Series phi = mfs::moments_from_cumulants(c, path);
            const Series c_back = mfs::cumulants_from_moments(phi, path);
            worst = std::max(worst, static_cast<double>(mfs::max_deviation(c_back, c).max_abs));
            const Series phi_back = mfs::moments_from_cumulants(c_back, path);
            worst = std::max(worst, static_cast<double>(mfs::max_deviation(phi_back, phi).max_abs));
        }
        const Series via_first = mfs::moments_from_cumulants(c, CumulantRecursion::FirstLetter);
        const Series via_last = mfs::moments_from_cumulants(c, CumulantRecursion::LastLetter);
        worst = std::max(worst, static_cast<double>(mfs::max_deviation(via_first, via_last).max_abs));
        worst = std::max(
            worst, static_cast<double>(
                       mfs::max_deviation(mfs::cumulants_from_moments(via_first,
                                                                      CumulantRecursion::FirstLetter),
                                          mfs::cumulants_from_moments(via_first,
                                                                      CumulantRecursion::LastLetter))
                           .max_abs));
    }
    report(4, "moment-cumulant bijection and path agreement", worst <= 1e-10, worst, 1e-10,
           elapsed(t0));
}

void criterion5_scalar() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_twist = 0;
    {
        const Alg alg(1);
        mfs::Rng rng(9001);
        const Series cx = mfs::random_cumulant_series(alg, 5, rng);
        const Series cy = mfs::random_cumulant_series(alg, 5, rng);
        const Series sx = mfs::s_from_cumulants(cx);
        const Series sy = mfs::s_from_cumulants(cy);
        const Series plain = sx * sy;
        worst_twist = mfs::max_deviation(mfs::twisted_product_s(sx, sy), plain).max_abs;
        const auto prod = mfs::free_product_moments(cx, cy);
        worst_twist = std::max(
            worst_twist,
            static_cast<double>(mfs::max_deviation(mfs::s_transform(prod.xy), plain).max_abs));
    }

    double worst_poisson = 0;
    {
        const Alg alg(1);
        Series c(alg, 4);
        for (int n = 0; n <= 4; ++n)
            c.component(n).coefficients()(0) = Scalar(1);
        const Series phi = mfs::moments_from_cumulants(c);
        const double catalan[] = {1, 2, 5, 14};
        for (int n = 0; n <= 3; ++n)
            worst_poisson =
                std::max(worst_poisson,
                         std::abs(phi.component(n).coefficients()(0) - Scalar(catalan[n])));
        const Series s = mfs::s_from_cumulants(c);
        for (int n = 0; n <= 3; ++n)
            worst_poisson =
                std::max(worst_poisson, std::abs(s.component(n).coefficients()(0) -
                                                 Scalar(n % 2 ? -1.0 : 1.0)));
    }
    const bool pass = worst_twist <= 1e-12 && worst_poisson <= 1e-10;
    report(5, "scalar reduction and constant-cumulant series", pass,
           std::max(worst_twist, worst_poisson), 1e-10, elapsed(t0));
}

void criterion6_diagnostics(const std::vector<Corpus> &corpus) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_chi = 0;
    for (const auto &c : corpus)
        for (const auto &rep : c.reports) {
            worst_chi = std::max(worst_chi, fold(rep.trailing_chi));
            worst_chi = std::max(worst_chi, fold(rep.leading_chi));
        }

    double worst_conj = 0;
    for (const auto &c : corpus) {
        const Alg alg(c.dim);
        const auto one = Series::one(alg, c.order);
        const auto id = Series::identity(alg, c.order);
        const Series conj = (one + id) * id * mul_inverse(one + id);
        worst_conj =
            std::max(worst_conj, static_cast<double>(mfs::max_deviation(conj, id).max_abs));
    }
    const bool pass = worst_chi <= 1e-8 && worst_conj <= 1e-10;
    report(6, "chi-composition diagnostics and conjugation identity", pass,
           std::max(worst_chi, worst_conj), 1e-8, elapsed(t0));
}

void criterion7_engine() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    bool exact_truncation = true;
    for (int d : {1, 2, 3}) {
        const Alg alg(d);
        mfs::Rng rng(static_cast<std::uint64_t>(9100 + d));
        const int order = 4;
        const Series f = mfs::random_series(alg, order, rng, 0.4,
                                            mfs::ConstantTermKind::WellConditioned);
        const Series g = mfs::random_series(alg, order, rng, 0.4);
        const Series h = mfs::random_series(alg, order, rng, 0.4);
        Series z = mfs::random_series(alg, order, rng, 0.4, mfs::ConstantTermKind::Zero);
        for (int o = 0; o < alg.basis_size(); ++o)
            z.component(1).coef(o, o) += Scalar(1);
        Series w = mfs::random_series(alg, order, rng, 0.4, mfs::ConstantTermKind::Zero);

        const auto dev = [&](const Series &a, const Series &b) {
            worst = std::max(worst, static_cast<double>(mfs::max_deviation(a, b).max_abs));
        };
        dev((f * g) * h, f * (g * h));
        dev(f * (g + h), f * g + f * h);
        dev((f + g) * h, f * h + g * h);
        dev(compose(compose(f, z), w), compose(f, compose(z, w)));
        dev(f * mul_inverse(f), Series::one(alg, order));
        dev(mul_inverse(f) * f, Series::one(alg, order));
        dev(compose(z, comp_inverse(z)), Series::identity(alg, order));
        dev(compose(comp_inverse(z), z), Series::identity(alg, order));

        for (int k = 0; k <= order; ++k) {
            exact_truncation = exact_truncation &&
                               (truncated(f * g, k) == truncated(f, k) * truncated(g, k));
            exact_truncation =
                exact_truncation &&
                (truncated(compose(f, z), k) == compose(truncated(f, k), truncated(z, k)));
            exact_truncation = exact_truncation &&
                               (truncated(mul_inverse(f), k) == mul_inverse(truncated(f, k)));
            if (k >= 1) // an order-0 series has no linear term to invert
                exact_truncation = exact_truncation &&
                                   (truncated(comp_inverse(z), k) == comp_inverse(truncated(z, k)));
        }
    }
    report(7, "series algebra laws and exact truncation", worst <= 1e-10 && exact_truncation,
           worst, 1e-10, elapsed(t0));
}

} // namespace

int main() {
    std::printf("acceptance: engine verification at fixed seeds\n");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Corpus> corpus = build_corpus();
    const double build_seconds = elapsed(t0);

    criterion1_twisted(corpus, build_seconds);
    criterion2_inverse_pair(corpus);
    criterion3_oracle();
    criterion4_bijection();
    criterion5_scalar();
    criterion6_diagnostics(corpus);
    criterion7_engine();

    std::printf("%s: %d of 7 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}

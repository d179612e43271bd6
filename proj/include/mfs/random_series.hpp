#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cstdint>
#include <limits>
#include <random>

#include "mfs/algebra.hpp"
#include "mfs/series.hpp"

namespace mfs {

/// Deterministic uniform source. mt19937_64 output is pinned by the standard
/// and the float conversion below is explicit, so identical seeds give
/// identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 eng_;
};

/// Element with entries uniform in the complex square [-halfwidth, halfwidth]^2.
template <typename Scalar>
ElementMatrix<Scalar> random_element(const Algebra<Scalar> &alg, Rng &rng, double halfwidth) {
    static_assert(Eigen::NumTraits<Scalar>::IsComplex,
                  "random series generation targets complex scalar types");
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    ElementMatrix<Scalar> a(alg.dim(), alg.dim());
    for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j)
            a(i, j) = Scalar(Real(rng.uniform(-halfwidth, halfwidth)),
                             Real(rng.uniform(-halfwidth, halfwidth)));
    return a;
}

template <typename Scalar>
double condition_estimate(const ElementMatrix<Scalar> &a) {
    Eigen::JacobiSVD<ElementMatrix<Scalar>> svd(a);
    const auto &s = svd.singularValues();
    const double smin = static_cast<double>(s(s.size() - 1));
    if (smin <= 0)
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(s(0)) / smin;
}

/// unit + scale * (random element), resampled until the condition estimate is
/// at most max_condition. Keeps downstream inverses well-behaved.
template <typename Scalar>
ElementMatrix<Scalar> random_well_conditioned(const Algebra<Scalar> &alg, Rng &rng,
                                              double scale, double max_condition = 1e3) {
    for (;;) {
        ElementMatrix<Scalar> a = alg.unit() + random_element(alg, rng, scale);
        if (condition_estimate(a) <= max_condition)
            return a;
    }
}

/// Random cumulant series: well-conditioned mean plus higher cumulant tensors
/// with entries uniform in the complex square [-scale, scale]^2.
template <typename Scalar>
MultiSeries<Scalar> random_cumulant_series(const Algebra<Scalar> &alg, int order, Rng &rng,
                                           double scale = 0.3) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    MultiSeries<Scalar> c(alg, order);
    c.component(0) =
        MultilinearMap<Scalar>::constant(alg, random_well_conditioned(alg, rng, scale));
    for (int n = 1; n <= order; ++n) {
        auto &coef = c.component(n).coefficients();
        for (Eigen::Index u = 0; u < coef.size(); ++u)
            coef(u) = Scalar(Real(rng.uniform(-scale, scale)), Real(rng.uniform(-scale, scale)));
    }
    return c;
}

enum class ConstantTermKind { Zero, WellConditioned, Generic };

/// Random dense series for engine property tests.
template <typename Scalar>
MultiSeries<Scalar> random_series(const Algebra<Scalar> &alg, int order, Rng &rng, double scale,
                                  ConstantTermKind ct = ConstantTermKind::Generic) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    MultiSeries<Scalar> f(alg, order);
    switch (ct) {
    case ConstantTermKind::Zero:
        break;
    case ConstantTermKind::WellConditioned:
        f.component(0) =
            MultilinearMap<Scalar>::constant(alg, random_well_conditioned(alg, rng, scale));
        break;
    case ConstantTermKind::Generic:
        f.component(0) = MultilinearMap<Scalar>::constant(alg, random_element(alg, rng, scale));
        break;
    }
    for (int n = 1; n <= order; ++n) {
        auto &coef = f.component(n).coefficients();
        for (Eigen::Index u = 0; u < coef.size(); ++u)
            coef(u) = Scalar(Real(rng.uniform(-scale, scale)), Real(rng.uniform(-scale, scale)));
    }
    return f;
}

} // namespace mfs

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mfs/algebra.hpp"
#include "mfs/errors.hpp"
#include "mfs/multilinear.hpp"

namespace mfs {

/// A multilinear function series truncated at order N: the finite sequence
/// (F_0, F_1, ..., F_N) with F_n of arity n. Values are immutable in spirit;
/// all operations below are pure functions returning fresh series. Every
/// operation is truncation-consistent: degree k of any result depends only on
/// degrees <= k of the inputs, with a fixed summation order, so recomputing at
/// a lower order reproduces the prefix bit for bit.
template <typename Scalar>
class MultiSeries {
  public:
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Matrix = ElementMatrix<Scalar>;
    using Component = MultilinearMap<Scalar>;

    MultiSeries(const Algebra<Scalar> &alg, int order) : alg_(alg) {
        if (order < 0)
            throw DegreeOutOfRange("truncation order must be nonnegative");
        comp_.reserve(static_cast<std::size_t>(order) + 1);
        for (int n = 0; n <= order; ++n)
            comp_.emplace_back(alg, n);
    }

    static MultiSeries zero(const Algebra<Scalar> &alg, int order) {
        return MultiSeries(alg, order);
    }

    /// The identity for composition: I_n(b_1,...,b_n) = delta_{n1} b_1.
    static MultiSeries identity(const Algebra<Scalar> &alg, int order) {
        MultiSeries s(alg, order);
        if (order >= 1) {
            const int D = alg.basis_size();
            for (int o = 0; o < D; ++o)
                s.comp_[1].coef(o, o) = Scalar(1);
        }
        return s;
    }

    /// The series with constant term b and nothing else.
    static MultiSeries constant(const Algebra<Scalar> &alg, const Matrix &b, int order) {
        MultiSeries s(alg, order);
        s.comp_[0] = Component::constant(alg, b);
        return s;
    }

    /// The multiplicative identity 1 (constant term = unit of B).
    static MultiSeries one(const Algebra<Scalar> &alg, int order) {
        return constant(alg, alg.unit(), order);
    }

    const Algebra<Scalar> &algebra() const { return alg_; }
    int order() const { return static_cast<int>(comp_.size()) - 1; }

    const Component &component(int n) const {
        check_degree(n);
        return comp_[static_cast<std::size_t>(n)];
    }
    Component &component(int n) {
        check_degree(n);
        return comp_[static_cast<std::size_t>(n)];
    }

    Matrix constant_term() const { return comp_[0].value(); }

    /// Composition sugar: F(G) is the series composition F o G.
    /// Function call binds tighter than operator*, which matches the
    /// convention that composition binds stronger than multiplication.
    MultiSeries operator()(const MultiSeries &inner) const;

    bool operator==(const MultiSeries &other) const {
        if (!alg_.compatible(other.alg_) || order() != other.order())
            return false;
        for (int n = 0; n <= order(); ++n)
            if (comp_[static_cast<std::size_t>(n)].coefficients() !=
                other.comp_[static_cast<std::size_t>(n)].coefficients())
                return false;
        return true;
    }

  private:
    void check_degree(int n) const {
        if (n < 0 || n > order())
            throw DegreeOutOfRange("degree " + std::to_string(n) + " exceeds truncation order " +
                                   std::to_string(order()));
    }

    Algebra<Scalar> alg_;
    std::vector<Component> comp_;
};

namespace detail {

template <typename Scalar>
void require_same_shape(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    if (!f.algebra().compatible(g.algebra()))
        throw ContextMismatch("series live over algebras of different dimension");
    if (f.order() != g.order())
        throw OrderMismatch("series have different truncation orders");
}

} // namespace detail

/// Copy of F truncated at a (possibly lower) order.
template <typename Scalar>
MultiSeries<Scalar> truncated(const MultiSeries<Scalar> &f, int order) {
    if (order > f.order())
        throw DegreeOutOfRange("cannot truncate to a higher order");
    MultiSeries<Scalar> out(f.algebra(), order);
    for (int n = 0; n <= order; ++n)
        out.component(n) = f.component(n);
    return out;
}

/// Copy of F zero-padded up to a (possibly higher) order. Padded degrees carry
/// no information; callers must not rely on them beyond exact-zero content.
template <typename Scalar>
MultiSeries<Scalar> extended(const MultiSeries<Scalar> &f, int order) {
    if (order < f.order())
        throw DegreeOutOfRange("cannot extend to a lower order");
    MultiSeries<Scalar> out(f.algebra(), order);
    for (int n = 0; n <= f.order(); ++n)
        out.component(n) = f.component(n);
    return out;
}

template <typename Scalar>
MultiSeries<Scalar> add(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    detail::require_same_shape(f, g);
    MultiSeries<Scalar> out = f;
    for (int n = 0; n <= f.order(); ++n)
        out.component(n).coefficients() += g.component(n).coefficients();
    return out;
}

template <typename Scalar>
MultiSeries<Scalar> scale(const MultiSeries<Scalar> &f, Scalar c) {
    MultiSeries<Scalar> out = f;
    for (int n = 0; n <= f.order(); ++n)
        out.component(n).coefficients() *= c;
    return out;
}

/// Cauchy-type product: (F.G)_n = sum_k F_k(b_1..b_k) G_{n-k}(b_{k+1}..b_n),
/// the outer product taken in B; truncated at the common order.
template <typename Scalar>
MultiSeries<Scalar> mul(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    detail::require_same_shape(f, g);
    MultiSeries<Scalar> out(f.algebra(), f.order());
    for (int n = 0; n <= f.order(); ++n)
        for (int k = 0; k <= n; ++k)
            detail::accumulate_product(out.component(n), f.component(k), g.component(n - k));
    return out;
}

/// Composition F o G for inner series with vanishing constant term. A constant
/// term with norm <= tol is snapped to zero; above that it is an error.
/// Degree n collects, over k >= 1 and ordered tuples p_1+...+p_k = n with
/// p_i >= 1, the insertion of G_{p_1},...,G_{p_k} into the slots of F_k.
template <typename Scalar>
MultiSeries<Scalar> compose(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    detail::require_same_shape(f, g);
    if (!g.component(0).is_zero(g.algebra().tol()))
        throw NonzeroConstantTerm("inner series of a composition must have zero constant term");

    MultiSeries<Scalar> out(f.algebra(), f.order());
    out.component(0) = f.component(0);
    std::vector<const MultilinearMap<Scalar> *> slots;
    for (int n = 1; n <= f.order(); ++n) {
        auto &target = out.component(n).coefficients();
        for (int k = 1; k <= n; ++k) {
            detail::for_each_composition(n, k, [&](const std::vector<int> &parts) {
                slots.clear();
                for (int p : parts)
                    slots.push_back(&g.component(p));
                target += detail::substitute_slots(
                    f.component(k), std::span<const MultilinearMap<Scalar> *const>(slots));
            });
        }
    }
    return out;
}

template <typename Scalar>
MultiSeries<Scalar> MultiSeries<Scalar>::operator()(const MultiSeries<Scalar> &inner) const {
    return compose(*this, inner);
}

/// Multiplicative inverse, solved degree by degree:
///   G_0 = F_0^{-1},  G_n = -F_0^{-1} sum_{k=1}^{n} F_k (x) G_{n-k}.
template <typename Scalar>
MultiSeries<Scalar> mul_inverse(const MultiSeries<Scalar> &f) {
    const auto &alg = f.algebra();
    ElementMatrix<Scalar> c0inv;
    try {
        c0inv = elem_inverse<Scalar>(f.constant_term());
    } catch (const NotInvertible &) {
        throw NotInvertible("constant term of the series is not invertible");
    }
    MultiSeries<Scalar> out(alg, f.order());
    out.component(0) = MultilinearMap<Scalar>::constant(alg, c0inv);
    for (int n = 1; n <= f.order(); ++n) {
        MultilinearMap<Scalar> acc(alg, n);
        for (int k = 1; k <= n; ++k)
            detail::accumulate_product(acc, f.component(k), out.component(n - k));
        out.component(n) = detail::scale_output_left<Scalar>(-c0inv, acc);
    }
    return out;
}

namespace detail {

// Degree-n composition terms with k >= k_min slots, for the degree-by-degree
// compositional-inverse solver (k >= 2 terms touch only lower-degree data).
template <typename Scalar>
typename MultilinearMap<Scalar>::Coefficients
compose_degree_tail(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g, int n, int k_min) {
    typename MultilinearMap<Scalar>::Coefficients acc =
        MultilinearMap<Scalar>(f.algebra(), n).coefficients();
    std::vector<const MultilinearMap<Scalar> *> slots;
    for (int k = k_min; k <= n; ++k) {
        for_each_composition(n, k, [&](const std::vector<int> &parts) {
            slots.clear();
            for (int p : parts)
                slots.push_back(&g.component(p));
            acc += substitute_slots(f.component(k),
                                    std::span<const MultilinearMap<Scalar> *const>(slots));
        });
    }
    return acc;
}

} // namespace detail

/// Compositional inverse of a series with zero constant term and invertible
/// linear part: G_1 is the matrix inverse of F_1 viewed as a D x D map, and
///   G_n = -F_1^{-1} [ sum of all k >= 2 composition terms of (F o G)_n ],
/// which involves only G_{<n}.
template <typename Scalar>
MultiSeries<Scalar> comp_inverse(const MultiSeries<Scalar> &f) {
    using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto &alg = f.algebra();
    const Eigen::Index D = alg.basis_size();
    if (!f.component(0).is_zero(alg.tol()))
        throw NonzeroConstantTerm("compositional inverse requires zero constant term");
    if (f.order() < 1)
        throw LinearTermSingular("order-0 series has no linear term to invert");

    Eigen::Map<const RowMat> f1(f.component(1).coefficients().data(), D, D);
    Eigen::PartialPivLU<ElementMatrix<Scalar>> lu(f1);
    if (detail::lu_is_singular<Scalar>(lu, f1))
        throw LinearTermSingular("linear term of the series is numerically singular");
    const ElementMatrix<Scalar> f1inv = lu.solve(ElementMatrix<Scalar>::Identity(D, D));

    MultiSeries<Scalar> out(alg, f.order());
    Eigen::Map<RowMat>(out.component(1).coefficients().data(), D, D) = f1inv;
    for (int n = 2; n <= f.order(); ++n) {
        const auto tail = detail::compose_degree_tail(f, out, n, 2);
        Eigen::Map<const RowMat> t(tail.data(), D, tail.size() / D);
        Eigen::Map<RowMat> gn(out.component(n).coefficients().data(), D, tail.size() / D);
        gn.noalias() = -f1inv * t;
    }
    return out;
}

/// Strip a leading identity factor: for H = I.K, return K of order N-1 with
/// K_{n-1}(b_2,...,b_n) = H_n(1, b_2,...,b_n). The factorization is validated
/// by reconstructing I.K at order N and comparing against H.
template <typename Scalar>
MultiSeries<Scalar> left_strip(const MultiSeries<Scalar> &h) {
    const auto &alg = h.algebra();
    if (h.order() < 1)
        throw DegreeOutOfRange("left_strip needs order >= 1");
    if (!h.component(0).is_zero(alg.tol()))
        throw NonzeroConstantTerm("left_strip input must have zero constant term");

    const int d = alg.dim();
    const Eigen::Index D = alg.basis_size();
    MultiSeries<Scalar> out(alg, h.order() - 1);
    for (int n = 1; n <= h.order(); ++n) {
        const auto &hn = h.component(n);
        auto &kn = out.component(n - 1);
        const Eigen::Index block = kn.arg_space(); // D^{n-1}
        for (int o = 0; o < D; ++o) {
            auto hrow = hn.row(o); // layout [i_1; i_2..i_n]
            for (int i = 0; i < d; ++i)
                kn.row(o) += hrow.segment((i * d + i) * block, block);
        }
    }

    const auto rebuilt = mul(MultiSeries<Scalar>::identity(alg, h.order()),
                             extended(out, h.order()));
    typename Eigen::NumTraits<Scalar>::Real dev(0);
    for (int n = 0; n <= h.order(); ++n) {
        const auto diff =
            (rebuilt.component(n).coefficients() - h.component(n).coefficients()).cwiseAbs();
        if (diff.size() > 0)
            dev = std::max(dev, diff.maxCoeff());
    }
    if (dev > alg.tol())
        throw NotLeftMultipleOfIdentity("input is not a left multiple of the identity series");
    return out;
}

/// Evaluate degree n of F on a tuple of base-algebra elements.
template <typename Scalar>
ElementMatrix<Scalar> evaluate(const MultiSeries<Scalar> &f, int n,
                               std::span<const ElementMatrix<Scalar>> args) {
    if (n < 0 || n > f.order())
        throw DegreeOutOfRange("evaluation degree exceeds truncation order");
    return f.component(n)(args);
}

template <typename Scalar>
ElementMatrix<Scalar> evaluate(const MultiSeries<Scalar> &f, int n,
                               std::initializer_list<ElementMatrix<Scalar>> args) {
    std::vector<ElementMatrix<Scalar>> v(args);
    return evaluate(f, n, std::span<const ElementMatrix<Scalar>>(v));
}

/// Where and by how much two series differ the most.
template <typename Scalar>
struct SeriesDeviation {
    typename Eigen::NumTraits<Scalar>::Real max_abs = 0;
    int degree = 0;
    Eigen::Index index = 0; // flat position within the degree's coefficient tensor
};

template <typename Scalar>
SeriesDeviation<Scalar> max_deviation(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    detail::require_same_shape(f, g);
    SeriesDeviation<Scalar> dev;
    for (int n = 0; n <= f.order(); ++n) {
        const auto diff =
            (f.component(n).coefficients() - g.component(n).coefficients()).cwiseAbs().eval();
        Eigen::Index at = 0;
        const auto m = diff.size() > 0 ? diff.maxCoeff(&at) : typename Eigen::NumTraits<Scalar>::Real(0);
        if (m > dev.max_abs) {
            dev.max_abs = m;
            dev.degree = n;
            dev.index = at;
        }
    }
    return dev;
}

/// Per-degree max deviations, up to the common order.
template <typename Scalar>
std::vector<typename Eigen::NumTraits<Scalar>::Real>
degree_deviations(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    detail::require_same_shape(f, g);
    std::vector<typename Eigen::NumTraits<Scalar>::Real> out;
    out.reserve(static_cast<std::size_t>(f.order()) + 1);
    for (int n = 0; n <= f.order(); ++n) {
        const auto diff =
            (f.component(n).coefficients() - g.component(n).coefficients()).cwiseAbs().eval();
        out.push_back(diff.size() > 0 ? diff.maxCoeff()
                                      : typename Eigen::NumTraits<Scalar>::Real(0));
    }
    return out;
}

template <typename Scalar>
bool approx_eq_series(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g,
                      typename Eigen::NumTraits<Scalar>::Real tol) {
    return max_deviation(f, g).max_abs <= tol;
}

template <typename Scalar>
MultiSeries<Scalar> operator+(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    return add(f, g);
}

template <typename Scalar>
MultiSeries<Scalar> operator*(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    return mul(f, g);
}

template <typename Scalar>
MultiSeries<Scalar> operator*(Scalar c, const MultiSeries<Scalar> &f) {
    return scale(f, c);
}

template <typename Scalar>
MultiSeries<Scalar> operator-(const MultiSeries<Scalar> &f, const MultiSeries<Scalar> &g) {
    return add(f, scale(g, Scalar(-1)));
}

} // namespace mfs

#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

#include "mfs/algebra.hpp"
#include "mfs/errors.hpp"

namespace mfs {

namespace detail {

inline Eigen::Index ipow(Eigen::Index base, int exp) {
    Eigen::Index r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

// Visit every ordered tuple (p_1,...,p_k) of positive integers with sum n.
template <typename Fn>
void for_each_composition_impl(int remaining, int pos, std::vector<int> &parts, Fn &&fn) {
    const int k = static_cast<int>(parts.size());
    if (pos == k - 1) {
        parts[pos] = remaining;
        fn(const_cast<const std::vector<int> &>(parts));
        return;
    }
    const int slots_after = k - 1 - pos;
    for (int v = 1; v + slots_after <= remaining; ++v) {
        parts[pos] = v;
        for_each_composition_impl(remaining - v, pos + 1, parts, fn);
    }
}

template <typename Fn>
void for_each_composition(int n, int k, Fn &&fn) {
    if (k < 1 || k > n)
        return;
    std::vector<int> parts(static_cast<std::size_t>(k));
    for_each_composition_impl(n, 0, parts, std::forward<Fn>(fn));
}

} // namespace detail

/// One homogeneous component F_n : B^n -> B of a multilinear function series,
/// stored as a dense coefficient tensor over the matrix-unit basis.
///
/// Layout ("o-major"): coefficient index o * D^n + flat(i_1,...,i_n) holds the
/// o-th output coefficient of F_n(e_{i_1},...,e_{i_n}); flat() is row-major
/// with i_1 slowest and i_n fastest. For n = 0 the tensor is the length-D
/// coefficient vector of the constant F_0. The block of D^n coefficients for a
/// fixed o is contiguous ("the o-row").
template <typename Scalar>
class MultilinearMap {
  public:
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Matrix = ElementMatrix<Scalar>;
    using Coefficients = Eigen::VectorX<Scalar>;

    MultilinearMap(const Algebra<Scalar> &alg, int arity)
        : alg_(alg), arity_(arity),
          coef_(Coefficients::Zero(alg.basis_size() * arg_space(alg, arity))) {
        if (arity < 0)
            throw DegreeOutOfRange("arity must be nonnegative");
    }

    /// Arity-0 component wrapping a constant element.
    static MultilinearMap constant(const Algebra<Scalar> &alg, const Matrix &value) {
        MultilinearMap m(alg, 0);
        m.coef_ = alg.coefficients(value);
        return m;
    }

    const Algebra<Scalar> &algebra() const { return alg_; }
    int arity() const { return arity_; }
    /// Number of basis tuples, D^arity.
    Eigen::Index arg_space() const { return arg_space(alg_, arity_); }

    Coefficients &coefficients() { return coef_; }
    const Coefficients &coefficients() const { return coef_; }

    auto row(int o) { return coef_.segment(o * arg_space(), arg_space()); }
    auto row(int o) const { return coef_.segment(o * arg_space(), arg_space()); }

    Scalar &coef(int o, Eigen::Index flat) { return coef_(o * arg_space() + flat); }
    Scalar coef(int o, Eigen::Index flat) const { return coef_(o * arg_space() + flat); }

    bool is_zero(Real tol = Real(0)) const {
        return coef_.size() == 0 || coef_.cwiseAbs().maxCoeff() <= tol;
    }

    /// The constant element for an arity-0 component.
    Matrix value() const {
        if (arity_ != 0)
            throw DegreeOutOfRange("value() is only defined for arity-0 components");
        return alg_.from_coefficients(coef_);
    }

    /// Multilinear extension: contract the coefficient tensor against the
    /// basis coefficients of the arguments, one slot at a time starting from
    /// the last (the fastest-varying index).
    Matrix operator()(std::span<const Matrix> args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw DegreeOutOfRange("argument count does not match arity");
        const Eigen::Index D = alg_.basis_size();
        Coefficients cur = coef_;
        for (int t = arity_; t >= 1; --t) {
            alg_.require_element(args[static_cast<std::size_t>(t - 1)]);
            const Coefficients beta = alg_.coefficients(args[static_cast<std::size_t>(t - 1)]);
            Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                m(cur.data(), cur.size() / D, D);
            cur = m * beta;
        }
        return alg_.from_coefficients(cur);
    }

    Matrix operator()(std::initializer_list<Matrix> args) const {
        std::vector<Matrix> v(args);
        return (*this)(std::span<const Matrix>(v));
    }

  private:
    static Eigen::Index arg_space(const Algebra<Scalar> &alg, int arity) {
        return detail::ipow(alg.basis_size(), arity);
    }

    Algebra<Scalar> alg_;
    int arity_;
    Coefficients coef_;
};

namespace detail {

// Accumulate the bilinear outer product of two components into a target of
// arity ka+kb. The matrix-unit structure constants e_{ij} e_{kl} = d_{jk} e_{il}
// reduce the product to d^3 Kronecker updates of contiguous o-rows:
//   out(i,l) += kron(A(i,j), B(j,l))   summed over j.
template <typename Scalar>
void accumulate_product(MultilinearMap<Scalar> &out, const MultilinearMap<Scalar> &a,
                        const MultilinearMap<Scalar> &b) {
    const int d = out.algebra().dim();
    const Eigen::Index pa = a.arg_space(), pb = b.arg_space();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto arow = a.row(i * d + j);
            for (int l = 0; l < d; ++l) {
                const auto brow = b.row(j * d + l);
                auto orow = out.row(i * d + l);
                for (Eigen::Index u = 0; u < pa; ++u)
                    orow.segment(u * pb, pb) += arow(u) * brow;
            }
        }
}

// Left/right multiplication of a component by a fixed element, acting on the
// output index only: (a . F)_n(args) = a * F_n(args).
template <typename Scalar>
MultilinearMap<Scalar> scale_output_left(const ElementMatrix<Scalar> &a,
                                         const MultilinearMap<Scalar> &f) {
    const int d = f.algebra().dim();
    MultilinearMap<Scalar> out(f.algebra(), f.arity());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l)
                out.row(i * d + l) += a(i, j) * f.row(j * d + l);
    return out;
}

// Substitute components G_{p_1},...,G_{p_k} (given as o-major tensors of
// arities p_t) into the k slots of F_k. Slots are contracted from the last to
// the first; at each step the slot index is the boundary between the not-yet-
// substituted prefix and the already-substituted tail, so the contraction is a
// strided batch of (D^{p_t} x D) * (D x D^W) products.
template <typename Scalar>
typename MultilinearMap<Scalar>::Coefficients
substitute_slots(const MultilinearMap<Scalar> &f,
                 std::span<const MultilinearMap<Scalar> *const> slots) {
    using Coefficients = typename MultilinearMap<Scalar>::Coefficients;
    using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Index D = f.algebra().basis_size();
    const int k = f.arity();

    Coefficients cur = f.coefficients();
    Eigen::Index tail = 1; // D^W, width of the already-substituted tail
    for (int t = k; t >= 1; --t) {
        const MultilinearMap<Scalar> &g = *slots[static_cast<std::size_t>(t - 1)];
        const Eigen::Index gspace = g.arg_space();
        const Eigen::Index prefixes = detail::ipow(D, t); // o plus slots 1..t-1
        Coefficients next(prefixes * gspace * tail);
        Eigen::Map<const RowMat> ghat(g.coefficients().data(), D, gspace);
        for (Eigen::Index pre = 0; pre < prefixes; ++pre) {
            Eigen::Map<const RowMat> m(cur.data() + pre * D * tail, D, tail);
            Eigen::Map<RowMat> r(next.data() + pre * gspace * tail, gspace, tail);
            r.noalias() = ghat.transpose() * m;
        }
        cur = std::move(next);
        tail *= gspace;
    }
    return cur;
}

} // namespace detail

} // namespace mfs

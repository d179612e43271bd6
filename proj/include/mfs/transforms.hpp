#pragma once

#include <string>

#include "mfs/errors.hpp"
#include "mfs/series.hpp"

namespace mfs {

/// The moment series of a variable determines its cumulant series through a
/// fixed-point identity that isolates either the first or the last argument
/// of each cumulant. Both give the same bijection; exposing the choice lets
/// callers cross-check one against the other.
enum class CumulantRecursion { FirstLetter, LastLetter };

namespace detail {

/// Right-hand side of the moment/cumulant identity:
///   FirstLetter:  C o (I + I*Phi*I) * (1 + I*Phi)
///   LastLetter:   (1 + Phi*I) * C o (I + I*Phi*I)
/// Evaluated at full order; callers truncate the inputs to control which
/// degrees feed in.
template <typename Scalar>
MultiSeries<Scalar> moment_identity_rhs(const MultiSeries<Scalar> &c,
                                        const MultiSeries<Scalar> &phi,
                                        CumulantRecursion path) {
    const auto id = MultiSeries<Scalar>::identity(c.algebra(), c.order());
    const auto one = MultiSeries<Scalar>::one(c.algebra(), c.order());
    const MultiSeries<Scalar> inner = id + id * phi * id;
    if (path == CumulantRecursion::FirstLetter)
        return c(inner) * (one + id * phi);
    return (one + phi * id) * c(inner);
}

} // namespace detail

/// Moment series from a cumulant series. Degree n of the identity's right-hand
/// side only involves moments of degree < n, so the moments fill in one degree
/// at a time.
template <typename Scalar>
MultiSeries<Scalar> moments_from_cumulants(const MultiSeries<Scalar> &c,
                                           CumulantRecursion path = CumulantRecursion::FirstLetter) {
    MultiSeries<Scalar> phi = MultiSeries<Scalar>::zero(c.algebra(), c.order());
    for (int n = 0; n <= c.order(); ++n) {
        const MultiSeries<Scalar> rhs =
            detail::moment_identity_rhs(truncated(c, n), truncated(phi, n), path);
        phi.component(n) = rhs.component(n);
    }
    return phi;
}

/// Cumulant series from a moment series: the inverse assignment. At degree n
/// the right-hand side is (C_n applied to bare arguments) + terms using only
/// cumulants of degree < n, so C_n = Phi_n - (rhs with C_n zeroed)_n.
template <typename Scalar>
MultiSeries<Scalar> cumulants_from_moments(const MultiSeries<Scalar> &phi,
                                           CumulantRecursion path = CumulantRecursion::FirstLetter) {
    MultiSeries<Scalar> c = MultiSeries<Scalar>::zero(phi.algebra(), phi.order());
    c.component(0) = phi.component(0);
    for (int n = 1; n <= phi.order(); ++n) {
        const MultiSeries<Scalar> rhs =
            detail::moment_identity_rhs(truncated(c, n), truncated(phi, n), path);
        c.component(n).coefficients() =
            phi.component(n).coefficients() - rhs.component(n).coefficients();
    }
    return c;
}

/// chi-transform: the compositional inverse of I * Phi. Requires the mean
/// Phi_0 to be invertible, since (I*Phi)_1(b) = b * Phi_0.
template <typename Scalar>
MultiSeries<Scalar> chi_transform(const MultiSeries<Scalar> &phi) {
    const auto &alg = phi.algebra();
    if (elem_is_singular(phi.constant_term()))
        throw LinearTermSingular("chi-transform requires an invertible mean (degree-0 moment)");
    const auto id = MultiSeries<Scalar>::identity(alg, phi.order());
    return comp_inverse(id * phi);
}

/// S-transform: (1 + I) * chi = I * S, i.e. S is the left-strip of
/// (1 + I) * chi. Composing with chi costs one degree, so S lives at
/// order N - 1 when Phi lives at order N.
template <typename Scalar>
MultiSeries<Scalar> s_transform(const MultiSeries<Scalar> &phi) {
    if (phi.order() < 1)
        throw OrderMismatch("s-transform needs moments at order >= 1");
    const auto &alg = phi.algebra();
    const MultiSeries<Scalar> chi = chi_transform(phi);
    const auto id = MultiSeries<Scalar>::identity(alg, phi.order());
    const auto one = MultiSeries<Scalar>::one(alg, phi.order());
    return left_strip((one + id) * chi);
}

/// S-transform straight from cumulants: I * S is the compositional inverse of
/// I * C, so S = left_strip(comp_inverse(I * C)). Also drops one degree.
template <typename Scalar>
MultiSeries<Scalar> s_from_cumulants(const MultiSeries<Scalar> &c) {
    if (c.order() < 1)
        throw OrderMismatch("s-transform needs cumulants at order >= 1");
    const auto &alg = c.algebra();
    if (elem_is_singular(c.constant_term()))
        throw LinearTermSingular("s-transform requires an invertible mean (degree-0 cumulant)");
    const auto id = MultiSeries<Scalar>::identity(alg, c.order());
    return left_strip(comp_inverse(id * c));
}

/// T-transform: the multiplicative inverse of the S-transform.
template <typename Scalar>
MultiSeries<Scalar> t_transform(const MultiSeries<Scalar> &phi) {
    return mul_inverse(s_transform(phi));
}

/// A variable handed to the engine either as moments or as cumulants.
/// Normalizes to whichever description an algorithm needs.
template <typename Scalar>
struct VariableSpec {
    enum class Kind { Moments, Cumulants };

    Kind kind;
    MultiSeries<Scalar> series;

    const Algebra<Scalar> &algebra() const { return series.algebra(); }
    int order() const { return series.order(); }

    ElementMatrix<Scalar> mean() const {
        // Degree 0 of the moment and cumulant series coincide.
        return series.constant_term();
    }

    MultiSeries<Scalar> moments(CumulantRecursion path = CumulantRecursion::FirstLetter) const {
        return kind == Kind::Moments ? series : moments_from_cumulants(series, path);
    }

    MultiSeries<Scalar> cumulants(CumulantRecursion path = CumulantRecursion::FirstLetter) const {
        return kind == Kind::Cumulants ? series : cumulants_from_moments(series, path);
    }
};

} // namespace mfs

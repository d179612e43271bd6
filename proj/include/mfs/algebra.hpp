#pragma once

#include <Eigen/Dense>

#include <complex>
#include <sstream>

#include "mfs/errors.hpp"

namespace mfs {

template <typename Scalar>
using ElementMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using DefaultScalar = std::complex<double>;

/// The base algebra of "scalars": the full matrix algebra of d x d matrices.
/// Elements are plain dense Eigen matrices; this context object fixes the
/// side length d, the induced basis of matrix units, and the default
/// comparison / zero-detection tolerance used by the series engine.
///
/// Basis convention: basis element k = e_{ij} with k = i*d + j (row-major),
/// so the coefficient vector of an element is its row-major entry list.
template <typename Scalar>
class Algebra {
  public:
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Matrix = ElementMatrix<Scalar>;

    explicit Algebra(int dim, Real tol = Real(1e-9)) : dim_(dim), tol_(tol) {
        if (dim < 1)
            throw Error("algebra dimension must be positive");
        if (!(tol >= Real(0)))
            throw Error("tolerance must be nonnegative");
    }

    int dim() const { return dim_; }
    /// Linear dimension D = d^2 of the algebra over its scalar field.
    int basis_size() const { return dim_ * dim_; }
    Real tol() const { return tol_; }

    bool compatible(const Algebra &other) const { return dim_ == other.dim_; }

    Matrix zero() const { return Matrix::Zero(dim_, dim_); }
    Matrix unit() const { return Matrix::Identity(dim_, dim_); }

    /// Matrix unit e_{ij} for basis index k = i*d + j.
    Matrix basis_element(int k) const {
        if (k < 0 || k >= basis_size())
            throw DegreeOutOfRange("basis index out of range");
        Matrix e = zero();
        e(k / dim_, k % dim_) = Scalar(1);
        return e;
    }

    /// Row-major coefficient vector of an element in the matrix-unit basis.
    Eigen::VectorX<Scalar> coefficients(const Matrix &a) const {
        require_element(a);
        Eigen::VectorX<Scalar> v(basis_size());
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                v(i * dim_ + j) = a(i, j);
        return v;
    }

    Matrix from_coefficients(const Eigen::Ref<const Eigen::VectorX<Scalar>> &v) const {
        if (v.size() != basis_size())
            throw ContextMismatch("coefficient vector has wrong length");
        Matrix a(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                a(i, j) = v(i * dim_ + j);
        return a;
    }

    void require_element(const Matrix &a) const {
        if (a.rows() != dim_ || a.cols() != dim_) {
            std::ostringstream os;
            os << "element is " << a.rows() << "x" << a.cols() << ", algebra expects "
               << dim_ << "x" << dim_;
            throw ContextMismatch(os.str());
        }
    }

  private:
    int dim_;
    Real tol_;
};

/// Checked product in the base algebra.
template <typename Scalar>
ElementMatrix<Scalar> elem_mul(const ElementMatrix<Scalar> &a, const ElementMatrix<Scalar> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw ContextMismatch("element product requires square matrices of equal size");
    return a * b;
}

namespace detail {

// Shared singularity rule: a partial-pivot LU is declared singular when some
// pivot magnitude is <= 1e-12 times the max-norm of the input. Deterministic
// per input, so callers can rely on reproducible NotInvertible behavior.
template <typename Scalar>
bool lu_is_singular(const Eigen::PartialPivLU<ElementMatrix<Scalar>> &lu,
                    const ElementMatrix<Scalar> &a) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    const Real threshold = Real(1e-12) * a.cwiseAbs().maxCoeff();
    return lu.matrixLU().diagonal().cwiseAbs().minCoeff() <= threshold;
}

} // namespace detail

/// Singularity check without computing the inverse.
template <typename Scalar>
bool elem_is_singular(const ElementMatrix<Scalar> &a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        return true;
    Eigen::PartialPivLU<ElementMatrix<Scalar>> lu(a);
    return detail::lu_is_singular(lu, a);
}

/// Inverse in the base algebra; throws NotInvertible on numerical singularity.
template <typename Scalar>
ElementMatrix<Scalar> elem_inverse(const ElementMatrix<Scalar> &a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw ContextMismatch("inverse requires a nonempty square matrix");
    Eigen::PartialPivLU<ElementMatrix<Scalar>> lu(a);
    if (detail::lu_is_singular(lu, a))
        throw NotInvertible("element is numerically singular");
    return lu.solve(ElementMatrix<Scalar>::Identity(a.rows(), a.cols()));
}

/// Entrywise comparison: true iff max |a_ij - b_ij| <= tol.
template <typename Scalar>
bool approx_eq_elem(const ElementMatrix<Scalar> &a, const ElementMatrix<Scalar> &b,
                    typename Eigen::NumTraits<Scalar>::Real tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContextMismatch("comparing elements of different shape");
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real max_abs(const ElementMatrix<Scalar> &a) {
    return a.size() == 0 ? typename Eigen::NumTraits<Scalar>::Real(0)
                         : a.cwiseAbs().maxCoeff();
}

} // namespace mfs

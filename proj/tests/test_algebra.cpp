#include <doctest.h>

#include "test_util.hpp"

using namespace testutil;

TEST_CASE("basis elements are matrix units ordered row-major") {
    const Alg alg(2);
    CHECK(alg.basis_size() == 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix e = alg.basis_element(i * 2 + j);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    CHECK(e(r, c) == ((r == i && c == j) ? Scalar(1) : Scalar(0)));
        }
    CHECK_THROWS_AS(alg.basis_element(4), mfs::DegreeOutOfRange);
    CHECK_THROWS_AS(alg.basis_element(-1), mfs::DegreeOutOfRange);
}

TEST_CASE("matrix units multiply by the structure constants") {
    const Alg alg(2);
    const Matrix e00 = alg.basis_element(0), e01 = alg.basis_element(1),
                 e11 = alg.basis_element(3);
    CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(e00, e01), e01, 0.0));
    CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(e01, e11), e01, 0.0));
    CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(e01, e01), alg.zero(), 0.0));
}

TEST_CASE("coefficient vectors list entries row-major and roundtrip") {
    const Alg alg(2);
    Matrix a(2, 2);
    a << Scalar(1, 2), Scalar(3, 4), Scalar(5, 6), Scalar(7, 8);
    const auto v = alg.coefficients(a);
    CHECK(v(0) == Scalar(1, 2));
    CHECK(v(1) == Scalar(3, 4));
    CHECK(v(2) == Scalar(5, 6));
    CHECK(v(3) == Scalar(7, 8));
    CHECK(mfs::approx_eq_elem<Scalar>(alg.from_coefficients(v), a, 0.0));
}

TEST_CASE("element shape is checked against the context") {
    const Alg alg(2);
    CHECK_THROWS_AS(alg.require_element(Matrix::Zero(3, 3)), mfs::ContextMismatch);
    CHECK_THROWS_AS(alg.coefficients(Matrix::Zero(1, 1)), mfs::ContextMismatch);
    CHECK_THROWS_AS(mfs::elem_mul<Scalar>(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                    mfs::ContextMismatch);
    CHECK_FALSE(alg.compatible(Alg(3)));
    CHECK(alg.compatible(Alg(2)));
}

TEST_CASE("inverse: exact cases and the singularity rule") {
    const Alg alg(2);
    CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_inverse<Scalar>(alg.unit()), alg.unit(), 0.0));

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = Scalar(2);
    diag(1, 1) = Scalar(4);
    const Matrix inv = mfs::elem_inverse<Scalar>(diag);
    CHECK(inv(0, 0) == Scalar(0.5));
    CHECK(inv(1, 1) == Scalar(0.25));

    CHECK_THROWS_AS(mfs::elem_inverse<Scalar>(alg.basis_element(1)), mfs::NotInvertible);
    CHECK_THROWS_AS(mfs::elem_inverse<Scalar>(alg.zero()), mfs::NotInvertible);

    // Pivot <= 1e-12 * max-norm counts as singular; above that it does not.
    Matrix nearly = Matrix::Zero(2, 2);
    nearly(0, 0) = Scalar(1);
    nearly(1, 1) = Scalar(1e-15);
    CHECK(mfs::elem_is_singular<Scalar>(nearly));
    nearly(1, 1) = Scalar(1e-9);
    CHECK_FALSE(mfs::elem_is_singular<Scalar>(nearly));
}

TEST_CASE("approximate element comparison honors the tolerance") {
    const Alg alg(2);
    const Matrix a = alg.unit();
    CHECK(mfs::approx_eq_elem<Scalar>(a, a, 0.0));
    CHECK(mfs::approx_eq_elem<Scalar>(a, a + Scalar(1e-12) * alg.basis_element(0), 1e-9));
    CHECK_FALSE(mfs::approx_eq_elem<Scalar>(alg.zero(), Scalar(1e-6) * alg.unit(), 1e-9));
    CHECK_THROWS_AS(mfs::approx_eq_elem<Scalar>(a, Matrix::Zero(3, 3), 1e-9),
                    mfs::ContextMismatch);
}

TEST_CASE("product is associative and bilinear on random elements") {
    for (int d : {1, 2, 3}) {
        const Alg alg(d);
        mfs::Rng rng(17u + static_cast<unsigned>(d));
        for (int rep = 0; rep < 25; ++rep) {
            const Matrix a = mfs::random_element(alg, rng, 1.0);
            const Matrix b = mfs::random_element(alg, rng, 1.0);
            const Matrix c = mfs::random_element(alg, rng, 1.0);
            CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(mfs::elem_mul<Scalar>(a, b), c),
                                              mfs::elem_mul<Scalar>(a, mfs::elem_mul<Scalar>(b, c)),
                                              1e-12));
            CHECK(mfs::approx_eq_elem<Scalar>(
                mfs::elem_mul<Scalar>(a + Scalar(2) * b, c),
                mfs::elem_mul<Scalar>(a, c) + Scalar(2) * mfs::elem_mul<Scalar>(b, c), 1e-12));
        }
    }
}

TEST_CASE("well-conditioned random elements invert to machine precision") {
    for (int d : {1, 2, 3}) {
        const Alg alg(d);
        mfs::Rng rng(99u + static_cast<unsigned>(d));
        for (int rep = 0; rep < 25; ++rep) {
            const Matrix a = mfs::random_well_conditioned(alg, rng, 0.3);
            const Matrix ainv = mfs::elem_inverse<Scalar>(a);
            CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(a, ainv), alg.unit(), 1e-10));
            CHECK(mfs::approx_eq_elem<Scalar>(mfs::elem_mul<Scalar>(ainv, a), alg.unit(), 1e-10));
        }
    }
}

TEST_CASE("algebra context rejects bad parameters") {
    CHECK_THROWS_AS(Alg(0), mfs::Error);
    CHECK_THROWS_AS(Alg(-2), mfs::Error);
    CHECK_THROWS_AS(Alg(2, -1.0), mfs::Error);
}

TEST_CASE("the engine instantiates for complex<float>") {
    using F = std::complex<float>;
    const mfs::Algebra<F> alg(2, 1e-5f);
    const auto a = alg.unit() + mfs::ElementMatrix<F>::Constant(2, 2, F(0.25f));
    const auto ainv = mfs::elem_inverse<F>(a);
    CHECK(mfs::approx_eq_elem<F>(mfs::elem_mul<F>(a, ainv), alg.unit(), 1e-5f));
}

#include <doctest.h>

#include <cmath>

#include "qpack/dlog.hpp"

using namespace qpack;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

PsdOp full_support_psd(Index d, std::uint64_t seed) {
    return PsdOp(Matrix(random_psd(d, seed).mat() + 0.2 * Matrix::Identity(d, d)));
}

} // namespace

TEST_CASE("closed-form derivative of the logarithm") {
    const Matrix commuting = dlog(PsdOp(diag2(1, 2)), HermitianOp(diag2(3, 1))).mat();
    CHECK(commuting(0, 0).real() == doctest::Approx(3.0));
    CHECK(commuting(1, 1).real() == doctest::Approx(0.5));

    const HermitianOp b = random_hermitian(3, 51);
    const Matrix at_identity = dlog(PsdOp(Matrix::Identity(3, 3)), b).mat();
    CHECK(max_abs(at_identity - b.mat()) <= 1e-12 * max_abs(b.mat()));

    // divided difference by hand: (ln 1 - ln e)/(1 - e) = 1/(e - 1)
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    const Matrix od = dlog(PsdOp(diag2(1, std::exp(1.0))), HermitianOp(flip)).mat();
    CHECK(od(0, 1).real() == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
    CHECK(od(0, 0).real() == doctest::Approx(0.0));

    CHECK_THROWS_AS(dlog(PsdOp(diag2(1, 0)), b), DimensionMismatch);
    CHECK_THROWS_AS(dlog(PsdOp(diag2(1, 0)), HermitianOp(flip)), SingularBase);
}

TEST_CASE("derivative facts on random instances") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Index d = 2 + static_cast<Index>(s % 7);  // up to dim 8
        const PsdOp a = full_support_psd(d, 900 + s);
        const HermitianOp b = random_hermitian(d, 950 + s);
        const Matrix closed = dlog(a, b).mat();
        const double scale = std::max(1.0, max_abs(closed));

        // identity
        CHECK(max_abs(dlog(a, HermitianOp(a.mat())).mat() - Matrix::Identity(d, d)) <= 1e-10);
        // scaling
        const Matrix scaled = dlog(PsdOp(Matrix(3.0 * a.mat())), b).mat();
        CHECK(max_abs(scaled - closed / 3.0) <= 1e-10 * scale);
        // linearity
        const HermitianOp b2 = random_hermitian(d, 990 + s);
        const Matrix lin =
            dlog(a, HermitianOp(Matrix(0.3 * b.mat() + 0.7 * b2.mat()))).mat();
        CHECK(max_abs(lin - (0.3 * closed + 0.7 * dlog(a, b2).mat())) <= 1e-10 * scale);
        // positivity
        const PsdOp bp = random_psd(d, 1990 + s);
        Eigen::SelfAdjointEigenSolver<Matrix> pos(dlog(a, HermitianOp(bp.mat())).mat(),
                                                  Eigen::EigenvaluesOnly);
        CHECK(pos.eigenvalues()(0) >= -1e-10);
        // inversion conjugation
        const Matrix isq = psd_power(a.mat(), -0.5);
        const Matrix conj =
            isq *
            dlog(PsdOp(psd_power(a.mat(), -1.0)),
                 HermitianOp(hermitize(isq * b.mat() * isq)))
                .mat() *
            isq;
        CHECK(max_abs(closed - conj) <= 1e-9 * scale);
        // quotient comparison: dlog[A+B](B) <= dlog[A](B) for PSD B
        const Matrix lhs = dlog(PsdOp(Matrix(a.mat() + bp.mat())), HermitianOp(bp.mat())).mat();
        const Matrix rhs = dlog(a, HermitianOp(bp.mat())).mat();
        Eigen::SelfAdjointEigenSolver<Matrix> cmp(rhs - lhs, Eigen::EigenvaluesOnly);
        CHECK(cmp.eigenvalues()(0) >= -1e-9);
        // norm bound
        const double r = op_norm(HermitianOp(hermitize(isq * bp.mat() * isq)));
        CHECK(op_norm(HermitianOp(dlog(a, HermitianOp(bp.mat())).mat())) <= r + 1e-9);
    }
}

TEST_CASE("resolvent quadrature agrees with the closed form") {
    QuadratureSpec q;
    const Matrix at_identity =
        dlog_lieb_quadrature(PsdOp(Matrix::Identity(2, 2)), HermitianOp(diag2(1, -1)), q).mat();
    CHECK(max_abs(at_identity - diag2(1, -1)) <= 1e-7);

    const Matrix commuting =
        dlog_lieb_quadrature(PsdOp(diag2(1, 2)), HermitianOp(diag2(3, 1)), q).mat();
    CHECK(max_abs(commuting - diag2(3, 0.5)) <= 1e-7);

    for (std::uint64_t s = 0; s < 200; ++s) {
        const Index d = 2 + static_cast<Index>(s % 5);  // dims 2..6
        const PsdOp a = full_support_psd(d, 3000 + s);
        const HermitianOp b = random_hermitian(d, 4000 + s);
        const Matrix closed = dlog(a, b).mat();
        const Matrix quad = dlog_lieb_quadrature(a, b, q).mat();
        CHECK(max_abs(quad - closed) <= 1e-6 * std::max(1.0, max_abs(closed)));
    }
}

TEST_CASE("quadrature failure carries its last iterates") {
    QuadratureSpec q;
    q.target_rel_err = 1e-16;  // unreachable
    q.max_refinements = 1;
    q.base_nodes = 16;
    const PsdOp a = full_support_psd(3, 71);
    const HermitianOp b = random_hermitian(3, 72);
    try {
        layercake(a, b, q, QuadMode::MidpointRefine);
        FAIL("expected QuadratureDidNotConverge");
    } catch (const QuadratureDidNotConverge& e) {
        CHECK(e.last.rows() == 3);
        CHECK(e.previous.rows() == 3);
        CHECK(e.gap >= 0.0);
    }
}

TEST_CASE("layer cake representation equals the closed form") {
    QuadratureSpec q;
    const Matrix commuting = layercake(PsdOp(diag2(1, 2)), HermitianOp(diag2(3, 1)), q).mat();
    CHECK(max_abs(commuting - diag2(3, 0.5)) <= 1e-10);

    const Matrix zero = layercake(full_support_psd(3, 81), HermitianOp(Matrix::Zero(3, 3)), q).mat();
    CHECK(max_abs(zero) == doctest::Approx(0.0));

    for (std::uint64_t s = 0; s < 25; ++s) {
        const Index d = 2 + static_cast<Index>(s % 3);
        const PsdOp a = full_support_psd(d, 5000 + s);
        const HermitianOp b = random_hermitian(d, 6000 + s);
        const Matrix closed = dlog(a, b).mat();
        CHECK(max_abs(layercake(a, b, q).mat() - closed) <= 1e-10);
        CHECK(max_abs(layercake(a, b, q, QuadMode::MidpointRefine).mat() - closed) <= 1e-5);
    }
}

TEST_CASE("extremal decomposition equals the integral quotient") {
    QuadratureSpec q;

    // A = 0: the projection is the identity on supp(B) for every u < 1
    const PsdOp zero(Matrix::Zero(2, 2));
    const PsdOp rank1(diag2(0.7, 0.0));
    const Matrix full = extremal_decomposition(zero, rank1, q).mat();
    CHECK(full(0, 0).real() == doctest::Approx(1.0));
    CHECK(full(1, 1).real() == doctest::Approx(0.0));

    // A = B: {u < 1-u} happens exactly for u < 1/2
    const PsdOp rho(random_density(3, 91).mat());
    const Matrix half = extremal_decomposition(rho, rho, q).mat();
    CHECK(max_abs(half - 0.5 * Matrix::Identity(3, 3)) <= 1e-10);

    for (std::uint64_t s = 0; s < 25; ++s) {
        const PsdOp a = random_psd(3, 7000 + s);
        const PsdOp b = random_psd(3, 8000 + s);
        const Matrix viaint = extremal_decomposition(a, b, q).mat();
        const Matrix closed = integral_quotient(a, b).mat();
        CHECK(max_abs(viaint - closed) <= 1e-10);
    }

    CHECK_THROWS_AS(extremal_decomposition(zero, PsdOp(Matrix::Zero(2, 2)), q), EmptySupport);
}

TEST_CASE("integral quotient basics") {
    const Matrix commuting = integral_quotient(PsdOp(diag2(1, 3)), PsdOp(diag2(2, 1))).mat();
    CHECK(commuting(0, 0).real() == doctest::Approx(2.0 / 3.0));
    CHECK(commuting(1, 1).real() == doctest::Approx(0.25));

    const PsdOp zero(Matrix::Zero(2, 2));
    const Matrix on_support = integral_quotient(zero, PsdOp(diag2(0.3, 0))).mat();
    CHECK(on_support(0, 0).real() == doctest::Approx(1.0));
    CHECK(on_support(1, 1).real() == doctest::Approx(0.0));

    // Hadamard-rotated qubit pair: Hermitian with spectrum inside [0,1]
    Matrix had(2, 2);
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    const PsdOp a(Matrix(0.5 * diag2(0.7, 0.3)));
    const PsdOp b(Matrix(0.5 * had * diag2(0.2, 0.8) * had));
    Eigen::SelfAdjointEigenSolver<Matrix> es(integral_quotient(a, b).mat(),
                                             Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues()(0) >= -1e-9);
    CHECK(es.eigenvalues()(1) <= 1.0 + 1e-9);

    // two-outcome completeness on the joint support
    for (std::uint64_t s = 0; s < 10; ++s) {
        const PsdOp x = random_psd(3, 9100 + s);
        const PsdOp y = random_psd(3, 9200 + s);
        const Matrix sum = integral_quotient(x, y).mat() + integral_quotient(y, x).mat();
        CHECK(max_abs(sum - Matrix::Identity(3, 3)) <= 1e-9);
    }
}

TEST_CASE("change of variables identity") {
    QuadratureSpec q;

    // h == 1 on a commuting pair reduces to the per-eigenvalue layer cake
    const auto flat = change_of_variables_check(PsdOp(diag2(1, 2)), PsdOp(diag2(3, 1)),
                                                ScalarFnSpec::polynomial({1.0}), q);
    CHECK(flat.gap <= 1e-7);
    CHECK(flat.lhs.mat()(0, 0).real() == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(flat.lhs.mat()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-7));

    // h(g) = g with A = I: the moment integral gives B_+^2 / 2 per eigenvalue
    const PsdOp b(diag2(0.8, 0.2));
    const auto moment = change_of_variables_check(PsdOp(Matrix::Identity(2, 2)), b,
                                                  ScalarFnSpec::power(1.0), q);
    CHECK(moment.gap <= 1e-6);
    CHECK(moment.lhs.mat()(0, 0).real() == doctest::Approx(0.5 * 0.8 * 0.8).epsilon(1e-6));
    CHECK(moment.lhs.mat()(1, 1).real() == doctest::Approx(0.5 * 0.2 * 0.2).epsilon(1e-6));

    // cubic polynomial on random pairs
    const ScalarFnSpec cubic = ScalarFnSpec::polynomial({0.2, -0.3, 0.0, 1.0});
    for (std::uint64_t s = 0; s < 10; ++s) {
        const PsdOp a = full_support_psd(3, 10000 + s);
        const PsdOp bb = random_psd(3, 11000 + s);
        CHECK(change_of_variables_check(a, bb, cubic, q).gap <= 1e-5);
    }

    // monotone sampled table
    const ScalarFnSpec tab =
        ScalarFnSpec::table({0.0, 0.3, 1.0, 3.0, 10.0}, {0.0, 0.1, 0.4, 0.8, 1.0});
    const PsdOp a = full_support_psd(3, 12001);
    const PsdOp bb = random_psd(3, 12002);
    CHECK(change_of_variables_check(a, bb, tab, q).gap <= 1e-5);
}

TEST_CASE("tracial minimum integral") {
    QuadratureSpec q;
    CHECK(tracial_min_integral(HermitianOp(diag2(1, 4)), HermitianOp(diag2(3, 2)), q) ==
          doctest::Approx(3.0).epsilon(1e-9));

    const PsdOp a = random_psd(3, 13001);
    CHECK(tracial_min_integral(a.base(), a.base(), q) ==
          doctest::Approx(a.mat().trace().real()).epsilon(1e-9));

    for (std::uint64_t s = 0; s < 20; ++s) {
        const PsdOp x = random_psd(2, 14000 + s);
        const PsdOp y = random_psd(2, 15000 + s);
        const double closed =
            0.5 * ((x.mat() + y.mat()).trace().real() -
                   trace_norm(HermitianOp(Matrix(x.mat() - y.mat()))));
        CHECK(tracial_min_integral(x.base(), y.base(), q) ==
              doctest::Approx(closed).epsilon(1e-7));
    }
}

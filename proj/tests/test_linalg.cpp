#include <doctest.h>

#include <cmath>

#include "qpack/linalg.hpp"

using namespace qpack;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("eigendecomposition basics") {
    auto es = eig_hermitian(HermitianOp(diag2(2, 1)));
    CHECK(es.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(2.0));

    auto id3 = eig_hermitian(HermitianOp(Matrix::Identity(3, 3)));
    for (int i = 0; i < 3; ++i) CHECK(id3.eigenvalues(i) == doctest::Approx(1.0));

    // characteristic polynomial of [[0,1],[1,0]] gives eigenvalues -1, 1
    auto px = eig_hermitian(HermitianOp(pauli_x()));
    CHECK(px.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(px.eigenvalues(1) == doctest::Approx(1.0));

    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(HermitianOp(bad), NonHermitianInput);
}

TEST_CASE("eigendecomposition reconstructs random instances up to dim 32") {
    for (Index d : {2, 5, 11, 32}) {
        const HermitianOp h = random_hermitian(d, 1000 + static_cast<std::uint64_t>(d));
        auto es = eig_hermitian(h);
        const Matrix rebuilt =
            es.eigenvectors * es.eigenvalues.asDiagonal() * es.eigenvectors.adjoint();
        const double scale = es.eigenvalues.cwiseAbs().maxCoeff();
        CHECK(max_abs(rebuilt - h.mat()) <= 1e-10 * scale);
        CHECK(max_abs(es.eigenvectors.adjoint() * es.eigenvectors - Matrix::Identity(d, d)) <=
              1e-10);
        for (Index i = 1; i < d; ++i) CHECK(es.eigenvalues(i) >= es.eigenvalues(i - 1));
    }
}

TEST_CASE("apply_fn powers and logs with the support convention") {
    const Matrix sq = apply_fn(HermitianOp(diag2(4, 9)), ScalarFnSpec::power(0.5)).mat();
    CHECK(sq(0, 0).real() == doctest::Approx(2.0));
    CHECK(sq(1, 1).real() == doctest::Approx(3.0));

    const Matrix inv = apply_fn(HermitianOp(diag2(2, 0)), ScalarFnSpec::power(-1.0)).mat();
    CHECK(inv(0, 0).real() == doctest::Approx(0.5));
    CHECK(inv(1, 1).real() == doctest::Approx(0.0));

    const Matrix ln = apply_fn(HermitianOp(diag2(1, std::exp(1.0))), ScalarFnSpec::ln()).mat();
    CHECK(ln(0, 0).real() == doctest::Approx(0.0));
    CHECK(ln(1, 1).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_fn(HermitianOp(diag2(1, -1)), ScalarFnSpec::ln()), DomainError);
    CHECK_THROWS_AS(apply_fn(HermitianOp(diag2(1, -1)), ScalarFnSpec::power(0.5)), DomainError);
}

TEST_CASE("apply_fn power composition on full support") {
    const PsdOp a = random_psd(4, 7);
    const HermitianOp h(Matrix(a.mat() + 0.5 * Matrix::Identity(4, 4)));
    const Matrix once = apply_fn(h, ScalarFnSpec::power(1.0)).mat();
    CHECK(max_abs(once - h.mat()) <= 1e-12 * max_abs(h.mat()));
    const Matrix two_step =
        apply_fn(apply_fn(h, ScalarFnSpec::power(0.5)), ScalarFnSpec::power(3.0)).mat();
    const Matrix direct = apply_fn(h, ScalarFnSpec::power(1.5)).mat();
    CHECK(max_abs(two_step - direct) <= 1e-10 * max_abs(direct));
}

TEST_CASE("positive part and its projection") {
    Matrix d3 = Matrix::Zero(3, 3);
    d3(0, 0) = 2;
    d3(1, 1) = -1;
    const Matrix proj = positive_part_projection(HermitianOp(d3)).mat();
    CHECK(proj(0, 0).real() == doctest::Approx(1.0));
    CHECK(proj(1, 1).real() == doctest::Approx(0.0));
    CHECK(proj(2, 2).real() == doctest::Approx(0.0));

    const Matrix none = positive_part_projection(HermitianOp(Matrix(-Matrix::Identity(2, 2)))).mat();
    CHECK(max_abs(none) == doctest::Approx(0.0));

    // rank-1 projector onto (1,1)/sqrt(2), from the eigenvectors of pauli_x
    const Matrix px = positive_part_projection(HermitianOp(pauli_x())).mat();
    CHECK(px(0, 0).real() == doctest::Approx(0.5));
    CHECK(px(0, 1).real() == doctest::Approx(0.5));
    CHECK(px(1, 1).real() == doctest::Approx(0.5));

    const Matrix pp = positive_part(HermitianOp(diag2(2, -1))).mat();
    CHECK(pp(0, 0).real() == doctest::Approx(2.0));
    CHECK(pp(1, 1).real() == doctest::Approx(0.0));

    const PsdOp psd = random_psd(3, 3);
    CHECK(max_abs(positive_part(psd.base()).mat() - psd.mat()) <= 1e-9 * max_abs(psd.mat()));

    // eigenvalues of 0.3 Z + 0.4 X are +-0.5; the positive part has trace 0.5
    const HermitianOp mix(Matrix(0.3 * pauli_z() + 0.4 * pauli_x()));
    CHECK(positive_part(mix).mat().trace().real() == doctest::Approx(0.5));
}

TEST_CASE("positive part decomposition holds for random Hermitian inputs") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const HermitianOp x = random_hermitian(4, 100 + s);
        const Matrix plus = positive_part(x).mat();
        const Matrix minus = positive_part(HermitianOp(Matrix(-x.mat()))).mat();
        CHECK(max_abs(x.mat() - (plus - minus)) <= 1e-10 * max_abs(x.mat()));
        const Matrix p = positive_part_projection(x).mat();
        const Matrix q = positive_part_projection(HermitianOp(Matrix(-x.mat()))).mat();
        CHECK(max_abs(p * q) <= 1e-10);
    }
}

TEST_CASE("norms") {
    CHECK(trace_norm(HermitianOp(diag2(3, -4))) == doctest::Approx(7.0));
    CHECK(op_norm(HermitianOp(diag2(3, -4))) == doctest::Approx(4.0));
    CHECK(trace_norm(HermitianOp(Matrix::Zero(2, 2))) == doctest::Approx(0.0));
    CHECK(trace_norm(HermitianOp(random_density(5, 9).mat())) == doctest::Approx(1.0));

    // trace_norm(A-B) splits into the two positive parts
    const HermitianOp diff(
        Matrix(random_psd(3, 21).mat() - random_psd(3, 22).mat()));
    const double split = positive_part(diff).mat().trace().real() +
                         positive_part(HermitianOp(Matrix(-diff.mat()))).mat().trace().real();
    CHECK(trace_norm(diff) == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("noncommutative minimum") {
    const Matrix m = noncommutative_min(PsdOp(diag2(1, 4)), PsdOp(diag2(3, 2))).mat();
    CHECK(m(0, 0).real() == doctest::Approx(1.0));
    CHECK(m(1, 1).real() == doctest::Approx(2.0));

    const PsdOp a = random_psd(3, 31);
    CHECK(max_abs(noncommutative_min(a, a).mat() - a.mat()) <= 1e-10 * max_abs(a.mat()));

    const PsdOp b = random_psd(3, 32);
    CHECK(max_abs(noncommutative_min(a, b).mat() - noncommutative_min(b, a).mat()) <= 1e-12);

    // Hadamard-rotated qubit pair: the trace matches the closed form
    Matrix had(2, 2);
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    const PsdOp wa(Matrix(0.5 * diag2(0.7, 0.3)));
    const PsdOp wb(Matrix(0.5 * had * diag2(0.7, 0.3) * had));
    const double lhs = noncommutative_min(wa, wb).mat().trace().real();
    const double rhs = 0.5 * ((wa.mat() + wb.mat()).trace().real() -
                              trace_norm(HermitianOp(Matrix(wa.mat() - wb.mat()))));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // Lowner order: result <= A and result <= B
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat() - noncommutative_min(a, b).mat());
    CHECK(es.eigenvalues()(0) >= -1e-10);
    CHECK_THROWS_AS(noncommutative_min(a, random_psd(4, 33)), DimensionMismatch);
}

TEST_CASE("random instance generators are seeded and well formed") {
    const Matrix one = random_density(1, 77).mat();
    CHECK(one(0, 0).real() == doctest::Approx(1.0));

    const Matrix d1 = random_density(4, 5).mat();
    const Matrix d2 = random_density(4, 5).mat();
    CHECK(max_abs(d1 - d2) == 0.0);  // bit-for-bit
    CHECK(d1.trace().real() == doctest::Approx(1.0));

    for (std::uint64_t s = 0; s < 1000; ++s) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(random_psd(2, s).mat(),
                                                 Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()(0) >= -1e-12);
    }

    const CqEnsemble ens = random_cq_ensemble(3, 2, 11);
    double total = 0.0;
    for (double p : ens.prior) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(ens.average().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("type constructors enforce their invariants") {
    CHECK_THROWS_AS(PsdOp(diag2(1, -0.5)), DomainError);
    CHECK_THROWS_AS(DensityOp(diag2(0.6, 0.6)), DomainError);
    CHECK_THROWS_AS(Projector(PsdOp(diag2(0.5, 0.5))), DomainError);
    CHECK(Projector(PsdOp(diag2(1, 0))).rank() == 1);
    CHECK_THROWS_AS(CqEnsemble({0.5, 0.4}, {random_density(2, 1), random_density(2, 2)}),
                    DomainError);
}

TEST_CASE("tensor helpers") {
    const Matrix a = random_density(2, 41).mat();
    const Matrix b = random_density(3, 42).mat();
    const Matrix ab = kron(a, b);
    CHECK(max_abs(ptrace_second(ab, 2, 3) - a) <= 1e-12);
    CHECK(max_abs(ptrace_first(ab, 2, 3) - b) <= 1e-12);

    // swapping the factors of a product permutes back
    const Matrix ba = permute_subsystems(ab, {2, 3}, {1, 0});
    CHECK(max_abs(ba - kron(b, a)) <= 1e-12);
}

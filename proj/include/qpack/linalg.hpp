#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qpack/errors.hpp"
#include "qpack/rng.hpp"

namespace qpack {

// Numerical conventions used throughout.
constexpr double kHermTolFactor = 1e-12;     // hermiticity check, relative to max |entry|
constexpr double kSupportCutoffFactor = 1e-12;  // support cutoff for negative powers / logs
constexpr double kStrictPosFactor = 1e-10;   // band treated as zero by {X > 0}
constexpr double kPsdClampFactor = 1e-10;    // eigenvalues in [-band, 0) clamp to 0
constexpr double kDividedDiffBand = 1e-8;    // |x - y| <= band * max(x,y) uses the 1/x limit

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// ---------------------------------------------------------------------------
// Tiered operator types
// ---------------------------------------------------------------------------

class HermitianOp {
public:
    explicit HermitianOp(const Matrix& m) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw DimensionMismatch("HermitianOp: matrix must be square and nonempty");
        const double scale = m.cwiseAbs().maxCoeff();
        const double drift = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (drift > kHermTolFactor * std::max(scale, 1e-300))
            throw NonHermitianInput("HermitianOp: input is not Hermitian within tolerance");
        m_ = hermitize(m);
    }

    const Matrix& mat() const { return m_; }
    Index dim() const { return m_.rows(); }

private:
    Matrix m_;
};

struct EigenSystem {
    RealVector eigenvalues;   // ascending
    Matrix eigenvectors;      // unitary, columns match eigenvalues
};

EigenSystem eig_hermitian(const HermitianOp& h);

class PsdOp {
public:
    explicit PsdOp(const HermitianOp& h);
    explicit PsdOp(const Matrix& m) : PsdOp(HermitianOp(m)) {}

    const Matrix& mat() const { return base_.mat(); }
    const HermitianOp& base() const { return base_; }
    Index dim() const { return base_.dim(); }

private:
    HermitianOp base_;
};

class DensityOp {
public:
    explicit DensityOp(const PsdOp& p);
    explicit DensityOp(const Matrix& m) : DensityOp(PsdOp(m)) {}

    const Matrix& mat() const { return base_.mat(); }
    const PsdOp& psd() const { return base_; }
    Index dim() const { return base_.dim(); }

private:
    PsdOp base_;
};

class Projector {
public:
    explicit Projector(const PsdOp& p);

    const Matrix& mat() const { return base_.mat(); }
    Index dim() const { return base_.dim(); }
    // Isometry onto the range (columns span the projected subspace).
    const Matrix& range() const { return range_; }
    Index rank() const { return range_.cols(); }

private:
    PsdOp base_;
    Matrix range_;
};

struct RngSeed {
    std::uint64_t seed = 0;
};

// Prior over a finite alphabet together with one state per letter.
struct CqEnsemble {
    std::vector<double> prior;
    std::vector<DensityOp> states;

    CqEnsemble(std::vector<double> prior_, std::vector<DensityOp> states_);

    int k() const { return static_cast<int>(states.size()); }
    Index dim() const { return states.front().dim(); }
    // Average state rho_bar = sum_x p(x) rho^x.
    Matrix average() const;
};

// ---------------------------------------------------------------------------
// Scalar functions for the functional calculus
// ---------------------------------------------------------------------------

class ScalarFnSpec {
public:
    enum class Kind { Power, Log2, Ln, Exp, Polynomial, Table };

    static ScalarFnSpec power(double p);
    static ScalarFnSpec log2();
    static ScalarFnSpec ln();
    static ScalarFnSpec exp();
    static ScalarFnSpec polynomial(std::vector<double> coeffs);  // coeffs[i] * x^i, degree <= 16
    static ScalarFnSpec table(std::vector<double> xs, std::vector<double> ys);  // xs strictly increasing

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }

    // Plain pointwise evaluation (no support logic); table interpolates
    // linearly and clamps to the end values outside its node span.
    double operator()(double x) const;

    // True when the function is only defined on the support (negative or
    // zero powers, logarithms): eigenvalues at or below the cutoff map to 0.
    bool support_restricted() const;

private:
    Kind kind_ = Kind::Power;
    double exponent_ = 1.0;
    std::vector<double> coeffs_;
    std::vector<double> xs_, ys_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// U f(Lambda) U^dagger with the support convention; see ScalarFnSpec.
HermitianOp apply_fn(const HermitianOp& h, const ScalarFnSpec& fn);

// {X > 0}: eigenvalues within +-1e-10*|X|_inf of zero count as zero.
Projector positive_part_projection(const HermitianOp& x);

// (X)_+ = X {X > 0}.
PsdOp positive_part(const HermitianOp& x);

double trace_norm(const HermitianOp& x);
double op_norm(const HermitianOp& x);

// A ^ B = (A + B - |A - B|)/2, the Lowner-order minimum.
HermitianOp noncommutative_min(const PsdOp& a, const PsdOp& b);

DensityOp random_density(Index dim, std::uint64_t seed);
PsdOp random_psd(Index dim, std::uint64_t seed);
HermitianOp random_hermitian(Index dim, std::uint64_t seed);
CqEnsemble random_cq_ensemble(int k, Index dim, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Raw-matrix helpers shared by the higher modules
// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

// Partial traces of an operator on H_A (x) H_B.
Matrix ptrace_first(const Matrix& m, Index dim_a, Index dim_b);   // trace out A
Matrix ptrace_second(const Matrix& m, Index dim_a, Index dim_b);  // trace out B

// Reorders tensor factors: perm[j] is the source position of the subsystem
// placed at position j; dims are the source subsystem dimensions.
Matrix permute_subsystems(const Matrix& m, const std::vector<Index>& dims,
                          const std::vector<int>& perm);

// f(M) for Hermitian M given a plain scalar function (no support logic).
Matrix matrix_fn(const Matrix& herm, const std::function<double(double)>& f);

// M^p for PSD M with powers taken on the support (p < 0 and p = 0 restricted).
Matrix psd_power(const Matrix& psd, double p);

// log2 on the support, zeros elsewhere.
Matrix support_log2(const Matrix& psd);

// Projection onto the strictly positive part of a Hermitian matrix.
Matrix proj_positive(const Matrix& herm);

// Orthonormal basis of the support of a PSD matrix (columns); empty when the
// matrix is numerically zero.
Matrix support_basis(const Matrix& psd);

} // namespace qpack

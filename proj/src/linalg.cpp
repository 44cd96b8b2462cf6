#include "qpack/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qpack {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve_eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    return es;
}

} // namespace

EigenSystem eig_hermitian(const HermitianOp& h) {
    auto es = solve_eig(h.mat());
    return EigenSystem{es.eigenvalues(), es.eigenvectors()};
}

PsdOp::PsdOp(const HermitianOp& h) : base_(h) {
    auto es = solve_eig(h.mat());
    RealVector lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double band = kPsdClampFactor * norm;
    if (lam(0) < -band)
        throw DomainError("PsdOp: eigenvalue " + std::to_string(lam(0)) +
                          " below the PSD tolerance band");
    if (lam(0) < 0.0) {
        for (Index i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), 0.0);
        Matrix rebuilt = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
        base_ = HermitianOp(hermitize(rebuilt));
    }
}

DensityOp::DensityOp(const PsdOp& p) : base_(p) {
    const double tr = p.mat().trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
        throw DomainError("DensityOp: trace " + std::to_string(tr) + " is not 1");
}

Projector::Projector(const PsdOp& p) : base_(p) {
    const Matrix& m = p.mat();
    const double idem = (m * m - m).cwiseAbs().maxCoeff();
    if (idem > 1e-10)
        throw DomainError("Projector: P^2 != P");
    auto es = solve_eig(m);
    std::vector<Index> kept;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (std::abs(lam) > 1e-8 && std::abs(lam - 1.0) > 1e-8)
            throw DomainError("Projector: eigenvalue not in {0,1}");
        if (lam > 0.5) kept.push_back(i);
    }
    range_.resize(m.rows(), static_cast<Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
        range_.col(static_cast<Index>(j)) = es.eigenvectors().col(kept[j]);
}

CqEnsemble::CqEnsemble(std::vector<double> prior_, std::vector<DensityOp> states_)
    : prior(std::move(prior_)), states(std::move(states_)) {
    if (prior.size() != states.size() || states.empty())
        throw DimensionMismatch("CqEnsemble: prior and states must match and be nonempty");
    double sum = 0.0;
    for (double p : prior) {
        if (p < 0.0) throw DomainError("CqEnsemble: negative prior entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw DomainError("CqEnsemble: prior sums to " + std::to_string(sum));
    const Index d = states.front().dim();
    for (const auto& s : states)
        if (s.dim() != d) throw DimensionMismatch("CqEnsemble: states on different dimensions");
}

Matrix CqEnsemble::average() const {
    Matrix avg = Matrix::Zero(dim(), dim());
    for (std::size_t x = 0; x < states.size(); ++x) avg += prior[x] * states[x].mat();
    return hermitize(avg);
}

// ---------------------------------------------------------------------------
// ScalarFnSpec
// ---------------------------------------------------------------------------

ScalarFnSpec ScalarFnSpec::power(double p) {
    ScalarFnSpec f;
    f.kind_ = Kind::Power;
    f.exponent_ = p;
    return f;
}

ScalarFnSpec ScalarFnSpec::log2() {
    ScalarFnSpec f;
    f.kind_ = Kind::Log2;
    return f;
}

ScalarFnSpec ScalarFnSpec::ln() {
    ScalarFnSpec f;
    f.kind_ = Kind::Ln;
    return f;
}

ScalarFnSpec ScalarFnSpec::exp() {
    ScalarFnSpec f;
    f.kind_ = Kind::Exp;
    return f;
}

ScalarFnSpec ScalarFnSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty() || coeffs.size() > 17)
        throw DomainError("ScalarFnSpec: polynomial degree must be in [0, 16]");
    ScalarFnSpec f;
    f.kind_ = Kind::Polynomial;
    f.coeffs_ = std::move(coeffs);
    return f;
}

ScalarFnSpec ScalarFnSpec::table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DomainError("ScalarFnSpec: table needs at least two nodes");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw DomainError("ScalarFnSpec: table nodes must increase");
    ScalarFnSpec f;
    f.kind_ = Kind::Table;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    return f;
}

double ScalarFnSpec::operator()(double x) const {
    switch (kind_) {
        case Kind::Power: return std::pow(x, exponent_);
        case Kind::Log2: return std::log2(x);
        case Kind::Ln: return std::log(x);
        case Kind::Exp: return std::exp(x);
        case Kind::Polynomial: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
            return acc;
        }
        case Kind::Table: {
            if (x <= xs_.front()) return ys_.front();
            if (x >= xs_.back()) return ys_.back();
            auto hi = std::upper_bound(xs_.begin(), xs_.end(), x);
            const std::size_t j = static_cast<std::size_t>(hi - xs_.begin());
            const double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
            return ys_[j - 1] + t * (ys_[j] - ys_[j - 1]);
        }
    }
    return 0.0;
}

bool ScalarFnSpec::support_restricted() const {
    if (kind_ == Kind::Log2 || kind_ == Kind::Ln) return true;
    return kind_ == Kind::Power && exponent_ <= 0.0;
}

// ---------------------------------------------------------------------------
// Functional calculus and positive parts
// ---------------------------------------------------------------------------

HermitianOp apply_fn(const HermitianOp& h, const ScalarFnSpec& fn) {
    auto es = solve_eig(h.mat());
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double support_cut = kSupportCutoffFactor * norm;
    const double neg_band = kPsdClampFactor * norm;

    RealVector mapped(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        const double x = lam(i);
        if (fn.support_restricted()) {
            if (x > support_cut) {
                mapped(i) = fn(x);
            } else if (x >= -neg_band) {
                mapped(i) = 0.0;  // off the support
            } else {
                throw DomainError("apply_fn: function undefined on eigenvalue " + std::to_string(x));
            }
        } else if (fn.kind() == ScalarFnSpec::Kind::Power &&
                   std::floor(fn.exponent()) != fn.exponent() && x < 0.0) {
            if (x >= -neg_band) {
                mapped(i) = 0.0;  // PSD up to floating-point noise
            } else {
                throw DomainError("apply_fn: fractional power of negative eigenvalue " +
                                  std::to_string(x));
            }
        } else {
            mapped(i) = fn(x);
        }
    }
    Matrix out = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
    return HermitianOp(hermitize(out));
}

Matrix proj_positive(const Matrix& herm) {
    auto es = solve_eig(hermitize(herm));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double cut = kStrictPosFactor * norm;
    Matrix p = Matrix::Zero(herm.rows(), herm.cols());
    for (Index i = 0; i < lam.size(); ++i)
        if (lam(i) > cut) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    return hermitize(p);
}

Projector positive_part_projection(const HermitianOp& x) {
    return Projector(PsdOp(proj_positive(x.mat())));
}

PsdOp positive_part(const HermitianOp& x) {
    auto es = solve_eig(x.mat());
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double cut = kStrictPosFactor * norm;
    RealVector mapped(lam.size());
    for (Index i = 0; i < lam.size(); ++i) mapped(i) = lam(i) > cut ? lam(i) : 0.0;
    Matrix out = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
    return PsdOp(hermitize(out));
}

double trace_norm(const HermitianOp& x) {
    auto es = solve_eig(x.mat());
    return es.eigenvalues().cwiseAbs().sum();
}

double op_norm(const HermitianOp& x) {
    auto es = solve_eig(x.mat());
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

HermitianOp noncommutative_min(const PsdOp& a, const PsdOp& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("noncommutative_min: dimension mismatch");
    const Matrix diff = a.mat() - b.mat();
    auto es = solve_eig(hermitize(diff));
    Matrix absdiff = es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() *
                     es.eigenvectors().adjoint();
    return HermitianOp(hermitize(0.5 * (a.mat() + b.mat() - absdiff)));
}

// ---------------------------------------------------------------------------
// Random instances (Ginibre construction)
// ---------------------------------------------------------------------------

namespace {

Matrix ginibre(Index dim, SplitMix64& g) {
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) {
            const double re = g.next_gaussian();
            const double im = g.next_gaussian();
            m(i, j) = Complex(re, im);
        }
    return m;
}

} // namespace

DensityOp random_density(Index dim, std::uint64_t seed) {
    SplitMix64 g(seed);
    const Matrix gin = ginibre(dim, g);
    Matrix w = gin * gin.adjoint();
    w /= w.trace().real();
    return DensityOp(hermitize(w));
}

PsdOp random_psd(Index dim, std::uint64_t seed) {
    SplitMix64 g(seed);
    const Matrix gin = ginibre(dim, g);
    return PsdOp(hermitize(gin * gin.adjoint()));
}

HermitianOp random_hermitian(Index dim, std::uint64_t seed) {
    SplitMix64 g(seed);
    const Matrix gin = ginibre(dim, g);
    return HermitianOp(hermitize(gin));
}

CqEnsemble random_cq_ensemble(int k, Index dim, std::uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<double> prior(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& p : prior) {
        p = -std::log(g.next_double_open());  // flat Dirichlet via exponentials
        sum += p;
    }
    for (auto& p : prior) p /= sum;
    std::vector<DensityOp> states;
    states.reserve(static_cast<std::size_t>(k));
    for (int x = 0; x < k; ++x) {
        const Matrix gin = ginibre(dim, g);
        Matrix w = gin * gin.adjoint();
        w /= w.trace().real();
        states.emplace_back(hermitize(w));
    }
    return CqEnsemble(std::move(prior), std::move(states));
}

// ---------------------------------------------------------------------------
// Tensor helpers
// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix ptrace_first(const Matrix& m, Index dim_a, Index dim_b) {
    if (m.rows() != dim_a * dim_b)
        throw DimensionMismatch("ptrace_first: dimension mismatch");
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Index a = 0; a < dim_a; ++a)
        out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    return out;
}

Matrix ptrace_second(const Matrix& m, Index dim_a, Index dim_b) {
    if (m.rows() != dim_a * dim_b)
        throw DimensionMismatch("ptrace_second: dimension mismatch");
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
        for (Index j = 0; j < dim_a; ++j) {
            Complex sum(0.0, 0.0);
            for (Index b = 0; b < dim_b; ++b) sum += m(i * dim_b + b, j * dim_b + b);
            out(i, j) = sum;
        }
    return out;
}

Matrix permute_subsystems(const Matrix& m, const std::vector<Index>& dims,
                          const std::vector<int>& perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n)
        throw DimensionMismatch("permute_subsystems: perm size mismatch");
    Index total = 1;
    for (Index d : dims) total *= d;
    if (m.rows() != total)
        throw DimensionMismatch("permute_subsystems: matrix size mismatch");

    // Strides of the source subsystems (row-major tensor index).
    std::vector<Index> stride(n, 1);
    for (std::size_t s = n; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::vector<Index> new_dims(n);
    for (std::size_t j = 0; j < n; ++j) new_dims[j] = dims[static_cast<std::size_t>(perm[j])];

    // map[i_new] = i_old
    std::vector<Index> map(static_cast<std::size_t>(total));
    std::vector<Index> digits(n, 0);
    for (Index idx = 0; idx < total; ++idx) {
        Index old_index = 0;
        for (std::size_t j = 0; j < n; ++j)
            old_index += digits[j] * stride[static_cast<std::size_t>(perm[j])];
        map[static_cast<std::size_t>(idx)] = old_index;
        for (std::size_t j = n; j-- > 0;) {
            if (++digits[j] < new_dims[j]) break;
            digits[j] = 0;
        }
    }

    Matrix out(total, total);
    for (Index i = 0; i < total; ++i)
        for (Index j = 0; j < total; ++j)
            out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    return out;
}

Matrix matrix_fn(const Matrix& herm, const std::function<double(double)>& f) {
    auto es = solve_eig(hermitize(herm));
    RealVector mapped(es.eigenvalues().size());
    for (Index i = 0; i < mapped.size(); ++i) mapped(i) = f(es.eigenvalues()(i));
    return hermitize(es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint());
}

Matrix psd_power(const Matrix& psd, double p) {
    auto es = solve_eig(hermitize(psd));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double cut = kSupportCutoffFactor * norm;
    RealVector mapped(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        const double x = lam(i);
        if (x <= cut) {
            mapped(i) = 0.0;
        } else {
            mapped(i) = std::pow(x, p);
        }
    }
    return hermitize(es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint());
}

Matrix support_log2(const Matrix& psd) {
    auto es = solve_eig(hermitize(psd));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double cut = kSupportCutoffFactor * norm;
    RealVector mapped(lam.size());
    for (Index i = 0; i < lam.size(); ++i)
        mapped(i) = lam(i) > cut ? std::log2(lam(i)) : 0.0;
    return hermitize(es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint());
}

Matrix support_basis(const Matrix& psd) {
    auto es = solve_eig(hermitize(psd));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double cut = kSupportCutoffFactor * norm;
    std::vector<Index> kept;
    for (Index i = 0; i < lam.size(); ++i)
        if (lam(i) > cut) kept.push_back(i);
    Matrix basis(psd.rows(), static_cast<Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
        basis.col(static_cast<Index>(j)) = es.eigenvectors().col(kept[j]);
    return basis;
}

} // namespace qpack

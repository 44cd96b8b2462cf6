#include "qpack/dlog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qpack {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; rule is symmetric).
constexpr double kGaussX[8] = {
    0.0950125098376374401853, 0.2816035507792589132304, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};
constexpr double kGaussW[8] = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

using MatFn = std::function<Matrix(double)>;

double opnorm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix gauss16(const MatFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Matrix acc;
    bool first = true;
    for (int i = 0; i < 8; ++i) {
        const Matrix lo = f(mid - half * kGaussX[i]);
        const Matrix hi = f(mid + half * kGaussX[i]);
        if (first) {
            acc = kGaussW[i] * (lo + hi);
            first = false;
        } else {
            acc += kGaussW[i] * (lo + hi);
        }
    }
    return half * acc;
}

Matrix midpoint_composite(const MatFn& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    Matrix acc = f(a + 0.5 * h);
    for (long i = 1; i < n; ++i) acc += f(a + (static_cast<double>(i) + 0.5) * h);
    return h * acc;
}

Matrix gauss_composite(const MatFn& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    Matrix acc = gauss16(f, a, a + h);
    for (long i = 1; i < n; ++i)
        acc += gauss16(f, a + static_cast<double>(i) * h, a + static_cast<double>(i + 1) * h);
    return acc;
}

// Deduplicated interior knots in (lo, hi), with the interval ends attached.
std::vector<double> make_knots(double lo, double hi, std::vector<double> interior) {
    std::vector<double> knots;
    knots.push_back(lo);
    std::sort(interior.begin(), interior.end());
    const double scale = std::max(std::abs(lo), std::abs(hi));
    for (double u : interior) {
        if (u <= lo || u >= hi) continue;
        if (!knots.empty() && u - knots.back() < 1e-13 * std::max(scale, 1.0)) continue;
        knots.push_back(u);
    }
    if (hi - knots.back() < 1e-13 * std::max(scale, 1.0)) knots.back() = hi;
    else knots.push_back(hi);
    return knots;
}

// Composite quadrature with dyadic refinement.  Knots carry the spectral
// jump points, so every panel has a smooth (for commuting pairs, constant)
// integrand.  Successive levels must agree to rel_tol in operator norm.
Matrix integrate_refine(const MatFn& f, const std::vector<double>& knots, bool midpoint,
                        long base_nodes, int max_refinements, double rel_tol, const char* what) {
    const std::size_t npanels = knots.size() - 1;
    if (npanels == 0) throw DomainError(std::string(what) + ": empty integration range");
    const long per_panel_base =
        std::max<long>(1, base_nodes / static_cast<long>((midpoint ? 1 : 16) * npanels));

    Matrix prev, second_prev;
    bool have_prev = false;
    double last_gap = 0.0;
    for (int level = 0; level <= max_refinements; ++level) {
        const long n = per_panel_base << level;
        Matrix total;
        for (std::size_t p = 0; p < npanels; ++p) {
            Matrix part = midpoint ? midpoint_composite(f, knots[p], knots[p + 1], n)
                                   : gauss_composite(f, knots[p], knots[p + 1], n);
            if (p == 0) total = part;
            else total += part;
        }
        if (have_prev) {
            last_gap = opnorm(total - prev);
            if (last_gap <= rel_tol * std::max(opnorm(total), 1e-300)) return total;
        }
        second_prev = prev;
        prev = total;
        have_prev = true;
    }
    throw QuadratureDidNotConverge(std::string(what) + ": refinement budget exhausted", prev,
                                   second_prev, last_gap);
}

// Eigen pieces of a strictly positive base.
struct PosBase {
    RealVector lam;
    Matrix vecs;
    Matrix inv_sqrt;
};

PosBase pos_base(const Matrix& a, const char* what) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    if (lam(0) <= kSupportCutoffFactor * norm || norm == 0.0)
        throw SingularBase(std::string(what) + ": base operator must be positive definite");
    RealVector inv_sqrt_lam(lam.size());
    for (Index i = 0; i < lam.size(); ++i) inv_sqrt_lam(i) = 1.0 / std::sqrt(lam(i));
    Matrix inv_sqrt =
        es.eigenvectors() * inv_sqrt_lam.asDiagonal() * es.eigenvectors().adjoint();
    return PosBase{lam, es.eigenvectors(), hermitize(inv_sqrt)};
}

double divided_diff_log(double x, double y) {
    if (std::abs(x - y) <= kDividedDiffBand * std::max(x, y))
        return 2.0 / (x + y);  // symmetric form of the equal-eigenvalue limit 1/x
    return std::log1p((x - y) / y) / (x - y);
}

Matrix dlog_raw(const RealVector& lam, const Matrix& vecs, const Matrix& b) {
    const Matrix bt = vecs.adjoint() * b * vecs;
    Matrix out(bt.rows(), bt.cols());
    for (Index i = 0; i < bt.rows(); ++i)
        for (Index j = 0; j < bt.cols(); ++j)
            out(i, j) = divided_diff_log(lam(i), lam(j)) * bt(i, j);
    return hermitize(vecs * out * vecs.adjoint());
}

// Real generalized eigenvalues of the Hermitian pencil (B, A), i.e. the u
// with det(B - uA) = 0, via the realified QZ problem.
std::vector<double> pencil_real_eigs(const Matrix& b, const Matrix& a) {
    const Index d = b.rows();
    Eigen::MatrixXd br(2 * d, 2 * d), ar(2 * d, 2 * d);
    br << b.real(), -b.imag(), b.imag(), b.real();
    ar << a.real(), -a.imag(), a.imag(), a.real();
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
    ges.compute(br, ar, false);
    std::vector<double> out;
    for (Index i = 0; i < ges.alphas().size(); ++i) {
        const double beta = ges.betas()(i);
        if (std::abs(beta) < 1e-12) continue;  // eigenvalue at infinity
        const Complex lam = ges.alphas()(i) / beta;
        if (std::abs(lam.imag()) <= 1e-8 * (1.0 + std::abs(lam.real())))
            out.push_back(lam.real());
    }
    return out;
}

} // namespace

HermitianOp dlog(const PsdOp& a, const HermitianOp& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("dlog: dimension mismatch");
    const PosBase base = pos_base(a.mat(), "dlog");
    return HermitianOp(dlog_raw(base.lam, base.vecs, b.mat()));
}

HermitianOp dlog_lieb_quadrature(const PsdOp& a, const HermitianOp& b, const QuadratureSpec& q) {
    if (a.dim() != b.dim()) throw DimensionMismatch("dlog_lieb_quadrature: dimension mismatch");
    q.validate();
    pos_base(a.mat(), "dlog_lieb_quadrature");  // positivity check only
    const Matrix& am = a.mat();
    const Matrix& bm = b.mat();
    const Matrix eye = Matrix::Identity(am.rows(), am.cols());
    // t = s/(1-s) turns the resolvent integrand into M(s)^{-1} B M(s)^{-1}
    // with M(s) = (1-s)A + sI, smooth on [0,1].
    const MatFn integrand = [&](double s) {
        const Matrix m = (1.0 - s) * am + s * eye;
        const Matrix minv = m.inverse();
        return hermitize(minv * bm * minv);
    };
    const std::vector<double> knots = {0.0, 1.0};
    Matrix out = integrate_refine(integrand, knots, /*midpoint=*/false, q.base_nodes,
                                  q.max_refinements, q.target_rel_err, "dlog_lieb_quadrature");
    return HermitianOp(hermitize(out));
}

HermitianOp layercake(const PsdOp& a, const HermitianOp& b, const QuadratureSpec& q,
                      QuadMode mode) {
    if (a.dim() != b.dim()) throw DimensionMismatch("layercake: dimension mismatch");
    q.validate();
    const PosBase base = pos_base(a.mat(), "layercake");
    const Matrix delta = hermitize(base.inv_sqrt * b.mat() * base.inv_sqrt);
    Eigen::SelfAdjointEigenSolver<Matrix> des(delta, Eigen::EigenvaluesOnly);
    const RealVector mu = des.eigenvalues();
    const double auto_r = mu.cwiseAbs().maxCoeff();
    const double r = q.truncation_radius.value_or(auto_r);
    const Index d = a.dim();
    if (r <= 0.0) return HermitianOp(Matrix::Zero(d, d));

    const Matrix& am = a.mat();
    const Matrix& bm = b.mat();
    const bool midpoint = (mode == QuadMode::MidpointRefine);
    const double tol = midpoint ? q.target_rel_err : std::min(q.target_rel_err, 3e-13);
    const int refinements = midpoint ? q.max_refinements : std::max(q.max_refinements, 16);

    Matrix total = Matrix::Zero(d, d);
    std::vector<double> pos_jumps, neg_jumps;
    for (Index i = 0; i < mu.size(); ++i) {
        if (mu(i) > 0.0) pos_jumps.push_back(mu(i));
        if (mu(i) < 0.0) neg_jumps.push_back(mu(i));
    }
    if (!pos_jumps.empty() || r > 0.0) {
        const MatFn f = [&](double u) { return proj_positive(bm - u * am); };
        total += integrate_refine(f, make_knots(0.0, r, pos_jumps), midpoint, q.base_nodes,
                                  refinements, tol, "layercake(+)");
    }
    if (!neg_jumps.empty()) {
        const MatFn f = [&](double u) { return proj_positive(u * am - bm); };
        total -= integrate_refine(f, make_knots(-r, 0.0, neg_jumps), midpoint, q.base_nodes,
                                  refinements, tol, "layercake(-)");
    }
    return HermitianOp(hermitize(total));
}

HermitianOp extremal_decomposition(const PsdOp& a, const PsdOp& b, const QuadratureSpec& q,
                                   QuadMode mode) {
    if (a.dim() != b.dim()) throw DimensionMismatch("extremal_decomposition: dimension mismatch");
    q.validate();
    const Matrix s = hermitize(a.mat() + b.mat());
    const Matrix basis = support_basis(s);
    if (basis.cols() == 0) throw EmptySupport("extremal_decomposition: A + B has empty support");

    // Work on supp(A+B), where the compressed sum is positive definite.
    const Matrix sc = hermitize(basis.adjoint() * s * basis);
    const Matrix ac = hermitize(basis.adjoint() * a.mat() * basis);
    const Matrix bc = hermitize(basis.adjoint() * b.mat() * basis);
    const PosBase sb = pos_base(sc, "extremal_decomposition");
    const Matrix delta = hermitize(sb.inv_sqrt * bc * sb.inv_sqrt);
    Eigen::SelfAdjointEigenSolver<Matrix> des(delta, Eigen::EigenvaluesOnly);
    std::vector<double> jumps;
    for (Index i = 0; i < des.eigenvalues().size(); ++i) jumps.push_back(des.eigenvalues()(i));

    // {uA < (1-u)B} = {B - u(A+B) > 0} on the working space.
    const MatFn f = [&](double u) { return proj_positive(bc - u * sc); };
    const bool midpoint = (mode == QuadMode::MidpointRefine);
    const double tol = midpoint ? q.target_rel_err : std::min(q.target_rel_err, 3e-13);
    const int refinements = midpoint ? q.max_refinements : std::max(q.max_refinements, 16);
    Matrix core = integrate_refine(f, make_knots(0.0, 1.0, jumps), midpoint, q.base_nodes,
                                   refinements, tol, "extremal_decomposition");
    return HermitianOp(hermitize(basis * core * basis.adjoint()));
}

HermitianOp integral_quotient(const PsdOp& a, const PsdOp& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("integral_quotient: dimension mismatch");
    const Matrix s = hermitize(a.mat() + b.mat());
    if (support_basis(s).cols() == 0)
        throw EmptySupport("integral_quotient: A + B has empty support");
    return HermitianOp(dlog_on_support(s, b.mat()));
}

Matrix dlog_on_support(const Matrix& base_psd, const Matrix& direction) {
    const Matrix basis = support_basis(base_psd);
    const Index d = base_psd.rows();
    if (basis.cols() == 0) return Matrix::Zero(d, d);
    const Matrix sc = hermitize(basis.adjoint() * base_psd * basis);
    const Matrix bc = hermitize(basis.adjoint() * direction * basis);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sc);
    const Matrix core = dlog_raw(es.eigenvalues(), es.eigenvectors(), bc);
    return hermitize(basis * core * basis.adjoint());
}

ChangeOfVariablesResult change_of_variables_check(const PsdOp& a, const PsdOp& b,
                                                  const ScalarFnSpec& h, const QuadratureSpec& q) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("change_of_variables_check: dimension mismatch");
    q.validate();
    const PosBase base = pos_base(a.mat(), "change_of_variables_check");
    const Matrix delta = hermitize(base.inv_sqrt * b.mat() * base.inv_sqrt);
    Eigen::SelfAdjointEigenSolver<Matrix> des(delta, Eigen::EigenvaluesOnly);
    const double r = q.truncation_radius.value_or(des.eigenvalues().cwiseAbs().maxCoeff());
    const Index d = a.dim();
    const Matrix& am = a.mat();
    const Matrix& bm = b.mat();

    Matrix lhs;
    if (r <= 0.0) {
        lhs = Matrix::Zero(d, d);
    } else {
        std::vector<double> jumps;
        for (Index i = 0; i < des.eigenvalues().size(); ++i)
            if (des.eigenvalues()(i) > 0.0) jumps.push_back(des.eigenvalues()(i));
        const MatFn f = [&](double gamma) {
            return Matrix(h(gamma) * proj_positive(bm - gamma * am));
        };
        lhs = integrate_refine(f, make_knots(0.0, r, jumps), /*midpoint=*/false, q.base_nodes,
                               q.max_refinements, q.target_rel_err, "change_of_variables lhs");
    }

    // Resolvent side, compactified by t = s/(1-s):
    //   integrand(s) = M^{-1/2} G h((1-s) G) M^{-1/2},
    // with M(s) = (1-s)A + sI and G = M^{-1/2} B M^{-1/2}.
    const Matrix eye = Matrix::Identity(d, d);
    const MatFn rhs_fn = [&](double s) {
        const Matrix m = (1.0 - s) * am + s * eye;
        Eigen::SelfAdjointEigenSolver<Matrix> mes(m);
        RealVector inv_sqrt_lam(mes.eigenvalues().size());
        for (Index i = 0; i < inv_sqrt_lam.size(); ++i)
            inv_sqrt_lam(i) = 1.0 / std::sqrt(mes.eigenvalues()(i));
        const Matrix minv_sqrt = mes.eigenvectors() * inv_sqrt_lam.asDiagonal() *
                                 mes.eigenvectors().adjoint();
        const Matrix g = hermitize(minv_sqrt * bm * minv_sqrt);
        const Matrix hq = matrix_fn((1.0 - s) * g, [&](double x) { return h(x); });
        return hermitize(minv_sqrt * (g * hq) * minv_sqrt);
    };
    Matrix rhs = integrate_refine(rhs_fn, {0.0, 1.0}, /*midpoint=*/false, q.base_nodes,
                                  q.max_refinements, q.target_rel_err, "change_of_variables rhs");

    const double gap = opnorm(lhs - rhs) / std::max(1.0, opnorm(lhs));
    return ChangeOfVariablesResult{HermitianOp(lhs), HermitianOp(rhs), gap};
}

double tracial_min_integral(const HermitianOp& a, const HermitianOp& b, const QuadratureSpec& q) {
    if (a.dim() != b.dim()) throw DimensionMismatch("tracial_min_integral: dimension mismatch");
    q.validate();
    const Matrix& am = a.mat();
    const Matrix& bm = b.mat();
    const std::vector<double> jumps = pencil_real_eigs(bm, am);
    const MatFn f = [&](double u) {
        Matrix scalar(1, 1);
        scalar(0, 0) = (am * proj_positive(bm - u * am)).trace().real();
        return scalar;
    };
    Matrix out = integrate_refine(f, make_knots(0.0, 1.0, jumps), /*midpoint=*/false,
                                  q.base_nodes, std::max(q.max_refinements, 16),
                                  std::min(q.target_rel_err, 1e-10), "tracial_min_integral");
    return out(0, 0).real();
}

} // namespace qpack

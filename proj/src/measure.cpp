#include "qpack/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpack/dlog.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_re(const Matrix& m) { return m.trace().real(); }

double min_eigenvalue(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(herm), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

} // namespace

Povm::Povm(std::vector<PsdOp> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw DimensionMismatch("Povm: needs at least one effect");
    const Index d = effects_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : effects_) {
        if (e.dim() != d) throw DimensionMismatch("Povm: effects on different dimensions");
        sum += e.mat();
    }
    const double excess = -min_eigenvalue(Matrix::Identity(d, d) - sum);
    if (excess > 1e-9) throw DomainError("Povm: effects sum exceeds the identity");
}

double helstrom_error(const PsdOp& a, const PsdOp& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("helstrom_error: dimension mismatch");
    const double total = trace_re(a.mat()) + trace_re(b.mat());
    const double dist = trace_norm(HermitianOp(Matrix(a.mat() - b.mat())));
    return 0.5 * (total - dist);
}

HelstromTest helstrom_test(const PsdOp& a, const PsdOp& b, double delta) {
    if (a.dim() != b.dim()) throw DimensionMismatch("helstrom_test: dimension mismatch");
    if (delta < 0.0 || delta > 1.0) throw DomainError("helstrom_test: delta must be in [0,1]");
    const Matrix diff = a.mat() - b.mat();
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(diff));
    const RealVector& lam = es.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const double band = kStrictPosFactor * norm;
    Matrix t = Matrix::Zero(a.dim(), a.dim());
    for (Index i = 0; i < lam.size(); ++i) {
        const Matrix outer = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        if (lam(i) > band) t += outer;
        else if (lam(i) >= -band) t += delta * outer;
    }
    return HelstromTest{PsdOp(hermitize(t)), delta};
}

double binary_test_error(const PsdOp& a, const PsdOp& b, const Matrix& test) {
    const Matrix eye = Matrix::Identity(a.dim(), a.dim());
    return trace_re(a.mat() * (eye - test)) + trace_re(b.mat() * test);
}

ChernoffResult chernoff_bound(const PsdOp& a, const PsdOp& b,
                              const std::vector<double>& alpha_grid) {
    if (a.dim() != b.dim()) throw DimensionMismatch("chernoff_bound: dimension mismatch");
    std::vector<double> grid = alpha_grid;
    if (grid.empty()) {
        grid.resize(101);
        for (int i = 0; i <= 100; ++i) grid[static_cast<std::size_t>(i)] = i / 100.0;
    }
    double best = kInf;
    double best_alpha = grid.front();
    for (double alpha : grid) {
        const double v =
            trace_re(psd_power(a.mat(), alpha) * psd_power(b.mat(), 1.0 - alpha));
        if (v < best) {
            best = v;
            best_alpha = alpha;
        }
    }
    return ChernoffResult{best, best_alpha};
}

namespace {

// S = sum_x (p(x) rho^x)^alpha and the weighted powers, shared by both PGMs.
struct PgmParts {
    std::vector<Matrix> powered;
    Matrix sum;
};

PgmParts pgm_parts(const CqEnsemble& ens, double alpha) {
    if (alpha <= 0.0) throw DomainError("pgm: alpha must be > 0");
    PgmParts parts;
    parts.sum = Matrix::Zero(ens.dim(), ens.dim());
    parts.powered.reserve(static_cast<std::size_t>(ens.k()));
    for (int x = 0; x < ens.k(); ++x) {
        Matrix w = psd_power(ens.prior[static_cast<std::size_t>(x)] *
                                 ens.states[static_cast<std::size_t>(x)].mat(),
                             alpha);
        parts.sum += w;
        parts.powered.push_back(std::move(w));
    }
    return parts;
}

} // namespace

Povm conventional_pgm(const CqEnsemble& ens, double alpha) {
    PgmParts parts = pgm_parts(ens, alpha);
    const Matrix inv_sqrt = psd_power(parts.sum, -0.5);
    std::vector<PsdOp> effects;
    effects.reserve(parts.powered.size());
    for (const auto& w : parts.powered)
        effects.emplace_back(hermitize(inv_sqrt * w * inv_sqrt));
    return Povm(std::move(effects));
}

Povm integral_pgm(const CqEnsemble& ens, double alpha) {
    PgmParts parts = pgm_parts(ens, alpha);
    std::vector<PsdOp> effects;
    effects.reserve(parts.powered.size());
    for (const auto& w : parts.powered)
        effects.emplace_back(dlog_on_support(parts.sum, w));
    return Povm(std::move(effects));
}

double povm_error(const CqEnsemble& ens, const Povm& m, const std::vector<int>& labels) {
    std::vector<int> map = labels;
    if (map.empty()) {
        if (m.size() != static_cast<std::size_t>(ens.k()))
            throw LabelMismatch("povm_error: one effect per letter required");
        map.resize(static_cast<std::size_t>(ens.k()));
        for (int x = 0; x < ens.k(); ++x) map[static_cast<std::size_t>(x)] = x;
    }
    if (map.size() != static_cast<std::size_t>(ens.k()))
        throw LabelMismatch("povm_error: label map size mismatch");
    double success = 0.0;
    for (int x = 0; x < ens.k(); ++x) {
        const int eff = map[static_cast<std::size_t>(x)];
        if (eff < 0 || eff >= static_cast<int>(m.size()))
            throw LabelMismatch("povm_error: label out of range");
        success += ens.prior[static_cast<std::size_t>(x)] *
                   trace_re(ens.states[static_cast<std::size_t>(x)].mat() *
                            m.effects()[static_cast<std::size_t>(eff)].mat());
    }
    return 1.0 - success;
}

CollisionQuantities collision_quantities(const CqEnsemble& ens) {
    const Matrix avg = ens.average();
    const Matrix quarter_inv = psd_power(avg, -0.25);
    double sandwiched = 0.0;
    double integral = 0.0;
    for (int x = 0; x < ens.k(); ++x) {
        const double p = ens.prior[static_cast<std::size_t>(x)];
        const Matrix& rho = ens.states[static_cast<std::size_t>(x)].mat();
        const Matrix tilted = quarter_inv * rho * quarter_inv;
        sandwiched += p * p * trace_re(tilted * tilted);
        integral += p * p * trace_re(rho * dlog_on_support(avg, rho));
    }
    return CollisionQuantities{sandwiched, integral};
}

double tilting_c1(double alpha) {
    if (alpha < 0.5 || alpha > 1.0) throw DomainError("tilting_c1: alpha must be in [1/2,1]");
    const double x = (1.0 - alpha) / alpha;
    if (x == 0.0) return 1.0;   // alpha = 1 limit
    if (x >= 1.0) return kInf;  // alpha = 1/2 endpoint
    return x * M_PI / std::sin(x * M_PI);
}

double tilting_c2(double alpha) {
    if (alpha < 0.5 || alpha > 1.0) throw DomainError("tilting_c2: alpha must be in [1/2,1]");
    if (alpha == 1.0) return kInf;
    if (alpha == 0.5) return 1.0;  // kappa_{1/2} := 1
    const double kappa =
        std::pow(2.0 * alpha, -1.0 / alpha) * std::pow(1.0 - 0.5 / alpha, 2.0 - 1.0 / alpha);
    return kappa * alpha / (1.0 - alpha);
}

double tilting_c(double alpha) { return std::min(tilting_c1(alpha), tilting_c2(alpha)); }

TiltingReport tilting_report(const PsdOp& a, const PsdOp& b, double alpha) {
    if (a.dim() != b.dim()) throw DimensionMismatch("tilting_report: dimension mismatch");
    if (alpha < 0.5 || alpha > 1.0)
        throw DomainError("tilting_report: alpha must be in [1/2,1]");
    const Matrix a_pow = psd_power(a.mat(), alpha);
    const Matrix b_pow = psd_power(b.mat(), alpha);
    const double lhs = trace_re(a.mat() * dlog_on_support(a_pow + b_pow, b_pow));
    const double rhs_core = trace_re(a_pow * psd_power(b.mat(), 1.0 - alpha));
    const double c1 = tilting_c1(alpha);
    const double c2 = tilting_c2(alpha);
    const double c = std::min(c1, c2);
    return TiltingReport{alpha, lhs, rhs_core, c1, c2, c, c * rhs_core - lhs};
}

CAlphaSup c_alpha_sup() {
    double lo = 0.5, hi = 1.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = tilting_c(x1), f2 = tilting_c(x2);
    while (hi - lo > 1e-12) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = tilting_c(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = tilting_c(x1);
        }
    }
    const double alpha = 0.5 * (lo + hi);
    return CAlphaSup{alpha, tilting_c(alpha)};
}

// ---------------------------------------------------------------------------
// Randomized inequality suite
// ---------------------------------------------------------------------------

namespace {

struct TrialMargins {
    double audenaert;
    double araki_generic;
    double araki_quotient;
    double beigi_tomamichel;
    double operator_jensen;
    double trace_min;
    double collision_gap;
    double renyi_monotone;
};

TrialMargins run_trial(std::uint64_t seed, const std::vector<Index>& dims) {
    SplitMix64 g(seed);
    const Index d = dims[static_cast<std::size_t>(g.next() % dims.size())];
    const double alpha = 0.5 + 0.5 * g.next_double();
    const PsdOp a = random_psd(d, g.next());
    const PsdOp b = random_psd(d, g.next());
    const Matrix eye = Matrix::Identity(d, d);

    TrialMargins m{};

    // (a) Tr[A {A^a < B^a}] <= Tr[A^a B^(1-a) {A^a < B^a}]
    {
        const Matrix a_pow = psd_power(a.mat(), alpha);
        const Matrix b_pow = psd_power(b.mat(), alpha);
        const Matrix proj = proj_positive(b_pow - a_pow);
        const double lhs = trace_re(a.mat() * proj);
        const double rhs = trace_re(a_pow * psd_power(b.mat(), 1.0 - alpha) * proj);
        m.audenaert = rhs - lhs;
    }

    // (b) generic monotone-g Araki form: X positive definite, s in [0,1],
    // g(x) = x^{-s} e^{-x} so that x^s g(x) is nonincreasing.
    {
        const double s = g.next_double();
        const Matrix x = a.mat() + 0.1 * trace_re(a.mat()) / static_cast<double>(d) * eye;
        const Matrix y = b.mat();
        const Matrix gx =
            matrix_fn(x, [&](double t) { return std::pow(t, -s) * std::exp(-t); });
        const Matrix x_half = psd_power(x, 0.5);
        const double lhs = trace_re(gx * psd_power(x_half * y * x_half, s));
        const double rhs = trace_re(gx * psd_power(x, s) * psd_power(y, s));
        m.araki_generic = rhs - lhs;
    }

    // (b') the quotient instance from the tilting bound: X = (tI + A^a)^{-1},
    // g(x) = x^(1-1/a) (1 - t x)^(1/a), s = 1/a - 1.
    {
        const double t = 0.25 + 2.75 * g.next_double();
        const double s = 1.0 / alpha - 1.0;
        const Matrix a_pow = psd_power(a.mat(), alpha);
        const Matrix c = (a_pow + t * eye).inverse();
        const Matrix gc = hermitize(a.mat() * c);  // commuting functions of A
        const Matrix c_half = psd_power(hermitize(c), 0.5);
        const Matrix y = psd_power(b.mat(), alpha);
        const double lhs = trace_re(gc * psd_power(c_half * y * c_half, s));
        const double rhs = trace_re(gc * psd_power(hermitize(c), s) * psd_power(y, s));
        m.araki_quotient = rhs - lhs;
    }

    // (c) dlog[A+B](B) <= dlog[A](B) for positive definite A
    {
        const Matrix a_pd = a.mat() + 0.05 * eye;
        const Matrix lhs = dlog_on_support(a_pd + b.mat(), b.mat());
        const Matrix rhs = dlog_on_support(a_pd, b.mat());
        m.beigi_tomamichel = min_eigenvalue(rhs - lhs);
    }

    // (d) operator Jensen, trace form on a bipartite system
    {
        const Index da = 2;
        const PsdOp y_ab = random_psd(da * d, g.next());
        const DensityOp tau = random_density(d, g.next());
        const double e = (1.0 - alpha) / alpha;
        const Matrix tau_alpha = kron(Matrix::Identity(da, da), psd_power(tau.mat(), alpha));
        const Matrix lhs = ptrace_second(tau_alpha * psd_power(y_ab.mat(), e), da, d);
        const Matrix tau_rest =
            kron(Matrix::Identity(da, da), psd_power(tau.mat(), 1.0 - alpha));
        const Matrix inner = ptrace_second(y_ab.mat() * tau_rest, da, d);
        const Matrix rhs = psd_power(hermitize(inner), e);
        m.operator_jensen = min_eigenvalue(rhs - hermitize(lhs));
    }

    // (e) Tr[A * B/(A+B)] <= Tr[A ^ B]
    {
        const double lhs = trace_re(a.mat() * dlog_on_support(a.mat() + b.mat(), b.mat()));
        m.trace_min = helstrom_error(a, b) - lhs;
    }

    // collision quantities: sandwiched >= integral
    {
        const CqEnsemble ens = random_cq_ensemble(2 + static_cast<int>(g.next() % 2), d, g.next());
        const CollisionQuantities q2 = collision_quantities(ens);
        m.collision_gap = q2.sandwiched - q2.integral;
    }

    // Renyi monotonicity in the order, on unit-trace pairs
    {
        const DensityOp rho = random_density(d, g.next());
        const DensityOp sig = random_density(d, g.next());
        const double a1 = 0.1 + 0.8 * g.next_double();
        const double a2 = a1 + (1.0 - a1) * g.next_double();
        const double d1 = petz_divergence(rho.psd(), sig.psd(), RenyiOrder(a1));
        const double d2 = petz_divergence(rho.psd(), sig.psd(), RenyiOrder(a2));
        m.renyi_monotone = d2 - d1;
    }

    return m;
}

} // namespace

InequalityReport inequality_suite(std::uint64_t seed, int trials, const std::vector<Index>& dims,
                                  int threads) {
    if (trials < 1) throw DomainError("inequality_suite: trials must be >= 1");
    if (dims.empty()) throw DomainError("inequality_suite: dims must be nonempty");

    std::vector<TrialMargins> margins(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](long i) {
        margins[static_cast<std::size_t>(i)] =
            run_trial(SplitMix64::derive(seed, static_cast<std::uint64_t>(i)), dims);
    });

    InequalityReport report;
    const auto collect = [&](const std::string& name, double TrialMargins::*field) {
        InequalityItem item;
        item.name = name;
        item.trials = trials;
        item.worst_margin = kInf;
        for (const auto& m : margins) {
            const double v = m.*field;
            item.worst_margin = std::min(item.worst_margin, v);
            if (v < -1e-9) ++item.violations;
        }
        report.items.push_back(item);
    };
    collect("audenaert", &TrialMargins::audenaert);
    collect("araki_generic", &TrialMargins::araki_generic);
    collect("araki_quotient", &TrialMargins::araki_quotient);
    collect("beigi_tomamichel", &TrialMargins::beigi_tomamichel);
    collect("operator_jensen", &TrialMargins::operator_jensen);
    collect("trace_min", &TrialMargins::trace_min);
    collect("collision_gap", &TrialMargins::collision_gap);
    collect("renyi_monotone", &TrialMargins::renyi_monotone);
    return report;
}

} // namespace qpack

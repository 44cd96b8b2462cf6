#include "qpack/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace_re(const Matrix& m) { return m.trace().real(); }

// Tr[A^alpha B^(1-alpha)] with powers on the supports.
double petz_trace(const Matrix& a, const Matrix& b, double alpha) {
    return trace_re(psd_power(a, alpha) * psd_power(b, 1.0 - alpha));
}

bool support_contained(const Matrix& a, const Matrix& b) {
    // supp(A) subseteq supp(B)  iff  (I - P_B) A (I - P_B) vanishes.
    const Matrix pb = psd_power(b, 0.0);  // support projector
    const Matrix eye = Matrix::Identity(b.rows(), b.cols());
    const Matrix off = (eye - pb) * a * (eye - pb);
    return off.cwiseAbs().maxCoeff() <= 1e-10 * std::max(a.cwiseAbs().maxCoeff(), 1e-300);
}

// Tr[A (log2 A - log2 B)] with logs on the supports; assumes supports nest.
double relent_bits(const Matrix& a, const Matrix& b) {
    const Matrix la = support_log2(a);
    const Matrix lb = support_log2(b);
    return trace_re(a * (la - lb));
}

double von_neumann_entropy(const Matrix& rho) {
    return -relent_bits(rho, Matrix::Identity(rho.rows(), rho.cols()));
}

double holevo_mutual_info(const CqEnsemble& ens) {
    const Matrix avg = ens.average();
    double info = 0.0;
    for (int x = 0; x < ens.k(); ++x) {
        if (ens.prior[static_cast<std::size_t>(x)] <= 0.0) continue;
        info += ens.prior[static_cast<std::size_t>(x)] *
                relent_bits(ens.states[static_cast<std::size_t>(x)].mat(), avg);
    }
    return info;
}

} // namespace

double petz_divergence(const PsdOp& a, const PsdOp& b, RenyiOrder alpha) {
    if (a.dim() != b.dim()) throw DimensionMismatch("petz_divergence: dimension mismatch");
    const double tr_a = trace_re(a.mat());
    if (tr_a <= 0.0) throw DomainError("petz_divergence: first argument is zero");
    if (alpha.at_one()) {
        if (!support_contained(a.mat(), b.mat())) return kInf;
        return relent_bits(a.mat(), b.mat());
    }
    const double t = petz_trace(a.mat(), b.mat(), alpha.alpha);
    if (t <= 0.0) return kInf;  // orthogonal supports
    return std::log2(t) / (alpha.alpha - 1.0);
}

double relative_entropy_variance(const DensityOp& rho, const DensityOp& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("relative_entropy_variance: dimension mismatch");
    if (!support_contained(rho.mat(), sigma.mat()))
        throw SupportViolation("relative_entropy_variance: supp(rho) not within supp(sigma)");
    const Matrix diff = support_log2(rho.mat()) - support_log2(sigma.mat());
    const double second_moment = trace_re(rho.mat() * diff * diff);
    const double first_moment = trace_re(rho.mat() * diff);
    return second_moment - first_moment * first_moment;
}

MinimizedInfo sibson_radius_info(const CqEnsemble& ens, RenyiOrder alpha) {
    if (alpha.at_one())
        return MinimizedInfo{holevo_mutual_info(ens), DensityOp(ens.average())};
    const double a = alpha.alpha;
    Matrix s = Matrix::Zero(ens.dim(), ens.dim());
    for (int x = 0; x < ens.k(); ++x)
        s += ens.prior[static_cast<std::size_t>(x)] *
             psd_power(ens.states[static_cast<std::size_t>(x)].mat(), a);
    const Matrix w = psd_power(s, 1.0 / a);
    const double t = trace_re(w);
    const double value = (a / (a - 1.0)) * std::log2(t);
    return MinimizedInfo{value, DensityOp(Matrix(w / t))};
}

MinimizedInfo cond_renyi_entropy(const CqEnsemble& ens, RenyiOrder alpha) {
    if (alpha.at_one()) {
        const double value = shannon_entropy(ens.prior) - holevo_mutual_info(ens);
        return MinimizedInfo{value, DensityOp(ens.average())};
    }
    const double a = alpha.alpha;
    Matrix s = Matrix::Zero(ens.dim(), ens.dim());
    for (int x = 0; x < ens.k(); ++x)
        s += psd_power(ens.prior[static_cast<std::size_t>(x)] *
                           ens.states[static_cast<std::size_t>(x)].mat(),
                       a);
    const Matrix w = psd_power(s, 1.0 / a);
    const double t = trace_re(w);
    const double value = (a / (1.0 - a)) * std::log2(t);
    return MinimizedInfo{value, DensityOp(Matrix(w / t))};
}

AugustinResult augustin_info(const CqEnsemble& ens, RenyiOrder alpha, double damping, double tol,
                             int max_iter) {
    if (!(damping > 0.0) || damping > 1.0)
        throw DomainError("augustin_info: damping must be in (0, 1]");
    if (alpha.at_one())
        return AugustinResult{holevo_mutual_info(ens), DensityOp(ens.average()), 0, 0.0};

    const double a = alpha.alpha;
    const Index d = ens.dim();
    std::vector<Matrix> powered(static_cast<std::size_t>(ens.k()));
    for (int x = 0; x < ens.k(); ++x)
        powered[static_cast<std::size_t>(x)] =
            psd_power(ens.states[static_cast<std::size_t>(x)].mat(), a);

    // 2^{(1-a) D_a(rho||sigma)} = 1 / Tr[rho^a sigma^{1-a}]; the map is
    //   F(sigma) = ( sum_x p(x) (rho^x)^a / Tr[(rho^x)^a sigma^{1-a}] )^{1/a},
    // renormalized to unit trace.
    const auto step = [&](const Matrix& sigma) {
        const Matrix sig_pow = psd_power(sigma, 1.0 - a);
        Matrix acc = Matrix::Zero(d, d);
        for (int x = 0; x < ens.k(); ++x) {
            const double p = ens.prior[static_cast<std::size_t>(x)];
            if (p <= 0.0) continue;
            const double denom = trace_re(powered[static_cast<std::size_t>(x)] * sig_pow);
            if (denom <= 0.0)
                throw DidNotConverge("augustin_info: iterate orthogonal to a state", {});
            acc += (p / denom) * powered[static_cast<std::size_t>(x)];
        }
        return acc;  // still in the alpha-power domain
    };

    Matrix sigma = ens.average();
    std::vector<double> residuals;
    residuals.reserve(64);
    double current_damping = damping;
    int stall = 0;
    for (int it = 1; it <= max_iter; ++it) {
        Matrix target = step(sigma);
        if (current_damping < 1.0)
            target = (1.0 - current_damping) * psd_power(sigma, a) + current_damping * target;
        Matrix next = psd_power(target, 1.0 / a);
        next /= trace_re(next);

        const double residual = trace_norm(HermitianOp(Matrix(next - sigma)));
        residuals.push_back(residual);
        sigma = next;
        if (residual <= tol) {
            double value = 0.0;
            DensityOp mean{Matrix(sigma)};
            for (int x = 0; x < ens.k(); ++x) {
                const double p = ens.prior[static_cast<std::size_t>(x)];
                if (p <= 0.0) continue;
                value += p * petz_divergence(ens.states[static_cast<std::size_t>(x)].psd(),
                                             mean.psd(), alpha);
            }
            return AugustinResult{value, mean, it, residual};
        }
        // stabilize when the residual stops decreasing
        if (residuals.size() >= 2 && residual >= residuals[residuals.size() - 2]) {
            if (++stall >= 5 && current_damping == 1.0) current_damping = 0.5;
        } else {
            stall = 0;
        }
    }
    throw DidNotConverge("augustin_info: no fixed point within max_iter", residuals);
}

MinimizedInfo ea_renyi_info(const DensityOp& rho_rb, Index dim_r, Index dim_b, RenyiOrder alpha) {
    if (rho_rb.dim() != dim_r * dim_b)
        throw DimensionMismatch("ea_renyi_info: bipartition does not match the state");
    const Matrix rho_r = ptrace_second(rho_rb.mat(), dim_r, dim_b);
    if (alpha.at_one()) {
        const Matrix rho_b = ptrace_first(rho_rb.mat(), dim_r, dim_b);
        const double value = von_neumann_entropy(rho_r) + von_neumann_entropy(rho_b) -
                             von_neumann_entropy(rho_rb.mat());
        return MinimizedInfo{value, DensityOp(Matrix(hermitize(rho_b)))};
    }
    const double a = alpha.alpha;
    const Matrix powered = psd_power(rho_rb.mat(), a);
    const Matrix tau_half = psd_power(rho_r, 0.5 * (1.0 - a));
    const Matrix sandwich = kron(tau_half, Matrix::Identity(dim_b, dim_b));
    const Matrix core = ptrace_first(sandwich * powered * sandwich, dim_r, dim_b);
    const Matrix w = psd_power(hermitize(core), 1.0 / a);
    const double t = trace_re(w);
    const double value = (a / (a - 1.0)) * std::log2(t);
    return MinimizedInfo{value, DensityOp(Matrix(w / t))};
}

DispersionResult dispersion_for_input(const CqEnsemble& ens) {
    const DensityOp avg{ens.average()};
    double info = 0.0;
    double var = 0.0;
    for (int x = 0; x < ens.k(); ++x) {
        const double p = ens.prior[static_cast<std::size_t>(x)];
        if (p <= 0.0) continue;
        const DensityOp& rho = ens.states[static_cast<std::size_t>(x)];
        if (!support_contained(rho.mat(), avg.mat()))
            throw SupportViolation("dispersion_for_input: state support exceeds the average");
        info += p * relent_bits(rho.mat(), avg.mat());
        var += p * relative_entropy_variance(rho, avg);
    }
    return DispersionResult{info, var};
}

HayashiComparison hayashi_comparison(const CqEnsemble& ens, double alpha) {
    if (alpha < 0.5 || alpha > 1.0)
        throw DomainError("hayashi_comparison: alpha must be in [1/2, 1]");
    Matrix s = Matrix::Zero(ens.dim(), ens.dim());
    for (int x = 0; x < ens.k(); ++x)
        s += ens.prior[static_cast<std::size_t>(x)] *
             psd_power(ens.states[static_cast<std::size_t>(x)].mat(), alpha);
    const double lhs = trace_re(psd_power(s, 1.0 / alpha));
    const Matrix avg_pow = psd_power(ens.average(), (1.0 - alpha) / alpha);
    double rhs = 0.0;
    for (int x = 0; x < ens.k(); ++x)
        rhs += ens.prior[static_cast<std::size_t>(x)] *
               trace_re(psd_power(ens.states[static_cast<std::size_t>(x)].mat(),
                                  2.0 - 1.0 / alpha) *
                        avg_pow);
    return HayashiComparison{lhs, rhs};
}

ExponentCurve exponent_curve(const std::function<double(double)>& info_at_alpha,
                             const std::vector<double>& rates) {
    for (std::size_t i = 1; i < rates.size(); ++i)
        if (rates[i] < rates[i - 1]) throw DomainError("exponent_curve: rates must ascend");

    constexpr int kGrid = 64;
    std::vector<double> grid(kGrid), info(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        grid[static_cast<std::size_t>(i)] = 0.5 + 0.5 * static_cast<double>(i) / (kGrid - 1);
        info[static_cast<std::size_t>(i)] =
            info_at_alpha(grid[static_cast<std::size_t>(i)]);
    }

    const auto objective = [&](double alpha, double rate, double info_value) {
        if (alpha >= 1.0) return 0.0;  // (1-a)/a -> 0 endpoint
        return (1.0 - alpha) / alpha * (info_value - rate);
    };

    ExponentCurve curve;
    curve.rates = rates;
    for (double rate : rates) {
        int best = 0;
        double best_val = -kInf;
        for (int i = 0; i < kGrid; ++i) {
            const double v = objective(grid[static_cast<std::size_t>(i)], rate,
                                       info[static_cast<std::size_t>(i)]);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        // golden-section refinement within the bracketing grid cells
        double lo = grid[static_cast<std::size_t>(std::max(0, best - 1))];
        double hi = grid[static_cast<std::size_t>(std::min(kGrid - 1, best + 1))];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = objective(x1, rate, info_at_alpha(x1));
        double f2 = objective(x2, rate, info_at_alpha(x2));
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = objective(x2, rate, info_at_alpha(x2));
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = objective(x1, rate, info_at_alpha(x1));
            }
        }
        const double alpha_star = 0.5 * (lo + hi);
        const double refined = objective(alpha_star, rate, info_at_alpha(alpha_star));
        const double val = std::max({best_val, refined, 0.0});
        curve.values.push_back(val);
        curve.alphas.push_back(val > 0.0 ? (refined >= best_val ? alpha_star
                                                                : grid[static_cast<std::size_t>(best)])
                                         : 1.0);
    }
    return curve;
}

ExponentCurve channel_exponent_sibson(const CqEnsemble& ens, const std::vector<double>& rates) {
    return exponent_curve(
        [&](double a) { return sibson_radius_info(ens, RenyiOrder(a)).value; }, rates);
}

ExponentCurve channel_exponent_augustin(const CqEnsemble& ens, const std::vector<double>& rates,
                                        double tol, int max_iter) {
    return exponent_curve(
        [&](double a) { return augustin_info(ens, RenyiOrder(a), 1.0, tol, max_iter).value; },
        rates);
}

ExponentCurve source_exponent_conditional(const CqEnsemble& ens,
                                          const std::vector<double>& rates) {
    // (1-a)/a [R - H_a] == (1-a)/a [(-H_a) - (-R)]; negated rates descend, so
    // evaluate them reversed and restore the original order afterwards.
    std::vector<double> negated(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) negated[i] = -rates[rates.size() - 1 - i];
    ExponentCurve rev = exponent_curve(
        [&](double a) { return -cond_renyi_entropy(ens, RenyiOrder(a)).value; }, negated);
    ExponentCurve curve;
    curve.rates = rates;
    curve.values.assign(rev.values.rbegin(), rev.values.rend());
    curve.alphas.assign(rev.alphas.rbegin(), rev.alphas.rend());
    return curve;
}

ExponentCurve ea_exponent(const DensityOp& rho_rb, Index dim_r, Index dim_b,
                          const std::vector<double>& rates) {
    return exponent_curve(
        [&](double a) { return ea_renyi_info(rho_rb, dim_r, dim_b, RenyiOrder(a)).value; },
        rates);
}

double shannon_entropy(const std::vector<double>& prior) {
    double h = 0.0;
    for (double p : prior)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

} // namespace qpack

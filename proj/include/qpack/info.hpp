#pragma once

#include <functional>

#include "qpack/linalg.hpp"

namespace qpack {

// Renyi order in (0, 1]; order 1 routes to the von Neumann limit formulas.
struct RenyiOrder {
    double alpha;

    explicit RenyiOrder(double a) : alpha(a) {
        if (!(a > 0.0) || a > 1.0) throw DomainError("RenyiOrder: alpha must be in (0, 1]");
    }
    bool at_one() const { return alpha == 1.0; }
};

// Order-alpha Petz-Renyi divergence in bits, for unnormalized PSD operators.
// Returns +inf for orthogonal supports (alpha < 1) and for a support
// violation at alpha = 1 (flagged value, not an exception).
double petz_divergence(const PsdOp& a, const PsdOp& b, RenyiOrder alpha);

// V(rho||sigma) = Tr[rho (log2 rho - log2 sigma)^2] - D_1(rho||sigma)^2.
double relative_entropy_variance(const DensityOp& rho, const DensityOp& sigma);

struct MinimizedInfo {
    double value;        // bits
    DensityOp minimizer;
};

// Renyi information I_alpha(X:B) with its closed-form minimizer.
MinimizedInfo sibson_radius_info(const CqEnsemble& ens, RenyiOrder alpha);

// Conditional Renyi entropy H_alpha(X|B) with its closed-form minimizer.
MinimizedInfo cond_renyi_entropy(const CqEnsemble& ens, RenyiOrder alpha);

struct AugustinResult {
    double value;     // bits
    DensityOp mean;
    int iterations;
    double residual;  // trace-norm gap of the last fixed-point step
};

// Petz-Augustin information by fixed-point iteration.  damping = 1 is the
// plain map; damping 0.5 engages automatically when the residual stalls.
AugustinResult augustin_info(const CqEnsemble& ens, RenyiOrder alpha, double damping = 1.0,
                             double tol = 1e-10, int max_iter = 10000);

// Renyi information of a bipartite state across the R:B cut.
MinimizedInfo ea_renyi_info(const DensityOp& rho_rb, Index dim_r, Index dim_b, RenyiOrder alpha);

struct DispersionResult {
    double mutual_info;  // I_1 at the given input
    double variance;     // E_x V(rho^x || rho_bar)
};

DispersionResult dispersion_for_input(const CqEnsemble& ens);

// Both sides of the power-mean comparison
//   Tr[(sum_x p(x) (rho^x)^a)^(1/a)]  <=  sum_x p(x) Tr[(rho^x)^(2-1/a) rho_bar^((1-a)/a)].
struct HayashiComparison {
    double lhs;
    double rhs;
};
HayashiComparison hayashi_comparison(const CqEnsemble& ens, double alpha);

struct ExponentCurve {
    std::vector<double> rates;
    std::vector<double> values;  // E(R) >= 0
    std::vector<double> alphas;  // maximizing order per rate
};

// E(R) = clip0( sup_{alpha in [1/2,1]} (1-alpha)/alpha * (info(alpha) - R) ),
// maximized on a 64-point grid followed by golden-section refinement.
// info(alpha) must implement its own alpha = 1 limit.
ExponentCurve exponent_curve(const std::function<double(double)>& info_at_alpha,
                             const std::vector<double>& rates);

// Convenience wrappers for the four standing objectives.
ExponentCurve channel_exponent_sibson(const CqEnsemble& ens, const std::vector<double>& rates);
ExponentCurve channel_exponent_augustin(const CqEnsemble& ens, const std::vector<double>& rates,
                                        double tol = 1e-10, int max_iter = 10000);
// sup (1-a)/a [R - H_alpha(X|B)]
ExponentCurve source_exponent_conditional(const CqEnsemble& ens, const std::vector<double>& rates);
ExponentCurve ea_exponent(const DensityOp& rho_rb, Index dim_r, Index dim_b,
                          const std::vector<double>& rates);

// Shannon entropy of a prior, bits.
double shannon_entropy(const std::vector<double>& prior);

} // namespace qpack

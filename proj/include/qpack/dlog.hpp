#pragma once

#include <optional>

#include "qpack/linalg.hpp"

namespace qpack {

struct QuadratureSpec {
    std::optional<double> truncation_radius{};  // nullopt = auto from the instance
    int base_nodes = 2048;
    int max_refinements = 12;
    double target_rel_err = 1e-7;

    void validate() const {
        if (base_nodes < 16) throw DomainError("QuadratureSpec: base_nodes must be >= 16");
        if (target_rel_err <= 0.0) throw DomainError("QuadratureSpec: target_rel_err must be > 0");
        if (max_refinements < 0) throw DomainError("QuadratureSpec: max_refinements must be >= 0");
    }
};

// Projection integrals are evaluated per panel between consecutive spectral
// jump points of the pencil.  PanelGauss refines each panel with nested
// Gauss-Legendre rules (exact for commuting pairs, near machine precision
// otherwise); MidpointRefine is the plain composite-midpoint cross-check.
enum class QuadMode { PanelGauss, MidpointRefine };

// Directional derivative of the operator logarithm at A toward B, in closed
// divided-difference form on A's eigenbasis.
HermitianOp dlog(const PsdOp& a, const HermitianOp& b);

// Same derivative through the resolvent integral, compactified to [0,1).
HermitianOp dlog_lieb_quadrature(const PsdOp& a, const HermitianOp& b, const QuadratureSpec& q);

// Integral of spectral projections {uA < B} du on [0,inf) minus {uA > B} du
// on (-inf,0], truncated to |u| <= |A^{-1/2} B A^{-1/2}|_inf.
HermitianOp layercake(const PsdOp& a, const HermitianOp& b, const QuadratureSpec& q,
                      QuadMode mode = QuadMode::PanelGauss);

// Integral of {uA < (1-u)B} du on [0,1]; equals integral_quotient(A,B).
HermitianOp extremal_decomposition(const PsdOp& a, const PsdOp& b, const QuadratureSpec& q,
                                   QuadMode mode = QuadMode::PanelGauss);

// The noncommutative quotient B/(A+B) on the support of A+B.
HermitianOp integral_quotient(const PsdOp& a, const PsdOp& b);

struct ChangeOfVariablesResult {
    HermitianOp lhs;
    HermitianOp rhs;
    double gap;  // |lhs - rhs|_inf / max(1, |lhs|_inf)
};

// lhs = integral of {B > gamma A} h(gamma) dgamma over [0, r];
// rhs = the resolvent-side integral, compactified; both by refinement.
ChangeOfVariablesResult change_of_variables_check(const PsdOp& a, const PsdOp& b,
                                                  const ScalarFnSpec& h, const QuadratureSpec& q);

// Integral of Tr[A {uA < B}] du over [0,1]; equals Tr[A ^ B] for PSD B.
double tracial_min_integral(const HermitianOp& a, const HermitianOp& b, const QuadratureSpec& q);

// dlog with the base restricted to its support; the result is embedded back
// into the full space (zero off the support).  Shared by the measurement and
// packing layers.
Matrix dlog_on_support(const Matrix& base_psd, const Matrix& direction);

} // namespace qpack

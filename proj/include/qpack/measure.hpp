#pragma once

#include <string>
#include <vector>

#include "qpack/info.hpp"
#include "qpack/linalg.hpp"

namespace qpack {

// Finite family of PSD effects with sum <= identity.
class Povm {
public:
    explicit Povm(std::vector<PsdOp> effects);

    const std::vector<PsdOp>& effects() const { return effects_; }
    std::size_t size() const { return effects_.size(); }
    Index dim() const { return effects_.front().dim(); }

private:
    std::vector<PsdOp> effects_;
};

struct HelstromTest {
    PsdOp test;    // 0 <= T <= I
    double delta;  // tie-breaking weight on {A = B}
};

struct TiltingReport {
    double alpha;
    double lhs;       // Tr[A * B^a/(A^a + B^a)]
    double rhs_core;  // Tr[A^a B^(1-a)]
    double c1;
    double c2;
    double c;         // min(c1, c2)
    double margin;    // c * rhs_core - lhs
};

// Minimum binary discrimination error Tr[A ^ B] = (Tr[A+B] - |A-B|_1)/2.
double helstrom_error(const PsdOp& a, const PsdOp& b);

// Optimal test {A > B} + delta {A = B}; any delta gives the same error.
HelstromTest helstrom_test(const PsdOp& a, const PsdOp& b, double delta = 0.0);

// Tr[A (I - T)] + Tr[B T] for an arbitrary test.
double binary_test_error(const PsdOp& a, const PsdOp& b, const Matrix& test);

struct ChernoffResult {
    double bound;
    double alpha;  // minimizing grid point
};

// min over the grid of Tr[A^a B^(1-a)]; endpoints by continuity.
ChernoffResult chernoff_bound(const PsdOp& a, const PsdOp& b,
                              const std::vector<double>& alpha_grid = {});

// Effects S^{-1/2} (p(x) rho^x)^a S^{-1/2} with S the powered average.
Povm conventional_pgm(const CqEnsemble& ens, double alpha);

// Effects dlog[S]((p(x) rho^x)^a): the derivative-quotient variant.
Povm integral_pgm(const CqEnsemble& ens, double alpha);

// 1 - sum_x p(x) Tr[rho^x Effect_{labels[x]}]; labels default to identity.
double povm_error(const CqEnsemble& ens, const Povm& m, const std::vector<int>& labels = {});

struct CollisionQuantities {
    double sandwiched;  // Tr[(B^{-1/4} A B^{-1/4})^2] summed over blocks
    double integral;    // Tr[A * A/B] summed over blocks
};

CollisionQuantities collision_quantities(const CqEnsemble& ens);

double tilting_c1(double alpha);
double tilting_c2(double alpha);
double tilting_c(double alpha);

TiltingReport tilting_report(const PsdOp& a, const PsdOp& b, double alpha);

struct CAlphaSup {
    double alpha;
    double value;
};

// Maximizes min(c1, c2) over [1/2, 1] by golden section to 1e-12 in alpha.
CAlphaSup c_alpha_sup();

struct InequalityItem {
    std::string name;
    long trials = 0;
    long violations = 0;
    double worst_margin = 0.0;  // most negative margin observed (>= 0 means clean)
};

struct InequalityReport {
    std::vector<InequalityItem> items;

    bool clean(double slack = 1e-9) const {
        for (const auto& it : items)
            if (it.worst_margin < -slack) return false;
        return true;
    }
};

// Seeded randomized checks of the standing operator inequalities; margins are
// reported, never thrown.
InequalityReport inequality_suite(std::uint64_t seed, int trials,
                                  const std::vector<Index>& dims = {2, 3}, int threads = 1);

} // namespace qpack

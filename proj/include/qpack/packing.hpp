#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpack/info.hpp"
#include "qpack/linalg.hpp"

namespace qpack {

struct Codebook {
    std::vector<int> entries;  // letters in [0, k)
};

struct TypeSpec {
    int n = 0;
    std::vector<int> counts;  // per-letter, sums to n

    void validate(int k) const;
};

enum class SimMode { Enumerate, MonteCarlo };

struct SimConfig {
    int messages = 2;          // M >= 2
    double alpha = 1.0;        // [1/2, 1]
    SimMode mode = SimMode::Enumerate;
    long samples = 0;          // Monte-Carlo only
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

struct SimResult {
    double error_estimate = 0.0;
    double std_err = 0.0;  // 0 in enumerate mode
    long samples = 0;
    std::uint64_t seed = 0;
    double bound = 0.0;
    std::string bound_ref;
};

// Exact decoding error of the derivative-quotient alpha-PGM for a fixed
// codebook; off-support mass counts as error.
double cq_decode_error(const CqEnsemble& channel, const Codebook& cb, double alpha);

// Random-coding error (exact enumeration or seeded Monte-Carlo) against the
// one-shot bound c_a (M-1)^((1-a)/a) Tr[(sum_x p(x) (rho^x)^a)^(1/a)].
SimResult cq_random_coding(const CqEnsemble& channel, const SimConfig& cfg);

struct ConstrainedResult {
    double bound;
    double min_divergence;  // min over the subset of D_a(rho^x || augustin mean)
    SimResult sim;          // random coding with the induced conditional prior
};

// One-shot bound for codewords constrained to a subset of the alphabet.
ConstrainedResult constrained_coding(const CqEnsemble& channel, const std::vector<int>& subset,
                                     const SimConfig& cfg);

// Log-domain bound for constant composition codes:
//   -n (1-a)/a [I_aug - R] + (|X|/a) log2(n+1) + log2 c_a.
double cc_exponent_bound(const TypeSpec& q, const CqEnsemble& channel, double rate, double alpha,
                         double aug_tol = 1e-10, int aug_max_iter = 10000);

// Uniform member of the type class by seeded shuffle of the letter multiset.
std::vector<int> sample_type_class(const TypeSpec& q, std::uint64_t seed);

double type_class_log2_size(const TypeSpec& q);
double type_class_log2_prob(const TypeSpec& q, const std::vector<double>& prior);

// Source coding with quantum side information: random binning against
//   c_a M^((a-1)/a) Tr[(sum_x (p(x) rho^x)^a)^(1/a)].
SimResult cqsw_random_binning(const CqEnsemble& source, const SimConfig& cfg);

enum class CqswKind { Iid, ConstantComposition, VariableLength };

// Exponent expressions for the three source-coding regimes.
double cqsw_exponent(CqswKind kind, const CqEnsemble& source, double rate, double aug_tol = 1e-10,
                     int aug_max_iter = 10000);

// Completely positive trace-preserving map in Kraus form.
class QuantumChannel {
public:
    QuantumChannel(std::vector<Matrix> kraus, Index dim_in, Index dim_out);

    static QuantumChannel identity(Index dim);

    Index dim_in() const { return dim_in_; }
    Index dim_out() const { return dim_out_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }

    Matrix apply(const Matrix& rho) const;
    // (id_R (x) N)(theta) for theta on R (x) A.
    Matrix apply_to_second(const Matrix& theta, Index dim_r) const;

private:
    std::vector<Matrix> kraus_;
    Index dim_in_;
    Index dim_out_;
};

// Position-based coding with an M-fold shared resource; exact decoding of the
// integral alpha-PGM against the one-shot entanglement-assisted bound.
SimResult ea_position_coding(const QuantumChannel& channel, const DensityOp& theta_ra,
                             Index dim_r, int messages, double alpha);

// Channel coding through a fully quantum channel with a fixed input ensemble;
// reduces to cq_random_coding on the image ensemble.
SimResult unassisted_coding(const QuantumChannel& channel, const CqEnsemble& inputs,
                            const SimConfig& cfg);

// Trace factor Tr[(sum_x p(x) (rho^x)^a)^(1/a)] of the channel-coding bound.
double cq_bound_trace_factor(const CqEnsemble& channel, double alpha);

} // namespace qpack

#include "qpack/packing.hpp"

#include <algorithm>
#include <cmath>

#include "qpack/dlog.hpp"
#include "qpack/measure.hpp"
#include "qpack/parallel.hpp"

namespace qpack {

namespace {

constexpr long kEnumerationCap = 1000000;  // k^M (coding) and M^k (binning)
constexpr long kEaDimensionCap = 4096;     // d_R^M * d_B

double trace_re(const Matrix& m) { return m.trace().real(); }

long checked_pow(long base, int exp, long cap, const char* what) {
    long value = 1;
    for (int i = 0; i < exp; ++i) {
        if (value > cap / base)
            throw EnumerationTooLarge(std::string(what) + ": enumeration exceeds the cap");
        value *= base;
    }
    return value;
}

double mean_and_stderr(const std::vector<double>& values, double* std_err) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const auto n = static_cast<double>(values.size());
    *std_err = values.size() > 1 ? std::sqrt(ss / (n * (n - 1.0))) : 0.0;
    return mean;
}

int draw_letter(const std::vector<double>& prior, double u) {
    double acc = 0.0;
    for (std::size_t x = 0; x + 1 < prior.size(); ++x) {
        acc += prior[x];
        if (u < acc) return static_cast<int>(x);
    }
    return static_cast<int>(prior.size()) - 1;
}

} // namespace

void TypeSpec::validate(int k) const {
    if (static_cast<int>(counts.size()) != k)
        throw DimensionMismatch("TypeSpec: counts must cover the alphabet");
    long sum = 0;
    for (int c : counts) {
        if (c < 0) throw DomainError("TypeSpec: negative count");
        sum += c;
    }
    if (sum != n) throw DomainError("TypeSpec: counts must sum to n");
}

void SimConfig::validate() const {
    if (messages < 2) throw DomainError("SimConfig: need at least two messages");
    if (alpha < 0.5 || alpha > 1.0) throw DomainError("SimConfig: alpha must be in [1/2,1]");
    if (mode == SimMode::MonteCarlo && samples < 1)
        throw DomainError("SimConfig: Monte-Carlo needs samples >= 1");
    if (threads < 1) throw DomainError("SimConfig: threads must be >= 1");
}

double cq_decode_error(const CqEnsemble& channel, const Codebook& cb, double alpha) {
    if (cb.entries.empty()) throw DomainError("cq_decode_error: empty codebook");
    if (alpha <= 0.0 || alpha > 1.0)
        throw DomainError("cq_decode_error: alpha must be in (0,1]");
    const Index d = channel.dim();
    const auto m_count = cb.entries.size();
    std::vector<Matrix> powered(m_count);
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t m = 0; m < m_count; ++m) {
        const int x = cb.entries[m];
        if (x < 0 || x >= channel.k()) throw DomainError("cq_decode_error: letter out of range");
        powered[m] = psd_power(channel.states[static_cast<std::size_t>(x)].mat(), alpha);
        s += powered[m];
    }
    const Matrix eye = Matrix::Identity(d, d);
    double error = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const Matrix effect = dlog_on_support(s, powered[m]);
        error += trace_re(channel.states[static_cast<std::size_t>(cb.entries[m])].mat() *
                          (eye - effect));
    }
    return error / static_cast<double>(m_count);
}

double cq_bound_trace_factor(const CqEnsemble& channel, double alpha) {
    Matrix s = Matrix::Zero(channel.dim(), channel.dim());
    for (int x = 0; x < channel.k(); ++x)
        s += channel.prior[static_cast<std::size_t>(x)] *
             psd_power(channel.states[static_cast<std::size_t>(x)].mat(), alpha);
    return trace_re(psd_power(s, 1.0 / alpha));
}

SimResult cq_random_coding(const CqEnsemble& channel, const SimConfig& cfg) {
    cfg.validate();
    const int k = channel.k();
    const int m_count = cfg.messages;
    const double alpha = cfg.alpha;

    SimResult result;
    result.seed = cfg.seed;
    result.bound = tilting_c(alpha) *
                   std::pow(static_cast<double>(m_count - 1), (1.0 - alpha) / alpha) *
                   cq_bound_trace_factor(channel, alpha);
    result.bound_ref = "cq-random-coding";

    if (cfg.mode == SimMode::Enumerate) {
        const long total = checked_pow(k, m_count, kEnumerationCap, "cq_random_coding");
        std::vector<double> weighted(static_cast<std::size_t>(total));
        parallel_for(total, cfg.threads, [&](long idx) {
            Codebook cb;
            cb.entries.resize(static_cast<std::size_t>(m_count));
            long rem = idx;
            double weight = 1.0;
            for (int m = 0; m < m_count; ++m) {
                const int x = static_cast<int>(rem % k);
                rem /= k;
                cb.entries[static_cast<std::size_t>(m)] = x;
                weight *= channel.prior[static_cast<std::size_t>(x)];
            }
            weighted[static_cast<std::size_t>(idx)] =
                weight > 0.0 ? weight * cq_decode_error(channel, cb, alpha) : 0.0;
        });
        double total_error = 0.0;
        for (double w : weighted) total_error += w;
        result.error_estimate = total_error;
        result.std_err = 0.0;
        result.samples = total;
        return result;
    }

    std::vector<double> values(static_cast<std::size_t>(cfg.samples));
    parallel_for(cfg.samples, cfg.threads, [&](long i) {
        SplitMix64 g(SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(i)));
        Codebook cb;
        cb.entries.resize(static_cast<std::size_t>(m_count));
        for (int m = 0; m < m_count; ++m)
            cb.entries[static_cast<std::size_t>(m)] = draw_letter(channel.prior, g.next_double());
        values[static_cast<std::size_t>(i)] = cq_decode_error(channel, cb, alpha);
    });
    result.error_estimate = mean_and_stderr(values, &result.std_err);
    result.samples = cfg.samples;
    return result;
}

ConstrainedResult constrained_coding(const CqEnsemble& channel, const std::vector<int>& subset,
                                     const SimConfig& cfg) {
    cfg.validate();
    if (subset.empty()) throw EmptySupport("constrained_coding: empty constraint set");
    std::vector<bool> in_set(static_cast<std::size_t>(channel.k()), false);
    double subset_mass = 0.0;
    for (int x : subset) {
        if (x < 0 || x >= channel.k())
            throw DomainError("constrained_coding: subset letter out of range");
        if (!in_set[static_cast<std::size_t>(x)]) {
            in_set[static_cast<std::size_t>(x)] = true;
            subset_mass += channel.prior[static_cast<std::size_t>(x)];
        }
    }
    if (subset_mass <= 0.0)
        throw EmptySupport("constrained_coding: constraint set has zero prior mass");

    // Augustin mean of the *unconstrained* prior is the pivot.
    const AugustinResult aug = augustin_info(channel, RenyiOrder(cfg.alpha));
    double min_div = std::numeric_limits<double>::infinity();
    for (int x = 0; x < channel.k(); ++x) {
        if (!in_set[static_cast<std::size_t>(x)]) continue;
        min_div = std::min(min_div,
                           petz_divergence(channel.states[static_cast<std::size_t>(x)].psd(),
                                           aug.mean.psd(), RenyiOrder(cfg.alpha)));
    }

    const double a = cfg.alpha;
    const double exponent =
        -((1.0 - a) / a) * (min_div - std::log2(static_cast<double>(cfg.messages - 1)));
    const double bound =
        tilting_c(a) / std::pow(subset_mass, 1.0 / a) * std::pow(2.0, exponent);

    // Random coding with the induced conditional prior.
    std::vector<double> induced(static_cast<std::size_t>(channel.k()), 0.0);
    for (int x = 0; x < channel.k(); ++x)
        if (in_set[static_cast<std::size_t>(x)])
            induced[static_cast<std::size_t>(x)] =
                channel.prior[static_cast<std::size_t>(x)] / subset_mass;
    CqEnsemble conditioned(induced, channel.states);
    SimResult sim = cq_random_coding(conditioned, cfg);
    sim.bound = bound;
    sim.bound_ref = "constrained-coding";
    return ConstrainedResult{bound, min_div, sim};
}

double cc_exponent_bound(const TypeSpec& q, const CqEnsemble& channel, double rate, double alpha,
                         double aug_tol, int aug_max_iter) {
    q.validate(channel.k());
    if (alpha < 0.5 || alpha > 1.0)
        throw DomainError("cc_exponent_bound: alpha must be in [1/2,1]");
    std::vector<double> type_prior(q.counts.size());
    for (std::size_t x = 0; x < q.counts.size(); ++x)
        type_prior[x] = static_cast<double>(q.counts[x]) / static_cast<double>(q.n);
    CqEnsemble typed(type_prior, channel.states);
    const double info = augustin_info(typed, RenyiOrder(alpha), 1.0, aug_tol, aug_max_iter).value;
    const double n = static_cast<double>(q.n);
    return -n * ((1.0 - alpha) / alpha) * (info - rate) +
           (static_cast<double>(channel.k()) / alpha) * std::log2(n + 1.0) +
           std::log2(tilting_c(alpha));
}

std::vector<int> sample_type_class(const TypeSpec& q, std::uint64_t seed) {
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(q.n));
    for (std::size_t x = 0; x < q.counts.size(); ++x)
        word.insert(word.end(), static_cast<std::size_t>(q.counts[x]), static_cast<int>(x));
    SplitMix64 g(seed);
    for (std::size_t i = word.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(g.next() % i);
        std::swap(word[i - 1], word[j]);
    }
    return word;
}

double type_class_log2_size(const TypeSpec& q) {
    double log_size = std::lgamma(static_cast<double>(q.n) + 1.0);
    for (int c : q.counts) log_size -= std::lgamma(static_cast<double>(c) + 1.0);
    return log_size / std::log(2.0);
}

double type_class_log2_prob(const TypeSpec& q, const std::vector<double>& prior) {
    if (prior.size() != q.counts.size())
        throw DimensionMismatch("type_class_log2_prob: prior size mismatch");
    double log_prob = type_class_log2_size(q);
    for (std::size_t x = 0; x < q.counts.size(); ++x) {
        if (q.counts[x] == 0) continue;
        if (prior[x] <= 0.0) return -std::numeric_limits<double>::infinity();
        log_prob += static_cast<double>(q.counts[x]) * std::log2(prior[x]);
    }
    return log_prob;
}

namespace {

// Error of one bin assignment: bins decode with the derivative-quotient PGM
// over the weighted powered members.
double binning_error(const CqEnsemble& source, const std::vector<int>& assignment, int m_count,
                     const std::vector<Matrix>& powered) {
    const Index d = source.dim();
    const Matrix eye = Matrix::Identity(d, d);
    double error = 0.0;
    for (int m = 0; m < m_count; ++m) {
        Matrix s = Matrix::Zero(d, d);
        bool occupied = false;
        for (int x = 0; x < source.k(); ++x) {
            if (assignment[static_cast<std::size_t>(x)] != m) continue;
            s += powered[static_cast<std::size_t>(x)];
            occupied = true;
        }
        if (!occupied) continue;
        for (int x = 0; x < source.k(); ++x) {
            if (assignment[static_cast<std::size_t>(x)] != m) continue;
            const double p = source.prior[static_cast<std::size_t>(x)];
            if (p <= 0.0) continue;
            const Matrix effect = dlog_on_support(s, powered[static_cast<std::size_t>(x)]);
            error += p * trace_re(source.states[static_cast<std::size_t>(x)].mat() *
                                  (eye - effect));
        }
    }
    return error;
}

} // namespace

SimResult cqsw_random_binning(const CqEnsemble& source, const SimConfig& cfg) {
    cfg.validate();
    const int k = source.k();
    const int m_count = cfg.messages;
    const double alpha = cfg.alpha;

    std::vector<Matrix> powered(static_cast<std::size_t>(k));
    Matrix s_all = Matrix::Zero(source.dim(), source.dim());
    for (int x = 0; x < k; ++x) {
        powered[static_cast<std::size_t>(x)] =
            psd_power(source.prior[static_cast<std::size_t>(x)] *
                          source.states[static_cast<std::size_t>(x)].mat(),
                      alpha);
        s_all += powered[static_cast<std::size_t>(x)];
    }

    SimResult result;
    result.seed = cfg.seed;
    result.bound = tilting_c(alpha) *
                   std::pow(static_cast<double>(m_count), (alpha - 1.0) / alpha) *
                   trace_re(psd_power(s_all, 1.0 / alpha));
    result.bound_ref = "cqsw-binning";

    if (cfg.mode == SimMode::Enumerate) {
        const long total = checked_pow(m_count, k, kEnumerationCap, "cqsw_random_binning");
        std::vector<double> errors(static_cast<std::size_t>(total));
        parallel_for(total, cfg.threads, [&](long idx) {
            std::vector<int> assignment(static_cast<std::size_t>(k));
            long rem = idx;
            for (int x = 0; x < k; ++x) {
                assignment[static_cast<std::size_t>(x)] = static_cast<int>(rem % m_count);
                rem /= m_count;
            }
            errors[static_cast<std::size_t>(idx)] =
                binning_error(source, assignment, m_count, powered);
        });
        double total_error = 0.0;
        for (double e : errors) total_error += e;
        result.error_estimate = total_error / static_cast<double>(total);
        result.std_err = 0.0;
        result.samples = total;
        return result;
    }

    std::vector<double> values(static_cast<std::size_t>(cfg.samples));
    parallel_for(cfg.samples, cfg.threads, [&](long i) {
        SplitMix64 g(SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(i)));
        std::vector<int> assignment(static_cast<std::size_t>(k));
        for (int x = 0; x < k; ++x)
            assignment[static_cast<std::size_t>(x)] =
                static_cast<int>(g.next() % static_cast<std::uint64_t>(m_count));
        values[static_cast<std::size_t>(i)] = binning_error(source, assignment, m_count, powered);
    });
    result.error_estimate = mean_and_stderr(values, &result.std_err);
    result.samples = cfg.samples;
    return result;
}

double cqsw_exponent(CqswKind kind, const CqEnsemble& source, double rate, double aug_tol,
                     int aug_max_iter) {
    switch (kind) {
        case CqswKind::Iid: {
            return source_exponent_conditional(source, {rate}).values.front();
        }
        case CqswKind::ConstantComposition:
        case CqswKind::VariableLength: {
            // sup (1-a)/a [R - H(X) + I_aug(a)] with the rate shifted by H(X).
            const double shifted = shannon_entropy(source.prior) - rate;
            ExponentCurve curve = exponent_curve(
                [&](double a) {
                    return augustin_info(source, RenyiOrder(a), 1.0, aug_tol, aug_max_iter).value;
                },
                {shifted});
            return curve.values.front();
        }
    }
    throw DomainError("cqsw_exponent: unknown kind");
}

// ---------------------------------------------------------------------------
// Quantum channels and the entanglement-assisted / unassisted tasks
// ---------------------------------------------------------------------------

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, Index dim_in, Index dim_out)
    : kraus_(std::move(kraus)), dim_in_(dim_in), dim_out_(dim_out) {
    if (kraus_.empty()) throw DomainError("QuantumChannel: needs at least one Kraus operator");
    Matrix acc = Matrix::Zero(dim_in_, dim_in_);
    for (const auto& kmat : kraus_) {
        if (kmat.rows() != dim_out_ || kmat.cols() != dim_in_)
            throw DimensionMismatch("QuantumChannel: Kraus operator shape mismatch");
        acc += kmat.adjoint() * kmat;
    }
    const double defect =
        (acc - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
    if (defect > 1e-9)
        throw DomainError("QuantumChannel: Kraus operators are not trace preserving");
}

QuantumChannel QuantumChannel::identity(Index dim) {
    return QuantumChannel({Matrix::Identity(dim, dim)}, dim, dim);
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const auto& kmat : kraus_) out += kmat * rho * kmat.adjoint();
    return hermitize(out);
}

Matrix QuantumChannel::apply_to_second(const Matrix& theta, Index dim_r) const {
    const Index d_in = dim_r * dim_in_;
    if (theta.rows() != d_in)
        throw DimensionMismatch("QuantumChannel: bipartite input dimension mismatch");
    const Matrix eye_r = Matrix::Identity(dim_r, dim_r);
    Matrix out = Matrix::Zero(dim_r * dim_out_, dim_r * dim_out_);
    for (const auto& kmat : kraus_) {
        const Matrix lifted = kron(eye_r, kmat);
        out += lifted * theta * lifted.adjoint();
    }
    return hermitize(out);
}

SimResult ea_position_coding(const QuantumChannel& channel, const DensityOp& theta_ra,
                             Index dim_r, int messages, double alpha) {
    if (messages < 2) throw DomainError("ea_position_coding: need at least two messages");
    if (alpha < 0.5 || alpha > 1.0)
        throw DomainError("ea_position_coding: alpha must be in [1/2,1]");
    const Index dim_a = theta_ra.dim() / dim_r;
    if (dim_r * dim_a != theta_ra.dim())
        throw DimensionMismatch("ea_position_coding: bipartition mismatch");
    if (dim_a != channel.dim_in())
        throw DimensionMismatch("ea_position_coding: channel input mismatch");

    const Index dim_b = channel.dim_out();
    long total = dim_b;
    for (int m = 0; m < messages; ++m) {
        if (total > kEaDimensionCap / dim_r)
            throw DimensionTooLarge("ea_position_coding: d_R^M * d_B exceeds the cap");
        total *= dim_r;
    }

    const Matrix rho_rb = channel.apply_to_second(theta_ra.mat(), dim_r);
    const Matrix theta_r = ptrace_second(theta_ra.mat(), dim_r, dim_a);

    // Hypothesis states on R_1 ... R_M (x) B, with B kept as the last factor.
    std::vector<Matrix> hypotheses;
    hypotheses.reserve(static_cast<std::size_t>(messages));
    for (int m = 0; m < messages; ++m) {
        Matrix acc = Matrix::Identity(1, 1);
        for (int j = 0; j < m; ++j) acc = kron(acc, theta_r);
        acc = kron(acc, rho_rb);
        for (int j = m + 1; j < messages; ++j) acc = kron(acc, theta_r);
        // factors: R_1..R_{m-1}, R_m, B, R_{m+1}..R_M  ->  move B to the end
        std::vector<Index> dims(static_cast<std::size_t>(messages) + 1, dim_r);
        dims[static_cast<std::size_t>(m) + 1] = dim_b;
        std::vector<int> perm;
        for (int j = 0; j <= messages; ++j)
            if (j != m + 1) perm.push_back(j);
        perm.push_back(m + 1);
        hypotheses.push_back(permute_subsystems(acc, dims, perm));
    }

    const Index d = hypotheses.front().rows();
    Matrix s = Matrix::Zero(d, d);
    std::vector<Matrix> powered(static_cast<std::size_t>(messages));
    for (int m = 0; m < messages; ++m) {
        powered[static_cast<std::size_t>(m)] =
            psd_power(hypotheses[static_cast<std::size_t>(m)], alpha);
        s += powered[static_cast<std::size_t>(m)];
    }
    const Matrix eye = Matrix::Identity(d, d);
    double error = 0.0;
    for (int m = 0; m < messages; ++m) {
        const Matrix effect = dlog_on_support(s, powered[static_cast<std::size_t>(m)]);
        error += trace_re(hypotheses[static_cast<std::size_t>(m)] * (eye - effect));
    }
    error /= static_cast<double>(messages);

    const double info =
        ea_renyi_info(DensityOp(rho_rb), dim_r, dim_b, RenyiOrder(alpha)).value;
    const double exponent = -((1.0 - alpha) / alpha) *
                            (info - std::log2(static_cast<double>(messages - 1)));

    SimResult result;
    result.error_estimate = error;
    result.std_err = 0.0;
    result.samples = 0;
    result.seed = 0;
    result.bound = tilting_c(alpha) * std::pow(2.0, exponent);
    result.bound_ref = "ea-position-coding";
    return result;
}

SimResult unassisted_coding(const QuantumChannel& channel, const CqEnsemble& inputs,
                            const SimConfig& cfg) {
    if (inputs.dim() != channel.dim_in())
        throw DimensionMismatch("unassisted_coding: channel input mismatch");
    std::vector<DensityOp> images;
    images.reserve(static_cast<std::size_t>(inputs.k()));
    for (const auto& rho : inputs.states) images.emplace_back(channel.apply(rho.mat()));
    CqEnsemble image_ensemble(inputs.prior, std::move(images));
    SimResult result = cq_random_coding(image_ensemble, cfg);
    result.bound_ref = "unassisted-coding";
    return result;
}

} // namespace qpack

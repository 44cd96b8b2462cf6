// Command-line front end: instance-file I/O, verification suites, constants
// and exponent tables, simulation drivers, CSV emission.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpack/dlog.hpp"
#include "qpack/info.hpp"
#include "qpack/io.hpp"
#include "qpack/linalg.hpp"
#include "qpack/measure.hpp"
#include "qpack/packing.hpp"
#include "qpack/parallel.hpp"

namespace {

using namespace qpack;

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw DomainError("grid: expected start:stop:step");
        for (double v = start; v <= stop + 1e-12; v += step) out.push_back(std::min(v, stop));
        if (!out.empty() && out.back() < stop - 1e-12) out.push_back(stop);
    } else {
        std::istringstream in(spec);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw DomainError("grid: empty specification");
    return out;
}

std::vector<Index> parse_dims(const std::string& spec) {
    std::vector<Index> out;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        const long d = std::stol(tok);
        if (d < 1) throw DomainError("dims: dimensions must be >= 1");
        out.push_back(static_cast<Index>(d));
    }
    if (out.empty()) throw DomainError("dims: empty specification");
    return out;
}

struct PropertyStat {
    std::string name;
    long trials = 0;
    long violations = 0;
    double worst = std::numeric_limits<double>::infinity();

    // `margin` is oriented so that negative means violation.
    void add(double margin, double slack) {
        ++trials;
        worst = std::min(worst, margin);
        if (margin < -slack) ++violations;
    }
};

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 42;
    int trials = 50;
    std::string dims = "2,3,4";
    int threads = 1;
};

void calculus_trial(std::uint64_t seed, const std::vector<Index>& dims, int which,
                    std::vector<double>* margins) {
    SplitMix64 g(seed);
    const Index d = dims[static_cast<std::size_t>(g.next() % dims.size())];
    const PsdOp a(Matrix(random_psd(d, g.next()).mat() +
                         0.2 * Matrix::Identity(d, d)));  // comfortably full support
    const HermitianOp b = random_hermitian(d, g.next());
    QuadratureSpec q;

    const Matrix closed = dlog(a, b).mat();
    const double scale = std::max(1.0, closed.cwiseAbs().maxCoeff());

    // Facts about the derivative (identity, scaling, linearity, positivity,
    // inversion conjugation, norm bound), then the integral representations.
    double worst = 0.0;
    switch (which) {
        case 0: {  // dlog(A, A) = I
            const Matrix gap = dlog(a, HermitianOp(a.mat())).mat() -
                               Matrix::Identity(d, d);
            worst = gap.cwiseAbs().maxCoeff();
            break;
        }
        case 1: {  // dlog(zA, B) = dlog(A, B)/z
            const double z = 0.5 + 2.0 * g.next_double();
            const Matrix gap = dlog(PsdOp(Matrix(z * a.mat())), b).mat() - closed / z;
            worst = gap.cwiseAbs().maxCoeff() / scale;
            break;
        }
        case 2: {  // linearity in the direction
            const HermitianOp b2 = random_hermitian(d, g.next());
            const double u = g.next_double(), v = g.next_double();
            const Matrix lhs = dlog(a, HermitianOp(Matrix(u * b.mat() + v * b2.mat()))).mat();
            const Matrix rhs = u * closed + v * dlog(a, b2).mat();
            worst = (lhs - rhs).cwiseAbs().maxCoeff() / scale;
            break;
        }
        case 3: {  // positivity on PSD directions
            const PsdOp bp = random_psd(d, g.next());
            Eigen::SelfAdjointEigenSolver<Matrix> es(dlog(a, HermitianOp(bp.mat())).mat());
            worst = std::max(0.0, -es.eigenvalues()(0));
            break;
        }
        case 4: {  // inversion conjugation
            const Matrix a_inv_sqrt = psd_power(a.mat(), -0.5);
            const Matrix inner =
                dlog(PsdOp(psd_power(a.mat(), -1.0)),
                     HermitianOp(hermitize(a_inv_sqrt * b.mat() * a_inv_sqrt)))
                    .mat();
            const Matrix rhs = a_inv_sqrt * inner * a_inv_sqrt;
            worst = (closed - rhs).cwiseAbs().maxCoeff() / scale;
            break;
        }
        case 5: {  // norm bound |dlog|_inf <= |A^{-1/2} B A^{-1/2}|_inf
            const Matrix a_inv_sqrt = psd_power(a.mat(), -0.5);
            const double r =
                op_norm(HermitianOp(hermitize(a_inv_sqrt * b.mat() * a_inv_sqrt)));
            worst = std::max(0.0, op_norm(HermitianOp(closed)) - r);
            break;
        }
        case 6: {  // resolvent quadrature
            const Matrix gap = dlog_lieb_quadrature(a, b, q).mat() - closed;
            worst = gap.cwiseAbs().maxCoeff() / scale;
            break;
        }
        case 7: {  // layer cake, panel mode
            const Matrix gap = layercake(a, b, q).mat() - closed;
            worst = gap.cwiseAbs().maxCoeff();
            break;
        }
        case 8: {  // layer cake, midpoint cross-check mode
            const Matrix gap = layercake(a, b, q, QuadMode::MidpointRefine).mat() - closed;
            worst = gap.cwiseAbs().maxCoeff();
            break;
        }
        case 9: {  // extremal decomposition vs the closed-form quotient
            const PsdOp b2 = random_psd(d, g.next());
            const Matrix gap =
                extremal_decomposition(a, b2, q).mat() - integral_quotient(a, b2).mat();
            worst = gap.cwiseAbs().maxCoeff();
            break;
        }
        case 10: {  // two-outcome completeness of the quotient
            const PsdOp b2 = random_psd(d, g.next());
            const Matrix sum = integral_quotient(a, b2).mat() + integral_quotient(b2, a).mat();
            worst = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
            break;
        }
        case 11: {  // change of variables for a cycling family of h
            const PsdOp b2 = random_psd(d, g.next());
            ScalarFnSpec h = ScalarFnSpec::power(1.0);
            switch (g.next() % 4) {
                case 0: h = ScalarFnSpec::polynomial({1.0}); break;
                case 1: h = ScalarFnSpec::power(1.0); break;
                case 2: h = ScalarFnSpec::polynomial({0.0, 0.5, 0.25, 0.125}); break;
                default:
                    h = ScalarFnSpec::table({0.0, 0.5, 1.0, 2.0, 6.0}, {0.0, 0.2, 0.5, 0.8, 1.0});
            }
            worst = change_of_variables_check(a, b2, h, q).gap;
            break;
        }
        default: {  // tracial minimum integral vs the closed form
            const PsdOp a2 = random_psd(d, g.next());
            const PsdOp b2 = random_psd(d, g.next());
            const double integral =
                tracial_min_integral(a2.base(), b2.base(), q);
            worst = std::abs(integral - helstrom_error(a2, b2));
            break;
        }
    }
    (*margins)[static_cast<std::size_t>(which)] = worst;
}

int run_verify_suite(const VerifyArgs& args, std::ostream& out) {
    const std::vector<Index> dims = parse_dims(args.dims);
    const bool want_calculus = args.suite == "calculus" || args.suite == "all";
    const bool want_inequalities = args.suite == "inequalities" || args.suite == "all";
    const bool want_bounds = args.suite == "bounds" || args.suite == "all";
    if (!want_calculus && !want_inequalities && !want_bounds)
        throw DomainError("verify: unknown suite '" + args.suite + "'");

    std::vector<PropertyStat> stats;

    if (want_calculus) {
        static const char* names[] = {
            "dlog_identity",    "dlog_scaling",   "dlog_linearity", "dlog_positivity",
            "dlog_conjugation", "dlog_norm",      "lieb_quadrature", "layercake_panel",
            "layercake_midpoint", "extremal_decomposition", "quotient_completeness",
            "change_of_variables", "tracial_minimum"};
        static const double tols[] = {1e-10, 1e-10, 1e-10, 1e-10, 1e-9, 1e-9, 1e-6,
                                      1e-10, 1e-5,  1e-10, 1e-9,  1e-5, 1e-7};
        constexpr int kProps = 13;
        std::vector<std::vector<double>> gaps(
            static_cast<std::size_t>(args.trials),
            std::vector<double>(kProps, 0.0));
        parallel_for(args.trials, args.threads, [&](long t) {
            for (int which = 0; which < kProps; ++which)
                calculus_trial(SplitMix64::derive(args.seed, static_cast<std::uint64_t>(t) * 131 +
                                                                 static_cast<std::uint64_t>(which)),
                               dims, which, &gaps[static_cast<std::size_t>(t)]);
        });
        for (int which = 0; which < kProps; ++which) {
            PropertyStat st;
            st.name = names[which];
            for (long t = 0; t < args.trials; ++t)
                st.add(tols[which] - gaps[static_cast<std::size_t>(t)][static_cast<std::size_t>(which)],
                       0.0);
            stats.push_back(st);
        }
    }

    if (want_inequalities) {
        const InequalityReport rep = inequality_suite(args.seed, args.trials, dims, args.threads);
        for (const auto& item : rep.items) {
            PropertyStat st;
            st.name = item.name;
            st.trials = item.trials;
            st.violations = item.violations;
            st.worst = item.worst_margin + 1e-9;  // slack convention as elsewhere
            stats.push_back(st);
        }
        // tilting margins across the alpha grid
        PropertyStat tilt;
        tilt.name = "tilting";
        std::vector<double> worst(static_cast<std::size_t>(args.trials));
        parallel_for(args.trials, args.threads, [&](long t) {
            SplitMix64 g(SplitMix64::derive(args.seed ^ 0x7111u, static_cast<std::uint64_t>(t)));
            const Index d = dims[static_cast<std::size_t>(g.next() % dims.size())];
            const PsdOp a = random_psd(d, g.next());
            const PsdOp b = random_psd(d, g.next());
            double w = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 20; ++i) {
                const double alpha = 0.5 + 0.025 * i;
                const TiltingReport rep2 = tilting_report(a, b, alpha);
                w = std::min(w, rep2.margin + 1e-10 * std::max(1.0, rep2.lhs));
            }
            worst[static_cast<std::size_t>(t)] = w;
        });
        for (double w : worst) tilt.add(w, 0.0);
        stats.push_back(tilt);
        // binary optimality chain
        PropertyStat chain;
        chain.name = "helstrom_chernoff_chain";
        std::vector<double> worst2(static_cast<std::size_t>(args.trials));
        parallel_for(args.trials, args.threads, [&](long t) {
            SplitMix64 g(SplitMix64::derive(args.seed ^ 0x51c2u, static_cast<std::uint64_t>(t)));
            const Index d = dims[static_cast<std::size_t>(g.next() % dims.size())];
            const double wa = 0.2 + 0.6 * g.next_double();
            const PsdOp a(Matrix(wa * random_density(d, g.next()).mat()));
            const PsdOp b(Matrix((1.0 - wa) * random_density(d, g.next()).mat()));
            const double err = helstrom_error(a, b);
            const ChernoffResult ch = chernoff_bound(a, b);
            const double cap = std::min(a.mat().trace().real(), b.mat().trace().real());
            worst2[static_cast<std::size_t>(t)] =
                std::min(ch.bound - err, cap - ch.bound) + 1e-10;
        });
        for (double w : worst2) chain.add(w, 0.0);
        stats.push_back(chain);
    }

    if (want_bounds) {
        PropertyStat cq, binning, ea, constrained, augustin;
        cq.name = "cq_bound_margin";
        binning.name = "cqsw_bound_margin";
        ea.name = "ea_bound_margin";
        constrained.name = "constrained_bound_margin";
        augustin.name = "augustin_residual";
        struct BoundMargins {
            double cq, binning, ea, constrained, augustin;
        };
        std::vector<BoundMargins> margins(static_cast<std::size_t>(args.trials));
        parallel_for(args.trials, args.threads, [&](long t) {
            SplitMix64 g(SplitMix64::derive(args.seed ^ 0xb0b0u, static_cast<std::uint64_t>(t)));
            const Index d = 2 + static_cast<Index>(g.next() % 2);
            const int k = 2 + static_cast<int>(g.next() % 2);
            const CqEnsemble ens = random_cq_ensemble(k, d, g.next());
            BoundMargins m{};

            SimConfig cfg;
            cfg.messages = 2 + static_cast<int>(g.next() % 2);
            cfg.mode = SimMode::Enumerate;
            cfg.threads = 1;
            double worst_cq = std::numeric_limits<double>::infinity();
            double worst_bin = worst_cq, worst_con = worst_cq;
            for (int i = 0; i <= 4; ++i) {
                cfg.alpha = 0.5 + 0.125 * i;
                const SimResult r1 = cq_random_coding(ens, cfg);
                worst_cq = std::min(worst_cq, r1.bound - r1.error_estimate);
                const SimResult r2 = cqsw_random_binning(ens, cfg);
                worst_bin = std::min(worst_bin, r2.bound - r2.error_estimate);
                std::vector<int> subset;
                for (int x = 0; x < k - 1; ++x) subset.push_back(x);
                const ConstrainedResult r3 = constrained_coding(ens, subset, cfg);
                worst_con = std::min(worst_con, r3.bound - r3.sim.error_estimate);
            }
            m.cq = worst_cq;
            m.binning = worst_bin;
            m.constrained = worst_con;

            const DensityOp theta = random_density(4, g.next());
            const SimResult r4 =
                ea_position_coding(QuantumChannel::identity(2), theta, 2, 2, 0.75);
            m.ea = r4.bound - r4.error_estimate;

            const AugustinResult aug =
                augustin_info(ens, RenyiOrder(0.5 + 0.5 * g.next_double()));
            m.augustin = 1e-10 - aug.residual;
            margins[static_cast<std::size_t>(t)] = m;
        });
        for (const auto& m : margins) {
            cq.add(m.cq, 1e-9);
            binning.add(m.binning, 1e-9);
            ea.add(m.ea, 1e-9);
            constrained.add(m.constrained, 1e-9);
            augustin.add(m.augustin, 0.0);
        }
        stats.push_back(cq);
        stats.push_back(binning);
        stats.push_back(ea);
        stats.push_back(constrained);
        stats.push_back(augustin);
    }

    CsvWriter csv(out, std::to_string(args.seed), "-");
    csv.header({"property", "trials", "violations", "worst_margin"});
    long total_violations = 0;
    for (const auto& st : stats) {
        csv.row({st.name, std::to_string(st.trials), std::to_string(st.violations),
                 fmt17(st.worst)});
        total_violations += st.violations;
    }
    return total_violations == 0 ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// constants / exponent / simulate / augustin
// ---------------------------------------------------------------------------

int run_constants(const std::string& grid_spec, std::ostream& out) {
    const std::vector<double> grid = parse_grid(grid_spec);
    for (double a : grid)
        if (a < 0.5 || a > 1.0) throw DomainError("constants: grid must lie in [1/2, 1]");
    CsvWriter csv(out, "-", "-");
    csv.header({"alpha", "c1", "c2", "c"});
    for (double a : grid)
        csv.row({fmt17(a), fmt17(tilting_c1(a)), fmt17(tilting_c2(a)), fmt17(tilting_c(a))});
    const CAlphaSup sup = c_alpha_sup();
    csv.row({fmt17(sup.alpha), fmt17(tilting_c1(sup.alpha)), fmt17(tilting_c2(sup.alpha)),
             fmt17(sup.value)});
    return kExitPass;
}

int run_exponent(const std::string& task, const std::string& input, const std::string& rates_spec,
                 std::ostream& out) {
    const Instance inst = load_instance(input);
    const std::vector<double> rates = parse_grid(rates_spec);
    ExponentCurve curve;
    if (task == "cq" || task == "cc" || task == "cqsw") {
        if (!inst.ensemble) throw DomainError("exponent: task needs a cq instance");
        if (task == "cq") curve = channel_exponent_sibson(*inst.ensemble, rates);
        else if (task == "cc") curve = channel_exponent_augustin(*inst.ensemble, rates);
        else curve = source_exponent_conditional(*inst.ensemble, rates);
    } else if (task == "ea") {
        if (!inst.state) throw DomainError("exponent: task ea needs a bipartite_state instance");
        curve = ea_exponent(*inst.state, inst.dim_r, inst.dim_b, rates);
    } else {
        throw DomainError("exponent: unknown task '" + task + "'");
    }
    CsvWriter csv(out, "-", std::to_string(fnv1a64_file(input)));
    csv.header({"rate", "exponent", "alpha_star"});
    for (std::size_t i = 0; i < curve.rates.size(); ++i)
        csv.row({fmt17(curve.rates[i]), fmt17(curve.values[i]), fmt17(curve.alphas[i])});
    return kExitPass;
}

struct SimulateArgs {
    std::string task;
    std::string input;
    std::string channel_file;
    std::string subset_spec;
    int messages = 2;
    std::string alpha_spec = "0.75";
    std::string mode = "enumerate";
    long samples = 1000;
    std::uint64_t seed = 0;
    int threads = 1;
};

int run_simulate(const SimulateArgs& args, std::ostream& out) {
    const Instance inst = load_instance(args.input);
    const std::vector<double> alphas = parse_grid(args.alpha_spec);

    SimConfig cfg;
    cfg.messages = args.messages;
    cfg.seed = args.seed;
    cfg.threads = args.threads;
    cfg.samples = args.samples;
    if (args.mode == "enumerate") cfg.mode = SimMode::Enumerate;
    else if (args.mode == "montecarlo") cfg.mode = SimMode::MonteCarlo;
    else throw DomainError("simulate: mode must be enumerate or montecarlo");

    std::string hash = std::to_string(fnv1a64_file(args.input));
    if (!args.channel_file.empty())
        hash += "+" + std::to_string(fnv1a64_file(args.channel_file));

    CsvWriter csv(out, std::to_string(args.seed), hash);
    csv.header({"task", "M", "alpha", "error", "std_err", "bound", "margin"});

    bool violated = false;
    for (double alpha : alphas) {
        cfg.alpha = alpha;
        SimResult r;
        if (args.task == "cq") {
            if (!inst.ensemble) throw DomainError("simulate: cq needs a cq instance");
            r = cq_random_coding(*inst.ensemble, cfg);
        } else if (args.task == "cqsw") {
            if (!inst.ensemble) throw DomainError("simulate: cqsw needs a cq instance");
            r = cqsw_random_binning(*inst.ensemble, cfg);
        } else if (args.task == "constrained") {
            if (!inst.ensemble) throw DomainError("simulate: constrained needs a cq instance");
            if (args.subset_spec.empty())
                throw DomainError("simulate: constrained needs --subset");
            std::vector<int> subset;
            for (double v : parse_grid(args.subset_spec))
                subset.push_back(static_cast<int>(v));
            r = constrained_coding(*inst.ensemble, subset, cfg).sim;
        } else if (args.task == "ea") {
            if (!inst.state) throw DomainError("simulate: ea needs a bipartite_state instance");
            QuantumChannel ch = QuantumChannel::identity(inst.state->dim() / inst.dim_r);
            if (!args.channel_file.empty()) {
                const Instance cinst = load_instance(args.channel_file);
                if (!cinst.channel) throw DomainError("simulate: --channel must be quantum_channel");
                ch = *cinst.channel;
            }
            r = ea_position_coding(ch, *inst.state, inst.dim_r, cfg.messages, alpha);
            r.seed = cfg.seed;
        } else if (args.task == "unassisted") {
            if (!inst.ensemble) throw DomainError("simulate: unassisted needs a cq instance");
            QuantumChannel ch = QuantumChannel::identity(inst.ensemble->dim());
            if (!args.channel_file.empty()) {
                const Instance cinst = load_instance(args.channel_file);
                if (!cinst.channel) throw DomainError("simulate: --channel must be quantum_channel");
                ch = *cinst.channel;
            }
            r = unassisted_coding(ch, *inst.ensemble, cfg);
        } else {
            throw DomainError("simulate: unknown task '" + args.task + "'");
        }
        const double margin = r.bound - r.error_estimate;
        if (margin < -3.0 * r.std_err - 1e-9) violated = true;
        csv.row({args.task, std::to_string(cfg.messages), fmt17(alpha), fmt17(r.error_estimate),
                 fmt17(r.std_err), fmt17(r.bound), fmt17(margin)});
    }
    return violated ? kExitViolation : kExitPass;
}

int run_augustin(const std::string& input, double alpha, double tol, int max_iter,
                 std::ostream& out) {
    const Instance inst = load_instance(input);
    if (!inst.ensemble) throw DomainError("augustin: input must be a cq instance");
    const AugustinResult res = augustin_info(*inst.ensemble, RenyiOrder(alpha), 1.0, tol, max_iter);
    Eigen::SelfAdjointEigenSolver<Matrix> es(res.mean.mat(), Eigen::EigenvaluesOnly);
    std::ostringstream eigs;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (i) eigs << ';';
        eigs << fmt17(es.eigenvalues()(i));
    }
    CsvWriter csv(out, "-", std::to_string(fnv1a64_file(input)));
    csv.header({"alpha", "value", "iterations", "residual", "mean_eigenvalues"});
    csv.row({fmt17(alpha), fmt17(res.value), std::to_string(res.iterations), fmt17(res.residual),
             eigs.str()});
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum packing-problem numerics"};
    app.require_subcommand(1);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run property suites");
    verify->add_option("suite", verify_args.suite, "calculus | inequalities | bounds | all");
    verify->add_option("--seed", verify_args.seed, "base seed");
    verify->add_option("--trials", verify_args.trials, "trials per property")
        ->check(CLI::PositiveNumber);
    verify->add_option("--dims", verify_args.dims, "comma list of dimensions");
    verify->add_option("--threads", verify_args.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    std::string constants_grid = "0.5:1:0.005";
    CLI::App* constants = app.add_subcommand("constants", "tilting constants table");
    constants->add_option("--alpha-grid", constants_grid, "comma list or start:stop:step");

    std::string exp_task, exp_input, exp_rates = "0:1:0.1";
    CLI::App* exponent = app.add_subcommand("exponent", "error-exponent curves");
    exponent->add_option("--task", exp_task, "cq | cc | cqsw | ea")->required();
    exponent->add_option("--input", exp_input, "instance file")->required();
    exponent->add_option("--rates", exp_rates, "comma list or start:stop:step");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "decoder simulations vs bounds");
    simulate->add_option("--task", sim_args.task, "cq | constrained | cqsw | ea | unassisted")
        ->required();
    simulate->add_option("--input", sim_args.input, "instance file")->required();
    simulate->add_option("--channel", sim_args.channel_file, "quantum_channel instance (ea/unassisted)");
    simulate->add_option("--subset", sim_args.subset_spec, "comma list of letters (constrained)");
    simulate->add_option("--M", sim_args.messages, "message count")->check(CLI::PositiveNumber);
    simulate->add_option("--alpha", sim_args.alpha_spec, "alpha value(s)");
    simulate->add_option("--mode", sim_args.mode, "enumerate | montecarlo");
    simulate->add_option("--samples", sim_args.samples, "Monte-Carlo samples");
    simulate->add_option("--seed", sim_args.seed, "seed (decimal uint64)");
    simulate->add_option("--threads", sim_args.threads, "worker threads")
        ->check(CLI::PositiveNumber);

    std::string aug_input;
    double aug_alpha = 0.75, aug_tol = 1e-10;
    int aug_max_iter = 10000;
    CLI::App* augustin = app.add_subcommand("augustin", "Augustin information solver");
    augustin->add_option("--input", aug_input, "cq instance file")->required();
    augustin->add_option("--alpha", aug_alpha, "order in (0,1]");
    augustin->add_option("--tol", aug_tol, "trace-norm step tolerance");
    augustin->add_option("--max-iter", aug_max_iter, "iteration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify_suite(verify_args, std::cout);
        if (constants->parsed()) return run_constants(constants_grid, std::cout);
        if (exponent->parsed()) return run_exponent(exp_task, exp_input, exp_rates, std::cout);
        if (simulate->parsed()) return run_simulate(sim_args, std::cout);
        if (augustin->parsed())
            return run_augustin(aug_input, aug_alpha, aug_tol, aug_max_iter, std::cout);
    } catch (const DidNotConverge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const EnumerationTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

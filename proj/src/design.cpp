#include "dmpclab/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dmpclab/errors.hpp"
#include "dmpclab/linalg.hpp"

namespace dmpclab {

namespace {
constexpr double kEigTol = 1e-9;
}

TerminalSpec make_terminal_spec(const Eigen::MatrixXd& S, double epsilon_sq, double sigma,
                                int agent_count) {
    if (!is_symmetric(S, 1e-9))
        throw DimensionMismatch("terminal weight S must be symmetric");
    const Eigen::VectorXd ev = symmetric_spectrum(S);
    if (ev(0) < -1e-9)
        throw DimensionMismatch("terminal weight S must be positive semidefinite");
    if (epsilon_sq <= 0.0)
        throw DimensionMismatch("epsilon_sq must be positive");
    if (sigma <= 0.0)
        throw DimensionMismatch("sigma must be positive");
    if (agent_count < 2)
        throw DimensionMismatch("terminal spec needs at least 2 agents");
    return TerminalSpec{S, epsilon_sq, sigma, agent_count};
}

ConsensusGain make_consensus_gain(const Eigen::MatrixXd& K, const AgentModel& model,
                                  const Topology& topology) {
    if (K.rows() != model.input_dim() || K.cols() != model.state_dim())
        throw DimensionMismatch("gain K must be m x n");
    const auto entries = check_lemma1(model, topology, K);
    if (!lemma1_pass(entries))
        throw NotStabilizable("K does not satisfy rho(A + lambda_i B K) < 1 for all nonzero lambda_i");
    return ConsensusGain{K};
}

std::vector<Lemma1Entry> check_lemma1(const AgentModel& model, const Topology& topology,
                                      const Eigen::MatrixXd& K) {
    if (K.rows() != model.input_dim() || K.cols() != model.state_dim())
        throw DimensionMismatch("gain K must be m x n");
    std::vector<Lemma1Entry> entries;
    for (Eigen::Index i = 0; i < topology.eigenvalues.size(); ++i) {
        const double lambda = topology.eigenvalues(i);
        if (lambda <= kEigTol) continue;
        const double radius = spectral_radius(model.A + lambda * model.B * K);
        entries.push_back({lambda, radius});
    }
    return entries;
}

bool lemma1_pass(const std::vector<Lemma1Entry>& entries) {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Lemma1Entry& e) { return e.radius < 1.0 - kEigTol; });
}

Lemma2Result check_lemma2(const AgentModel& model, const Eigen::MatrixXd& K, int horizon,
                          int tau_bar) {
    if (tau_bar < 1 || tau_bar >= horizon)
        throw InvalidHorizon("delay bound must satisfy 1 <= tau_bar < N, got tau_bar=" +
                             std::to_string(tau_bar) + ", N=" + std::to_string(horizon));
    const Eigen::MatrixXd BK = model.B * K;
    const Eigen::MatrixXd AK = model.A + BK;
    const Eigen::Index n = model.state_dim();

    // Powers of A_K up to N.
    std::vector<Eigen::MatrixXd> akp(static_cast<std::size_t>(horizon) + 1);
    akp[0] = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= horizon; ++k) akp[static_cast<std::size_t>(k)] = akp[static_cast<std::size_t>(k - 1)] * AK;

    double worst = 0.0;
    for (int tau = 1; tau <= tau_bar; ++tau) {
        const int n_prime = horizon - tau;
        // First family: k in [1, N'-1], full convolution sum.
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        for (int k = 1; k <= n_prime - 1; ++k) {
            acc += akp[static_cast<std::size_t>(k - 1)] * BK; // adds A_K^{k-1} BK
            worst = std::max(worst, spectral_radius(acc + akp[static_cast<std::size_t>(k)]));
        }
        // Second family: k in [N', N-1], sum truncated to s in [0, N'-1].
        for (int k = n_prime; k <= horizon - 1; ++k) {
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
            for (int s = 0; s <= n_prime - 1; ++s)
                sum += akp[static_cast<std::size_t>(k - 1 - s)] * BK;
            worst = std::max(worst, spectral_radius(sum + akp[static_cast<std::size_t>(k)]));
        }
    }
    return Lemma2Result{worst, worst <= 1.0 + kEigTol};
}

std::vector<double> r_set_radii(const AgentModel& model, const Eigen::MatrixXd& K, double eta,
                                int horizon, int n_prime) {
    if (n_prime > horizon)
        throw InvalidHorizon("N' must not exceed N");
    const Eigen::MatrixXd BK = model.B * K;
    const Eigen::MatrixXd AK = model.A + BK;
    const Eigen::Index n = model.state_dim();

    std::vector<Eigen::MatrixXd> akp(static_cast<std::size_t>(horizon) + 1);
    akp[0] = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= horizon; ++k) akp[static_cast<std::size_t>(k)] = akp[static_cast<std::size_t>(k - 1)] * AK;

    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(horizon));
    radii.push_back(eta); // R_i^0 = W = Delta
    for (int k = 1; k <= horizon - 1; ++k) {
        const int terms = k < n_prime ? k : n_prime;
        double sum = 0.0;
        for (int s = 0; s <= terms - 1; ++s)
            sum += two_norm(akp[static_cast<std::size_t>(k - 1 - s)] * BK);
        sum += two_norm(akp[static_cast<std::size_t>(k)]);
        radii.push_back(sum * eta);
    }
    return radii;
}

Eigen::VectorXd tighten_input_box(const Eigen::VectorXd& u_max, const Eigen::MatrixXd& K,
                                  double eta) {
    if (u_max.size() != K.rows())
        throw DimensionMismatch("u_max must have one entry per row of K");
    if (eta < 0.0)
        throw DimensionMismatch("eta must be nonnegative");
    Eigen::VectorXd tightened(u_max.size());
    for (Eigen::Index r = 0; r < K.rows(); ++r) {
        // support of K Delta along coordinate r is eta * ||k_r||_2
        tightened(r) = u_max(r) - eta * K.row(r).norm();
        if (tightened(r) <= 0.0)
            throw EmptyTightenedSet("tightened input bound for channel " + std::to_string(r) +
                                    " is " + std::to_string(tightened(r)));
    }
    return tightened;
}

namespace {

double terminal_lhs(const TerminalSpec& spec, const Eigen::VectorXd& x_i,
                    const std::vector<Eigen::VectorXd>& neighbor_states,
                    const std::vector<double>& weights) {
    if (neighbor_states.size() != weights.size())
        throw DimensionMismatch("one weight per neighbor state required");
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    if (std::abs(wsum - 1.0) > 1e-9)
        throw DimensionMismatch("neighbor weights must sum to 1, got " + std::to_string(wsum));
    const Eigen::VectorXd Sx = spec.S * x_i;
    double lhs = 0.0;
    for (std::size_t j = 0; j < neighbor_states.size(); ++j) {
        if (neighbor_states[j].size() != x_i.size())
            throw DimensionMismatch("neighbor state dimension mismatch");
        lhs += weights[j] * Sx.dot(x_i - neighbor_states[j]);
    }
    return lhs;
}

} // namespace

TerminalEvaluation terminal_membership(const TerminalSpec& spec, const Eigen::VectorXd& x_i,
                                       const std::vector<Eigen::VectorXd>& neighbor_states,
                                       const std::vector<double>& weights) {
    const double lhs = terminal_lhs(spec, x_i, neighbor_states, weights);
    return TerminalEvaluation{lhs, lhs <= spec.level() + 1e-9};
}

TerminalEvaluation terminal_membership_tightened(const TerminalSpec& spec, const TubeSpec& tube,
                                                 const Eigen::VectorXd& x_i,
                                                 const std::vector<Eigen::VectorXd>& neighbor_states,
                                                 const std::vector<double>& weights) {
    const double lhs = terminal_lhs(spec, x_i, neighbor_states, weights);
    const Eigen::VectorXd ev = symmetric_spectrum(spec.S);
    const double lmax = ev(ev.size() - 1);
    double max_neighbor = 0.0;
    for (const auto& xj : neighbor_states) max_neighbor = std::max(max_neighbor, xj.norm());
    // First-order support bound of the quadratic form over the eta-ball.
    const double margin = tube.eta * (2.0 * lmax * (x_i.norm() + max_neighbor) + lmax * tube.eta);
    const double level = spec.level() - margin;
    return TerminalEvaluation{lhs, lhs <= level + 1e-9};
}

FeasibilityCertificate make_certificate(const AgentModel& model, const Topology& topology,
                                        const Eigen::MatrixXd& K, const TubeSpec& tube,
                                        int horizon, int tau_bar) {
    FeasibilityCertificate cert;
    cert.eta = tube.eta;
    cert.lemma1_radii = check_lemma1(model, topology, K);
    cert.lemma1_pass = lemma1_pass(cert.lemma1_radii);

    const Lemma2Result l2 = check_lemma2(model, K, horizon, tau_bar);
    cert.lemma2_max_radius = l2.max_radius;
    cert.lemma2_pass = l2.pass;

    // Worst case over every realizable N' = N - tau.
    cert.r_set_radii.assign(static_cast<std::size_t>(horizon), 0.0);
    for (int tau = 1; tau <= tau_bar; ++tau) {
        const auto radii = r_set_radii(model, K, tube.eta, horizon, horizon - tau);
        for (std::size_t k = 0; k < radii.size(); ++k)
            cert.r_set_radii[k] = std::max(cert.r_set_radii[k], radii[k]);
    }
    cert.r_set_pass = std::all_of(cert.r_set_radii.begin(), cert.r_set_radii.end(),
                                  [&](double r) { return r <= tube.eta * (1.0 + 1e-9) + 1e-12; });

    try {
        cert.tightened_u_max = tighten_input_box(model.u_max, K, tube.eta);
        cert.tightened_pass = true;
    } catch (const EmptyTightenedSet&) {
        cert.tightened_u_max.resize(K.rows());
        for (Eigen::Index r = 0; r < K.rows(); ++r)
            cert.tightened_u_max(r) = model.u_max(r) - tube.eta * K.row(r).norm();
        cert.tightened_pass = false;
    }

    cert.pass = cert.lemma1_pass && cert.lemma2_pass && cert.r_set_pass && cert.tightened_pass;
    return cert;
}

} // namespace dmpclab

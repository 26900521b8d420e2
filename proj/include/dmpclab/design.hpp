#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dmpclab/dynamics.hpp"
#include "dmpclab/topology.hpp"

namespace dmpclab {

// Estimation-error ball {d in R^n : ||d|| <= eta} used as tube cross-section.
struct TubeSpec {
    double eta = 0.0;
};

// Per-agent terminal set
//   X_i^f = { x_i : sum_j a_ij x_i^T S (x_i - x_j) <= epsilon_sq / agent_count }.
// sigma only scales the stacked-set view sigma L (x) S and defaults to 1.
struct TerminalSpec {
    Eigen::MatrixXd S; // symmetric PSD
    double epsilon_sq = 0.0;
    double sigma = 1.0;
    int agent_count = 0;

    double level() const { return epsilon_sq / agent_count; }
};

TerminalSpec make_terminal_spec(const Eigen::MatrixXd& S, double epsilon_sq, double sigma,
                                int agent_count);

// Pre-designed consensus gain; construction verifies the consensus condition
// rho(A + lambda_i B K) < 1 for every nonzero Laplacian eigenvalue.
struct ConsensusGain {
    Eigen::MatrixXd K;
};

ConsensusGain make_consensus_gain(const Eigen::MatrixXd& K, const AgentModel& model,
                                  const Topology& topology);

struct Lemma1Entry {
    double lambda = 0.0;
    double radius = 0.0;
};

// One (lambda_i, rho(A + lambda_i B K)) entry per nonzero Laplacian eigenvalue.
std::vector<Lemma1Entry> check_lemma1(const AgentModel& model, const Topology& topology,
                                      const Eigen::MatrixXd& K);

bool lemma1_pass(const std::vector<Lemma1Entry>& entries);

struct Lemma2Result {
    double max_radius = 0.0;
    bool pass = false;
};

// Both spectral-radius families over every realizable N' = N - tau,
// tau in [1, tau_bar]; pass iff the worst radius is <= 1 (+1e-9).
Lemma2Result check_lemma2(const AgentModel& model, const Eigen::MatrixXd& K, int horizon,
                          int tau_bar);

// Norm-based outer radii of the reachable-error sets R_i^k, k in [0, N-1],
// for a single N'. Entry 0 equals eta.
std::vector<double> r_set_radii(const AgentModel& model, const Eigen::MatrixXd& K, double eta,
                                int horizon, int n_prime);

// Per-channel bounds of the eroded input box U_i (-) K Delta; channel r loses
// eta * ||row_r(K)||. Throws EmptyTightenedSet if a bound drops to <= 0.
Eigen::VectorXd tighten_input_box(const Eigen::VectorXd& u_max, const Eigen::MatrixXd& K,
                                  double eta);

struct TerminalEvaluation {
    double lhs = 0.0;
    bool member = false;
};

TerminalEvaluation terminal_membership(const TerminalSpec& spec, const Eigen::VectorXd& x_i,
                                       const std::vector<Eigen::VectorXd>& neighbor_states,
                                       const std::vector<double>& weights);

// Conservative test of the eroded terminal set X_i^f (-) Delta: the level is
// shrunk by a first-order support bound of the quadratic form over the ball.
TerminalEvaluation terminal_membership_tightened(const TerminalSpec& spec, const TubeSpec& tube,
                                                 const Eigen::VectorXd& x_i,
                                                 const std::vector<Eigen::VectorXd>& neighbor_states,
                                                 const std::vector<double>& weights);

// Offline feasibility certificate. The Lemma 2 spectral check and the
// norm-based R_i^k containment check are reported separately; `pass` requires
// all four families.
struct FeasibilityCertificate {
    std::vector<Lemma1Entry> lemma1_radii;
    double lemma2_max_radius = 0.0;
    std::vector<double> r_set_radii; // worst case over realizable N', per k
    Eigen::VectorXd tightened_u_max; // may contain non-positive entries
    double eta = 0.0;
    bool lemma1_pass = false;
    bool lemma2_pass = false;
    bool r_set_pass = false;
    bool tightened_pass = false;
    bool pass = false;
};

FeasibilityCertificate make_certificate(const AgentModel& model, const Topology& topology,
                                        const Eigen::MatrixXd& K, const TubeSpec& tube,
                                        int horizon, int tau_bar);

} // namespace dmpclab

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dmpclab/design.hpp"
#include "dmpclab/dynamics.hpp"
#include "dmpclab/network.hpp"

namespace dmpclab {

struct NeighborAssumed {
    int id = -1;
    double weight = 0.0;
    Trajectory values; // length N+1
};

// One agent's instance of the robust DMPC problem: quadratic cost in the
// correction sequence, input box, tube around the own assumed trajectory and
// a convex quadratic terminal constraint against assumed neighbor endpoints.
struct DmpcProblem {
    AgentModel model;
    Eigen::MatrixXd K;
    int horizon = 0;    // N
    Eigen::MatrixXd P;  // m x m positive definite
    TubeSpec tube;
    TerminalSpec terminal;
    Eigen::VectorXd x_now;
    std::optional<Trajectory> assumed_self;     // tube centers; absent at t = 0
    std::vector<NeighborAssumed> assumed_neighbors;
    Eigen::VectorXd u_box;                      // enforced input bounds (defaults to model.u_max)

    // weighted neighbor average sum_j a_ij xhat_j(k)
    Eigen::VectorXd neighbor_average(int k) const;
};

enum class SolveStatus { Optimal, FeasibleFallback, Infeasible };

struct ConstraintResiduals {
    double box = 0.0;      // max over k, channels of |u| - bound
    double tube = 0.0;     // max over k in [0, N-1] of ||x - xhat|| - eta
    double terminal = 0.0; // terminal lhs - level
    double max() const { return std::max(box, std::max(tube, terminal)); }
};

struct DmpcSolution {
    std::vector<Eigen::VectorXd> c_star; // N entries
    std::vector<Eigen::VectorXd> u_star; // N entries
    std::vector<Eigen::VectorXd> x_star; // N+1 entries
    double cost = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
    ConstraintResiduals residuals;       // against the enforced constraint set
    bool terminal_relaxed = false;       // terminal level raised to the reachable minimum
    double terminal_level = 0.0;         // level actually enforced
    double terminal_excess = 0.0;        // lhs over the nominal level (0 when not relaxed)
    int outer_iterations = 0;
};

struct SolverOptions {
    double outer_tol = 1e-8;  // constraint residual target of the AL loop
    double inner_tol = 1e-10; // projected-gradient norm target
    int max_outer = 200;
    int max_inner = 2000;
    double feas_tol = 1e-6;   // residual level accepted as feasible
    bool terminal_softstart = true;
    bool input_tightening = false;
};

// Exact forward recursion x(k+1) = A x(k) + B u(k) with
// u(k) = K (x(k) - sum_j a_ij xhat_j(k)) + c(k).
std::pair<std::vector<Eigen::VectorXd>, std::vector<Eigen::VectorXd>>
rollout(const DmpcProblem& problem, const std::vector<Eigen::VectorXd>& c_seq);

double cost(const std::vector<Eigen::VectorXd>& c_seq, const Eigen::MatrixXd& P);

// Constraint residuals of a correction sequence, before any optimization.
ConstraintResiduals evaluate_candidate(const DmpcProblem& problem,
                                       const std::vector<Eigen::VectorXd>& c_seq);

// Shifted candidate per the recursive-feasibility construction: entries that
// overlap the stale solution are copied at equal absolute prediction times,
// the tail is zero. `stamp` is the time the previous solution was computed;
// `t_next` the time the candidate is for. Throws StaleSolution when stamp
// lies outside [t_next - tau_bar, t_next - 1].
std::vector<Eigen::VectorXd> candidate(const std::vector<Eigen::VectorXd>& prev_c, long stamp,
                                       long t_next, int horizon, int tau_bar);

// Augmented-Lagrangian outer loop on the tube and terminal constraints with a
// box-projected BB gradient inner loop. Optionally warm-started.
DmpcSolution solve(const DmpcProblem& problem, const SolverOptions& options,
                   const std::vector<Eigen::VectorXd>* warm_start = nullptr);

} // namespace dmpclab

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dmpclab {

// Homogeneous agent dynamics x(t+1) = A x(t) + B u(t) with an infinity-norm
// input box |u_r| <= u_max(r).
struct AgentModel {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::VectorXd u_max; // per input channel, strictly positive

    int state_dim() const { return static_cast<int>(A.rows()); }
    int input_dim() const { return static_cast<int>(B.cols()); }
};

// Validates dimensions, u_max > 0 and stabilizability of (A, B): every
// uncontrollable mode must be strictly inside the unit circle.
AgentModel make_agent_model(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::VectorXd& u_max);

// Exact nominal propagation A x + B u.
Eigen::VectorXd step(const AgentModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u);

// Membership in the input box with a 1e-9 feasibility tolerance.
bool input_admissible(const AgentModel& model, const Eigen::VectorXd& u);

// Stacked state col(x_1, ..., x_M) at a time index.
struct MasState {
    Eigen::VectorXd stacked;
    int agent_count = 0;
    long time = 0;

    int state_dim() const { return agent_count > 0 ? static_cast<int>(stacked.size()) / agent_count : 0; }
    Eigen::VectorXd agent(int i) const {
        return stacked.segment(static_cast<Eigen::Index>(i) * state_dim(), state_dim());
    }
};

MasState stack_states(const std::vector<Eigen::VectorXd>& states, long time);

} // namespace dmpclab

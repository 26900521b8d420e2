#include "dmpclab/dynamics.hpp"

#include <string>

#include "dmpclab/errors.hpp"
#include "dmpclab/linalg.hpp"

namespace dmpclab {

AgentModel make_agent_model(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::VectorXd& u_max) {
    if (A.rows() != A.cols())
        throw DimensionMismatch("A must be square");
    if (B.rows() != A.rows())
        throw DimensionMismatch("B must have as many rows as A");
    if (u_max.size() != B.cols())
        throw DimensionMismatch("u_max must have one entry per input channel");
    if ((u_max.array() <= 0.0).any())
        throw DimensionMismatch("u_max must be strictly positive so the input box contains the origin");

    // Stabilizability: modes outside the controllable subspace must be Schur.
    const Eigen::MatrixXd ctrb = controllable_subspace(A, B);
    if (ctrb.cols() < A.rows()) {
        const Eigen::Index n = A.rows();
        const Eigen::Index r = ctrb.cols();
        // Orthogonal complement via full QR of the controllable basis.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ctrb);
        const Eigen::MatrixXd q = qr.householderQ();
        const Eigen::MatrixXd comp = q.rightCols(n - r);
        const Eigen::MatrixXd uncontrollable = comp.transpose() * A * comp;
        if (spectral_radius(uncontrollable) >= 1.0 - 1e-9)
            throw NotStabilizable("uncontrollable mode with |eigenvalue| >= 1");
    }

    return AgentModel{A, B, u_max};
}

Eigen::VectorXd step(const AgentModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    if (x.size() != model.state_dim())
        throw DimensionMismatch("state has dimension " + std::to_string(x.size()) + ", expected " +
                                std::to_string(model.state_dim()));
    if (u.size() != model.input_dim())
        throw DimensionMismatch("input has dimension " + std::to_string(u.size()) + ", expected " +
                                std::to_string(model.input_dim()));
    return model.A * x + model.B * u;
}

bool input_admissible(const AgentModel& model, const Eigen::VectorXd& u) {
    if (u.size() != model.input_dim())
        throw DimensionMismatch("input has dimension " + std::to_string(u.size()) + ", expected " +
                                std::to_string(model.input_dim()));
    return (u.cwiseAbs().array() <= model.u_max.array() + 1e-9).all();
}

MasState stack_states(const std::vector<Eigen::VectorXd>& states, long time) {
    MasState s;
    s.agent_count = static_cast<int>(states.size());
    s.time = time;
    if (states.empty()) return s;
    const Eigen::Index n = states.front().size();
    s.stacked.resize(n * static_cast<Eigen::Index>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].size() != n)
            throw DimensionMismatch("agent states have inconsistent dimensions");
        s.stacked.segment(static_cast<Eigen::Index>(i) * n, n) = states[i];
    }
    return s;
}

} // namespace dmpclab

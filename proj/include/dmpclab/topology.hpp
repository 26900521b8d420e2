#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dmpclab {

// Undirected communication graph with a_ij = 1/|N_i| weighting, its Laplacian
// L = I - A and the Laplacian spectrum. Immutable after construction.
struct Topology {
    int agent_count = 0;
    std::vector<std::vector<int>> neighbors; // 0-based, ascending per agent
    Eigen::MatrixXd adjacency;               // weighted, row-stochastic
    Eigen::MatrixXd laplacian;
    Eigen::VectorXd eigenvalues;             // ascending, eigenvalues(0) ~ 0

    double weight(int i, int j) const { return adjacency(i, j); }
    int degree(int i) const { return static_cast<int>(neighbors[static_cast<std::size_t>(i)].size()); }
};

// Edges are 1-based unordered pairs, as they appear in scenario files.
// Throws InvalidEdge, AsymmetricWeights, DisconnectedGraph.
Topology build_topology(const std::vector<std::pair<int, int>>& edges, int agent_count);

// Ascending Laplacian eigenvalues; checks lambda_1 ~ 0 and lambda_i > 0 for i >= 2.
Eigen::VectorXd laplacian_spectrum(const Topology& topology);

} // namespace dmpclab

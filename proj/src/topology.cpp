#include "dmpclab/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "dmpclab/errors.hpp"
#include "dmpclab/linalg.hpp"

namespace dmpclab {

namespace {

// Union-find connectivity; the test suite cross-checks against a BFS oracle.
class DisjointSets {
  public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int a) {
        while (parent_[static_cast<std::size_t>(a)] != a) {
            parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
            a = parent_[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void merge(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

  private:
    std::vector<int> parent_;
};

} // namespace

Topology build_topology(const std::vector<std::pair<int, int>>& edges, int agent_count) {
    if (agent_count < 2)
        throw InvalidEdge("agent count must be at least 2, got " + std::to_string(agent_count));

    Topology topo;
    topo.agent_count = agent_count;
    topo.neighbors.assign(static_cast<std::size_t>(agent_count), {});

    std::set<std::pair<int, int>> seen;
    for (const auto& [a1, b1] : edges) {
        if (a1 < 1 || a1 > agent_count || b1 < 1 || b1 > agent_count)
            throw InvalidEdge("edge (" + std::to_string(a1) + "," + std::to_string(b1) +
                              ") out of range [1," + std::to_string(agent_count) + "]");
        if (a1 == b1)
            throw InvalidEdge("self-loop at agent " + std::to_string(a1));
        const int a = std::min(a1, b1) - 1;
        const int b = std::max(a1, b1) - 1;
        if (!seen.insert({a, b}).second)
            throw InvalidEdge("duplicate edge (" + std::to_string(a1) + "," + std::to_string(b1) + ")");
        topo.neighbors[static_cast<std::size_t>(a)].push_back(b);
        topo.neighbors[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : topo.neighbors) {
        std::sort(nbrs.begin(), nbrs.end());
        if (nbrs.empty())
            throw DisconnectedGraph("an agent has no neighbors");
    }

    // a_ij = 1/|N_i| is symmetric only for equal degrees; the analysis relies
    // on an orthogonal diagonalization of L, so degree mismatches are rejected.
    for (const auto& [e1, e2] : seen) {
        if (topo.degree(e1) != topo.degree(e2))
            throw AsymmetricWeights("edge (" + std::to_string(e1 + 1) + "," + std::to_string(e2 + 1) +
                                    "): degrees " + std::to_string(topo.degree(e1)) + " vs " +
                                    std::to_string(topo.degree(e2)) + " give a_ij != a_ji");
    }

    DisjointSets dsu(agent_count);
    for (const auto& [a, b] : seen) dsu.merge(a, b);
    for (int i = 1; i < agent_count; ++i)
        if (dsu.find(i) != dsu.find(0))
            throw DisconnectedGraph("communication graph is not connected");

    topo.adjacency = Eigen::MatrixXd::Zero(agent_count, agent_count);
    for (int i = 0; i < agent_count; ++i)
        for (int j : topo.neighbors[static_cast<std::size_t>(i)])
            topo.adjacency(i, j) = 1.0 / topo.degree(i);
    topo.laplacian = Eigen::MatrixXd::Identity(agent_count, agent_count) - topo.adjacency;
    topo.eigenvalues = laplacian_spectrum(topo);
    return topo;
}

Eigen::VectorXd laplacian_spectrum(const Topology& topology) {
    Eigen::VectorXd ev = symmetric_spectrum(topology.laplacian);
    if (std::abs(ev(0)) > 1e-9)
        throw EigenSolverFailure("Laplacian kernel eigenvalue out of tolerance: " + std::to_string(ev(0)));
    for (Eigen::Index i = 1; i < ev.size(); ++i)
        if (ev(i) <= 0.0)
            throw DisconnectedGraph("nonzero Laplacian eigenvalue is not positive");
    return ev;
}

} // namespace dmpclab

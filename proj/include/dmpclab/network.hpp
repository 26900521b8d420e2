#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dmpclab/dynamics.hpp"
#include "dmpclab/topology.hpp"

namespace dmpclab {

// Predicted state sequence x(t'+k|t'), k in [0, N].
using Trajectory = std::vector<Eigen::VectorXd>;

struct BroadcastMessage {
    int sender = -1;
    long stamp = 0;
    Trajectory trajectory;
};

enum class DelayMode { Fixed, Uniform, Sequence };

struct DelayConfig {
    DelayMode mode = DelayMode::Uniform;
    int tau_bar = 1;
    std::uint64_t seed = 0;
    int fixed_value = -1;          // Fixed mode; defaults to tau_bar
    std::vector<int> sequence;     // Sequence mode, delays for t = 1, 2, ...
    bool per_edge = false;         // one delay per (sender, receiver) pair
};

// Deterministic delay realization: tau(0) = 0 and tau(t) in [1, tau_bar] for
// t >= 1. Samples are pure functions of (seed, t[, edge]) so realizations are
// reproducible regardless of query order.
class DelayProcess {
  public:
    explicit DelayProcess(const DelayConfig& config);

    int sample(long t) const;
    int sample(long t, int sender, int receiver) const;
    const DelayConfig& config() const { return config_; }

  private:
    DelayConfig config_;
};

// Delayed broadcast mailbox. A message stamped t' with delivery delay d
// becomes visible at t' + d; messages from one sender are exposed in stamp
// order (a stamp is hidden until every earlier stamp of that sender is
// deliverable).
class Mailbox {
  public:
    Mailbox(int agent_count, int tau_bar);

    // delivery_delay must lie in [1, tau_bar]; 0 is allowed only for stamp 0.
    void enqueue(const BroadcastMessage& message, int delivery_delay);
    // Per-edge variant; delivery time applies to one receiver only.
    void enqueue(const BroadcastMessage& message, int receiver, int delivery_delay);

    bool visible(int sender, int receiver, long stamp, long t) const;
    const Trajectory* find(int sender, long stamp) const;
    int tau_bar() const { return tau_bar_; }

  private:
    struct Slot {
        Trajectory trajectory;
        std::map<int, long> delivery; // receiver -> delivery time (-1 key: all)
    };
    long effective_delivery(int sender, int receiver, long stamp) const;

    int agent_count_ = 0;
    int tau_bar_ = 1;
    std::vector<std::map<long, Slot>> per_sender_;
};

// Largest t' in [max(0, t - tau_bar), t - 1] whose stamped-t' message from
// every listed sender is visible to `receiver` at time t.
long common_base_time(const Mailbox& mailbox, int receiver, const std::vector<int>& senders,
                      long t);

// Assumed predicted state sequence of one agent at time t, built from the
// common-stamp broadcast set.
struct AssumedTrajectory {
    int owner = -1;
    long base_stamp = 0;
    int n_prime = 0;   // entries 0..n_prime are copied from the broadcast
    Trajectory values; // length N+1
};

// Copies each trajectory for k in [0, N'], N' = t' + N - t, then extends all
// agents jointly under the predesigned protocol u = K sum_j a_ij (x_i - x_j)
// with zero correction. `messages` must hold one stamped-t' trajectory per
// agent, indexed by sender.
std::vector<AssumedTrajectory> build_assumed(const std::vector<BroadcastMessage>& messages,
                                             long t, const AgentModel& model,
                                             const Eigen::MatrixXd& K, const Topology& topology);

} // namespace dmpclab

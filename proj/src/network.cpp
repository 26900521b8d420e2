#include "dmpclab/network.hpp"

#include <algorithm>
#include <string>

#include "dmpclab/errors.hpp"

namespace dmpclab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

DelayProcess::DelayProcess(const DelayConfig& config) : config_(config) {
    if (config_.tau_bar < 1)
        throw DelayOutOfRange("tau_bar must be at least 1");
    if (config_.mode == DelayMode::Fixed) {
        if (config_.fixed_value < 0) config_.fixed_value = config_.tau_bar;
        if (config_.fixed_value < 1 || config_.fixed_value > config_.tau_bar)
            throw DelayOutOfRange("fixed delay must lie in [1, tau_bar]");
    }
    if (config_.mode == DelayMode::Sequence) {
        for (int d : config_.sequence)
            if (d < 1 || d > config_.tau_bar)
                throw DelayOutOfRange("sequence delay " + std::to_string(d) + " outside [1, tau_bar]");
    }
}

int DelayProcess::sample(long t) const {
    if (t <= 0) return 0; // tau(0) = 0
    switch (config_.mode) {
    case DelayMode::Fixed:
        return config_.fixed_value;
    case DelayMode::Sequence: {
        const std::size_t idx = static_cast<std::size_t>(t - 1) % config_.sequence.size();
        return config_.sequence.empty() ? config_.tau_bar : config_.sequence[idx];
    }
    case DelayMode::Uniform:
    default: {
        const std::uint64_t h = splitmix64(config_.seed ^ splitmix64(static_cast<std::uint64_t>(t)));
        return 1 + static_cast<int>(h % static_cast<std::uint64_t>(config_.tau_bar));
    }
    }
}

int DelayProcess::sample(long t, int sender, int receiver) const {
    if (!config_.per_edge) return sample(t);
    if (t <= 0) return 0;
    if (config_.mode != DelayMode::Uniform) return sample(t);
    const std::uint64_t edge =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(sender)) << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(receiver));
    const std::uint64_t h =
        splitmix64(config_.seed ^ splitmix64(static_cast<std::uint64_t>(t)) ^ splitmix64(edge));
    return 1 + static_cast<int>(h % static_cast<std::uint64_t>(config_.tau_bar));
}

Mailbox::Mailbox(int agent_count, int tau_bar) : agent_count_(agent_count), tau_bar_(tau_bar) {
    if (agent_count < 1) throw DimensionMismatch("mailbox needs at least one agent");
    if (tau_bar < 1) throw DelayOutOfRange("tau_bar must be at least 1");
    per_sender_.resize(static_cast<std::size_t>(agent_count));
}

void Mailbox::enqueue(const BroadcastMessage& message, int delivery_delay) {
    enqueue(message, -1, delivery_delay);
}

void Mailbox::enqueue(const BroadcastMessage& message, int receiver, int delivery_delay) {
    if (message.sender < 0 || message.sender >= agent_count_)
        throw DimensionMismatch("sender index out of range");
    const bool init_round = message.stamp == 0 && delivery_delay == 0;
    if (!init_round && (delivery_delay < 1 || delivery_delay > tau_bar_))
        throw DelayOutOfRange("delivery delay " + std::to_string(delivery_delay) +
                              " outside [1, " + std::to_string(tau_bar_) + "]");
    auto& slots = per_sender_[static_cast<std::size_t>(message.sender)];
    auto& slot = slots[message.stamp];
    if (slot.trajectory.empty()) slot.trajectory = message.trajectory;
    slot.delivery[receiver] = message.stamp + delivery_delay;
}

long Mailbox::effective_delivery(int sender, int receiver, long stamp) const {
    const auto& slots = per_sender_[static_cast<std::size_t>(sender)];
    // Stamp-order exposure: a message is visible only once every earlier stamp
    // of the same sender is deliverable too.
    long latest = -1;
    for (const auto& [s, slot] : slots) {
        if (s > stamp) break;
        auto it = slot.delivery.find(receiver);
        if (it == slot.delivery.end()) it = slot.delivery.find(-1);
        if (it == slot.delivery.end()) return -1;
        latest = std::max(latest, it->second);
    }
    return latest;
}

bool Mailbox::visible(int sender, int receiver, long stamp, long t) const {
    const auto& slots = per_sender_[static_cast<std::size_t>(sender)];
    if (slots.find(stamp) == slots.end()) return false;
    const long d = effective_delivery(sender, receiver, stamp);
    return d >= 0 && d <= t;
}

const Trajectory* Mailbox::find(int sender, long stamp) const {
    const auto& slots = per_sender_[static_cast<std::size_t>(sender)];
    const auto it = slots.find(stamp);
    return it == slots.end() ? nullptr : &it->second.trajectory;
}

long common_base_time(const Mailbox& mailbox, int receiver, const std::vector<int>& senders,
                      long t) {
    const long lo = std::max<long>(0, t - mailbox.tau_bar());
    for (long stamp = t - 1; stamp >= lo; --stamp) {
        const bool all = std::all_of(senders.begin(), senders.end(), [&](int s) {
            return mailbox.visible(s, receiver, stamp, t);
        });
        if (all) return stamp;
    }
    throw NoCommonStamp("no common broadcast stamp in [" + std::to_string(lo) + ", " +
                        std::to_string(t - 1) + "] at t = " + std::to_string(t));
}

std::vector<AssumedTrajectory> build_assumed(const std::vector<BroadcastMessage>& messages,
                                             long t, const AgentModel& model,
                                             const Eigen::MatrixXd& K, const Topology& topology) {
    const int M = topology.agent_count;
    if (static_cast<int>(messages.size()) != M)
        throw StampMismatch("build_assumed needs one common-stamp trajectory per agent");
    const long stamp = messages.front().stamp;
    for (const auto& msg : messages)
        if (msg.stamp != stamp)
            throw StampMismatch("broadcast stamps disagree: " + std::to_string(msg.stamp) +
                                " vs " + std::to_string(stamp));
    if (stamp > t) throw StampMismatch("broadcast stamp lies in the future");

    const int N = static_cast<int>(messages.front().trajectory.size()) - 1;
    const long n_prime = stamp + N - t; // entries 0..N' overlap the current horizon
    if (n_prime < 0)
        throw StampMismatch("broadcast too old: no overlap with the current horizon");

    std::vector<AssumedTrajectory> assumed(static_cast<std::size_t>(M));
    std::vector<int> order(static_cast<std::size_t>(M), -1);
    for (const auto& msg : messages) {
        if (static_cast<int>(msg.trajectory.size()) != N + 1)
            throw DimensionMismatch("trajectory lengths disagree");
        auto& a = assumed[static_cast<std::size_t>(msg.sender)];
        a.owner = msg.sender;
        a.base_stamp = stamp;
        a.n_prime = static_cast<int>(n_prime);
        a.values.resize(static_cast<std::size_t>(N) + 1);
        for (long k = 0; k <= n_prime; ++k)
            a.values[static_cast<std::size_t>(k)] =
                msg.trajectory[static_cast<std::size_t>(k + (t - stamp))];
        order[static_cast<std::size_t>(msg.sender)] = msg.sender;
    }
    for (int i = 0; i < M; ++i)
        if (order[static_cast<std::size_t>(i)] < 0)
            throw StampMismatch("missing trajectory for agent " + std::to_string(i + 1));

    // Joint extension under the predesigned protocol with zero correction.
    for (long k = n_prime + 1; k <= N; ++k) {
        for (int i = 0; i < M; ++i) {
            const Eigen::VectorXd& prev = assumed[static_cast<std::size_t>(i)].values[static_cast<std::size_t>(k - 1)];
            Eigen::VectorXd gap = Eigen::VectorXd::Zero(model.state_dim());
            for (int j : topology.neighbors[static_cast<std::size_t>(i)])
                gap += topology.weight(i, j) *
                       (prev - assumed[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(k - 1)]);
            const Eigen::VectorXd u = K * gap;
            assumed[static_cast<std::size_t>(i)].values[static_cast<std::size_t>(k)] =
                model.A * prev + model.B * u;
        }
    }
    return assumed;
}

} // namespace dmpclab

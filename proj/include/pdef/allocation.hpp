#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pdef/cost.hpp"

namespace pdef {

// One entry of the winning-bid (y) / winning-agent (z) vectors.
struct Claim {
    double bid = kInfeasible;
    std::optional<AgentId> winner;

    friend bool operator==(const Claim&, const Claim&) = default;
};

// Per-task beliefs. Tasks absent from the map are unclaimed with bid +inf.
using BidBoard = std::map<TaskId, Claim>;

struct BundleState {
    AgentId defender_id{};
    std::vector<TaskId> bundle;  // acquisition order
    std::vector<TaskId> path;    // execution order
    BidBoard board;
    int iteration = 0;

    double bid(TaskId task) const;
    std::optional<AgentId> winner(TaskId task) const;

    friend bool operator==(const BundleState&, const BundleState&) = default;
};

struct ConsensusMessage {
    AgentId sender{};
    std::vector<TaskId> bundle;
    std::vector<TaskId> path;
    BidBoard board;
    int round = 0;
};

// What a single agent knows when bidding.
struct AgentContext {
    AgentId id{};
    Vec2 position;
    double now = 0.0;
    CostParams params;
    std::size_t max_bundle_size = std::numeric_limits<std::size_t>::max();
};

// Materializes the agent's execution path from its observed tasks.
PathContext make_path_context(const BundleState& state, std::span<const Task> observed,
                              const AgentContext& ctx);

struct Bid {
    TaskId task{};
    InsertionCost insertion;
    // Submitted bid: the marginal cost, raised to the largest bid already in
    // the bundle so that bids never fall along a bundle.
    double bid = kInfeasible;
};

// The task build_bundle would add next: the lowest submitted bid among
// observed tasks not yet bundled that beats the known winning bid. Ties go
// to the lower marginal cost, then the lower task id.
std::optional<Bid> next_bid(const BundleState& state, std::span<const Task> observed,
                            const AgentContext& ctx);

// Adds at most one task to the bundle (end) and path (best slot) and claims
// it at the submitted bid. Returns false when no eligible task exists.
bool build_bundle(BundleState& state, std::span<const Task> observed, const AgentContext& ctx);

// Builds until no eligible task remains. Returns the number of tasks added.
std::size_t build_to_saturation(BundleState& state, std::span<const Task> observed,
                                const AgentContext& ctx);

ConsensusMessage make_message(const BundleState& state);

// Applies the conflict-resolution rules for every task mentioned by either
// side, then drops the first lost task and everything acquired after it.
// Returns true if the bundle changed. Throws std::invalid_argument for a
// message from the receiver itself or one whose bundle/path/claims disagree.
bool consensus_merge(BundleState& local, const ConsensusMessage& msg);

// Synchronous, fully connected broadcast channel. Optional directed drops
// simulate lossy links (not used for the default topology).
class SyncBus {
public:
    void drop_link(AgentId from, AgentId to) { dropped_links_.insert({from, to}); }

    // inbox[r] lists pointers into `outgoing` for every message addressed to
    // agent r, in sender order. Pointers stay valid while `outgoing` does.
    std::vector<std::vector<const ConsensusMessage*>> exchange(
        std::span<const ConsensusMessage> outgoing);

    std::size_t delivered() const { return delivered_; }
    std::size_t dropped() const { return dropped_; }
    // Total claim entries carried by delivered messages.
    std::size_t payload_entries() const { return payload_entries_; }

private:
    std::set<std::pair<AgentId, AgentId>> dropped_links_;
    std::size_t delivered_ = 0;
    std::size_t dropped_ = 0;
    std::size_t payload_entries_ = 0;
};

struct AgentInput {
    AgentId id{};
    Vec2 position;
    std::vector<Task> observed;
};

struct AllocationParams {
    double now = 0.0;
    CostParams cost;
    std::size_t max_bundle_size = std::numeric_limits<std::size_t>::max();
};

// Conflict-free task assignment with per-defender execution paths.
struct Assignment {
    std::map<TaskId, AgentId> winners;
    std::map<AgentId, std::vector<TaskId>> paths;  // every participating agent

    bool assigned(AgentId agent, TaskId task) const;  // delta_ij
    std::optional<AgentId> winner_of(TaskId task) const;
};

struct AllocationResult {
    Assignment assignment;
    std::vector<BundleState> final_states;  // ordered by agent id
    int iterations = 0;
    double wall_seconds = 0.0;
    // Sum over iterations of the slowest agent's local compute time: the
    // allocation latency when every agent runs on its own processor.
    double critical_path_seconds = 0.0;
};

class ConsensusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Records every agent's state after each consensus iteration.
using RoundTrace = std::vector<BundleState>;

// Alternates bundle building to saturation with a synchronous all-to-all
// exchange and merge until every agent's winner vector agrees and nobody can
// bid further. Throws ConsensusError after N * max|O_i| + 10 iterations.
AllocationResult allocation_round(std::span<const AgentInput> agents,
                                  const AllocationParams& params, SyncBus& bus,
                                  RoundTrace* trace = nullptr);

// "t=<time> q=<round> agent=<id> b=[..] mu=[..] y={task:bid,..} z={task:agent|-,..}"
std::string format_trace_record(double time, const BundleState& state);

}  // namespace pdef

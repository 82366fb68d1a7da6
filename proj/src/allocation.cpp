#include "pdef/allocation.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <fmt/format.h>

namespace pdef {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const Task* find_task(std::span<const Task> tasks, TaskId id) {
    for (const Task& t : tasks) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

bool contains_id(const std::vector<TaskId>& ids, TaskId id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// True when (bid, agent) wins against the receiver's current claim: lower
// bid, or an equal bid from a lower agent id.
bool outbids(double bid, AgentId agent, const Claim& current) {
    if (bid < current.bid) return true;
    return bid == current.bid && current.winner.has_value() && agent < *current.winner;
}

}  // namespace

double BundleState::bid(TaskId task) const {
    const auto it = board.find(task);
    return it == board.end() ? kInfeasible : it->second.bid;
}

std::optional<AgentId> BundleState::winner(TaskId task) const {
    const auto it = board.find(task);
    return it == board.end() ? std::nullopt : it->second.winner;
}

PathContext make_path_context(const BundleState& state, std::span<const Task> observed,
                              const AgentContext& ctx) {
    PathContext out;
    out.defender = ctx.id;
    out.start_position = ctx.position;
    out.start_time = ctx.now;
    out.params = ctx.params;
    out.path.reserve(state.path.size());
    for (TaskId id : state.path) {
        const Task* t = find_task(observed, id);
        if (t == nullptr) {
            throw std::logic_error(fmt::format("agent {} path holds unobserved task {}",
                                               to_int(ctx.id), to_int(id)));
        }
        out.path.push_back(*t);
    }
    return out;
}

std::optional<Bid> next_bid(const BundleState& state, std::span<const Task> observed,
                            const AgentContext& ctx) {
    if (state.bundle.size() >= ctx.max_bundle_size) return std::nullopt;
    const PathContext path = make_path_context(state, observed, ctx);
    double floor = -kInfeasible;
    for (TaskId id : state.bundle) floor = std::max(floor, state.bid(id));
    std::optional<Bid> best;
    for (const Task& task : observed) {
        if (contains_id(state.bundle, task.id)) continue;
        const InsertionCost c = marginal_insertion_cost(path, task);
        if (!is_feasible_loss(c.cost)) continue;
        const double bid = std::max(c.cost, floor);
        if (!(bid < state.bid(task.id))) continue;
        const bool wins = !best || bid < best->bid ||
                          (bid == best->bid && (c.cost < best->insertion.cost ||
                                                (c.cost == best->insertion.cost && task.id < best->task)));
        if (wins) best = Bid{task.id, c, bid};
    }
    return best;
}

bool build_bundle(BundleState& state, std::span<const Task> observed, const AgentContext& ctx) {
    const auto bid = next_bid(state, observed, ctx);
    if (!bid) return false;
    state.bundle.push_back(bid->task);
    state.path.insert(state.path.begin() + static_cast<std::ptrdiff_t>(bid->insertion.slot),
                      bid->task);
    state.board[bid->task] = Claim{bid->bid, state.defender_id};
    return true;
}

std::size_t build_to_saturation(BundleState& state, std::span<const Task> observed,
                                const AgentContext& ctx) {
    std::size_t added = 0;
    while (build_bundle(state, observed, ctx)) ++added;
    return added;
}

ConsensusMessage make_message(const BundleState& state) {
    return {state.defender_id, state.bundle, state.path, state.board, state.iteration};
}

namespace {

void validate_message(const BundleState& local, const ConsensusMessage& msg) {
    if (msg.sender == local.defender_id) {
        throw std::invalid_argument(
            fmt::format("agent {} received its own consensus message", to_int(msg.sender)));
    }
    std::vector<TaskId> b = msg.bundle;
    std::vector<TaskId> p = msg.path;
    std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    if (b != p || std::adjacent_find(b.begin(), b.end()) != b.end()) {
        throw std::invalid_argument(fmt::format(
            "malformed message from agent {}: bundle and path task ids differ", to_int(msg.sender)));
    }
    for (TaskId id : msg.bundle) {
        const auto it = msg.board.find(id);
        if (it == msg.board.end() || it->second.winner != msg.sender) {
            throw std::invalid_argument(
                fmt::format("malformed message from agent {}: bundled task {} is not claimed",
                            to_int(msg.sender), to_int(id)));
        }
    }
}

}  // namespace

bool consensus_merge(BundleState& local, const ConsensusMessage& msg) {
    validate_message(local, msg);
    const AgentId self = local.defender_id;
    const AgentId sender = msg.sender;

    std::set<TaskId> tasks;
    for (const auto& [id, claim] : local.board) tasks.insert(id);
    for (const auto& [id, claim] : msg.board) tasks.insert(id);

    for (TaskId j : tasks) {
        Claim theirs;
        if (const auto it = msg.board.find(j); it != msg.board.end()) theirs = it->second;
        if (!theirs.winner) theirs.bid = kInfeasible;

        Claim& mine = local.board[j];
        const auto update = [&] { mine = theirs; };
        const auto reset = [&] { mine = Claim{}; };

        if (!theirs.winner) {
            // The sender is authoritative about its own claims.
            if (mine.winner == sender) reset();
        } else if (*theirs.winner == sender) {
            if (mine.winner == sender || outbids(theirs.bid, sender, mine)) update();
        } else if (*theirs.winner == self) {
            if (mine.winner == sender) reset();
        } else {
            const AgentId third = *theirs.winner;
            if (mine.winner != third && outbids(theirs.bid, third, mine)) reset();
        }
    }

    // Everything acquired after the first lost task was bid against a path
    // that no longer exists.
    const auto lost = std::find_if(local.bundle.begin(), local.bundle.end(),
                                   [&](TaskId j) { return local.winner(j) != self; });
    if (lost == local.bundle.end()) return false;
    for (auto it = lost + 1; it != local.bundle.end(); ++it) {
        if (local.winner(*it) == self) local.board[*it] = Claim{};
    }
    const std::vector<TaskId> dropped(lost, local.bundle.end());
    local.bundle.erase(lost, local.bundle.end());
    std::erase_if(local.path, [&](TaskId j) { return contains_id(dropped, j); });
    return true;
}

std::vector<std::vector<const ConsensusMessage*>> SyncBus::exchange(
    std::span<const ConsensusMessage> outgoing) {
    std::vector<std::vector<const ConsensusMessage*>> inbox(outgoing.size());
    for (std::size_t r = 0; r < outgoing.size(); ++r) {
        inbox[r].reserve(outgoing.size() - 1);
        for (std::size_t s = 0; s < outgoing.size(); ++s) {
            if (s == r) continue;
            if (dropped_links_.contains({outgoing[s].sender, outgoing[r].sender})) {
                ++dropped_;
                continue;
            }
            inbox[r].push_back(&outgoing[s]);
            ++delivered_;
            payload_entries_ += outgoing[s].board.size();
        }
    }
    return inbox;
}

bool Assignment::assigned(AgentId agent, TaskId task) const {
    const auto it = winners.find(task);
    return it != winners.end() && it->second == agent;
}

std::optional<AgentId> Assignment::winner_of(TaskId task) const {
    const auto it = winners.find(task);
    if (it == winners.end()) return std::nullopt;
    return it->second;
}

namespace {

bool winners_agree(const std::vector<BundleState>& states) {
    std::set<TaskId> tasks;
    for (const BundleState& s : states) {
        for (const auto& [id, claim] : s.board) tasks.insert(id);
    }
    for (TaskId j : tasks) {
        const auto first = states.front().winner(j);
        for (const BundleState& s : states) {
            if (s.winner(j) != first) return false;
        }
    }
    return true;
}

std::string dump_states(const std::vector<BundleState>& states) {
    std::string out;
    for (const BundleState& s : states) out += format_trace_record(0.0, s) + "\n";
    return out;
}

}  // namespace

AllocationResult allocation_round(std::span<const AgentInput> agents,
                                  const AllocationParams& params, SyncBus& bus,
                                  RoundTrace* trace) {
    const auto wall_start = Clock::now();

    std::vector<std::size_t> order(agents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return agents[a].id < agents[b].id; });

    std::vector<AgentContext> contexts;
    std::vector<BundleState> states;
    std::size_t max_observed = 0;
    for (std::size_t idx : order) {
        const AgentInput& a = agents[idx];
        contexts.push_back({a.id, a.position, params.now, params.cost, params.max_bundle_size});
        BundleState s;
        s.defender_id = a.id;
        states.push_back(std::move(s));
        max_observed = std::max(max_observed, a.observed.size());
    }
    for (std::size_t k = 1; k < states.size(); ++k) {
        if (states[k].defender_id == states[k - 1].defender_id) {
            throw std::invalid_argument("duplicate agent id in allocation round");
        }
    }
    const auto observed_of = [&](std::size_t k) -> std::span<const Task> {
        return agents[order[k]].observed;
    };

    AllocationResult result;
    const int cap = static_cast<int>(agents.size() * max_observed) + 10;
    std::vector<double> local_seconds(states.size());
    bool converged = states.empty();

    for (int q = 1; q <= cap && !converged; ++q) {
        for (std::size_t k = 0; k < states.size(); ++k) {
            const auto start = Clock::now();
            states[k].iteration = q;
            build_to_saturation(states[k], observed_of(k), contexts[k]);
            local_seconds[k] = seconds_since(start);
        }

        std::vector<ConsensusMessage> outgoing;
        outgoing.reserve(states.size());
        for (const BundleState& s : states) outgoing.push_back(make_message(s));
        const auto inbox = bus.exchange(outgoing);

        for (std::size_t k = 0; k < states.size(); ++k) {
            const auto start = Clock::now();
            for (const ConsensusMessage* msg : inbox[k]) consensus_merge(states[k], *msg);
            local_seconds[k] += seconds_since(start);
        }
        if (trace != nullptr) trace->insert(trace->end(), states.begin(), states.end());

        result.iterations = q;
        result.critical_path_seconds +=
            *std::max_element(local_seconds.begin(), local_seconds.end());

        if (winners_agree(states)) {
            converged = std::none_of(states.begin(), states.end(), [&](const BundleState& s) {
                const std::size_t k = static_cast<std::size_t>(&s - states.data());
                return next_bid(s, observed_of(k), contexts[k]).has_value();
            });
        }
    }
    if (!converged) {
        throw ConsensusError(fmt::format("consensus non-convergence after {} iterations\n{}", cap,
                                         dump_states(states)));
    }

    for (const BundleState& s : states) {
        result.assignment.paths[s.defender_id] = s.path;
        for (TaskId j : s.bundle) result.assignment.winners[j] = s.defender_id;
    }
    result.final_states = std::move(states);
    result.wall_seconds = seconds_since(wall_start);
    return result;
}

std::string format_trace_record(double time, const BundleState& state) {
    const auto ids = [](const std::vector<TaskId>& v) {
        std::string s = "[";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) s += ",";
            s += to_string(v[k]);
        }
        return s + "]";
    };
    std::string y = "{";
    std::string z = "{";
    bool first = true;
    for (const auto& [id, claim] : state.board) {
        if (!first) {
            y += ",";
            z += ",";
        }
        first = false;
        y += fmt::format("{}:{}", to_int(id), claim.bid);
        z += fmt::format("{}:{}", to_int(id), claim.winner ? to_string(*claim.winner) : "-");
    }
    return fmt::format("t={:.3f} q={} agent={} b={} mu={} y={}}} z={}}}", time, state.iteration,
                       to_int(state.defender_id), ids(state.bundle), ids(state.path), y, z);
}

}  // namespace pdef

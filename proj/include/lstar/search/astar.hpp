#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lstar {

// A state space usable by the search engine: an initial state, a goal
// predicate and a deterministic successor relation with non-negative
// edge weights. `state_count_hint()` is optional and only used to
// pre-size hash tables.
template <typename I>
concept ProblemInstance = requires(const I& inst, const typename I::state_type& s) {
    typename I::state_type;
    { inst.initial_state() } -> std::convertible_to<typename I::state_type>;
    { inst.is_goal(s) } -> std::convertible_to<bool>;
    { inst.successors(s) } -> std::convertible_to<std::vector<std::pair<typename I::state_type, double>>>;
};

template <typename H, typename State>
concept HeuristicFn = requires(H h, const State& s) {
    { h(s) } -> std::convertible_to<double>;
};

// Order among open-list entries with equal f. The engine always prefers
// smaller f first and falls back to insertion order (FIFO) last.
enum class TieBreak {
    high_g_first,  // default: deeper nodes first
    low_g_first,
    fifo,  // insertion order only
};

struct SearchOptions {
    std::uint64_t budget = 100000;  // max expansions (goal pop included)
    TieBreak tie_break = TieBreak::high_g_first;
    bool allow_reopen = true;
    bool record_trace = false;
};

template <typename State>
struct Plan {
    std::vector<State> states;                    // s0 ... goal
    std::vector<std::pair<State, State>> edges;   // consecutive pairs
    double total_cost = 0.0;

    std::size_t length() const { return edges.size(); }
};

// Bookkeeping for every state ever inserted into the open list.
// `g` is the best accumulated cost seen so far and never increases.
template <typename State>
struct GeneratedRecord {
    double g = 0.0;
    double h = 0.0;
    bool expanded = false;
    std::optional<std::uint64_t> pop_order;
    std::optional<State> parent;
    std::uint64_t gen_seq = 0;  // order of first generation
};

// Push/pop log, recorded on request. Enough to replay the open list
// contents offline (e.g. to count f-ties at pop time).
template <typename State>
struct TraceEvent {
    enum Kind { push, pop, stale_pop, reopen } kind;
    State state;
    double g = 0.0;
    double f = 0.0;
};

template <typename State>
struct SearchOutcome {
    std::optional<Plan<State>> plan;
    std::uint64_t expanded_count = 0;
    std::uint64_t generated_count = 0;
    std::uint64_t reopened_count = 0;
    bool budget_exhausted = false;
    std::unordered_map<State, GeneratedRecord<State>> generated_records;
    std::vector<TraceEvent<State>> trace;  // empty unless requested

    bool solved() const { return plan.has_value(); }
};

struct BrokenParentChain : std::runtime_error {
    BrokenParentChain() : std::runtime_error("parent chain does not reach the initial state") {}
};

// Walks the parent chain from `goal_state` back to the root (the record
// whose parent is empty). Cost is taken from the goal record's g.
template <typename State>
Plan<State> reconstruct_path(const std::unordered_map<State, GeneratedRecord<State>>& records,
                             const State& goal_state) {
    Plan<State> plan;
    auto it = records.find(goal_state);
    if (it == records.end()) throw BrokenParentChain();
    plan.total_cost = it->second.g;
    State cur = goal_state;
    plan.states.push_back(cur);
    while (true) {
        const auto rec = records.find(cur);
        if (rec == records.end()) throw BrokenParentChain();
        if (!rec->second.parent.has_value()) break;
        cur = *rec->second.parent;
        plan.states.push_back(cur);
    }
    std::reverse(plan.states.begin(), plan.states.end());
    for (std::size_t i = 0; i + 1 < plan.states.size(); ++i)
        plan.edges.emplace_back(plan.states[i], plan.states[i + 1]);
    return plan;
}

// A* with duplicate detection, open-list g updates via lazy re-insertion
// and optional reopening of closed states. The search stops when a goal
// state is selected for expansion (that final pop is counted in
// expanded_count) or when the expansion budget runs out.
template <ProblemInstance I, HeuristicFn<typename I::state_type> H>
SearchOutcome<typename I::state_type> astar(const I& instance, H&& heuristic,
                                            const SearchOptions& options = {}) {
    using State = typename I::state_type;
    if (options.budget < 1) throw std::invalid_argument("astar: budget must be >= 1");

    SearchOutcome<State> out;
    auto& records = out.generated_records;
    if constexpr (requires { instance.state_count_hint(); }) {
        records.reserve(instance.state_count_hint());
    }

    struct Entry {
        double f;
        double g;
        std::uint64_t seq;
        State state;
    };
    const TieBreak tb = options.tie_break;
    auto worse = [tb](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (tb == TieBreak::high_g_first && a.g != b.g) return a.g < b.g;
        if (tb == TieBreak::low_g_first && a.g != b.g) return a.g > b.g;
        return a.seq > b.seq;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

    auto eval_h = [&heuristic](const State& s) {
        double h = heuristic(s);
        if (!(h >= 0.0) || !std::isfinite(h))
            throw std::invalid_argument("astar: heuristic must be finite and non-negative");
        return h;
    };

    std::uint64_t push_seq = 0;
    std::uint64_t pop_seq = 0;
    auto push = [&](const State& s, double g, double h) {
        open.push(Entry{g + h, g, push_seq++, s});
        if (options.record_trace)
            out.trace.push_back({TraceEvent<State>::push, s, g, g + h});
    };

    {
        State s0 = instance.initial_state();
        double h0 = eval_h(s0);
        auto& rec = records[s0];
        rec.g = 0.0;
        rec.h = h0;
        rec.gen_seq = 0;
        push(s0, 0.0, h0);
    }

    while (!open.empty()) {
        if (out.expanded_count >= options.budget) {
            out.budget_exhausted = true;
            break;
        }
        Entry e = open.top();
        open.pop();
        auto& rec = records.at(e.state);
        if (e.g != rec.g || rec.expanded) {  // superseded or re-closed entry
            if (options.record_trace)
                out.trace.push_back({TraceEvent<State>::stale_pop, e.state, e.g, e.f});
            continue;
        }
        out.expanded_count += 1;
        rec.expanded = true;
        rec.pop_order = pop_seq++;
        if (options.record_trace)
            out.trace.push_back({TraceEvent<State>::pop, e.state, e.g, e.f});
        if (instance.is_goal(e.state)) {
            out.plan = reconstruct_path(records, e.state);
            break;
        }
        for (const auto& [succ, w] : instance.successors(e.state)) {
            if (!(w >= 0.0)) throw std::invalid_argument("astar: negative edge weight");
            double g2 = e.g + w;
            auto found = records.find(succ);
            if (found == records.end()) {
                auto& nrec = records[succ];
                nrec.g = g2;
                nrec.h = eval_h(succ);
                nrec.parent = e.state;
                nrec.gen_seq = records.size() - 1;
                push(succ, g2, nrec.h);
            } else if (g2 < found->second.g) {
                auto& nrec = found->second;
                if (nrec.expanded) {
                    if (!options.allow_reopen) continue;
                    nrec.expanded = false;
                    out.reopened_count += 1;
                    if (options.record_trace)
                        out.trace.push_back({TraceEvent<State>::reopen, succ, g2, g2 + nrec.h});
                }
                nrec.g = g2;
                nrec.parent = e.state;
                push(succ, g2, nrec.h);
            }
        }
    }
    out.generated_count = records.size();
    return out;
}

}  // namespace lstar

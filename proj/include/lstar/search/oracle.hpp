#pragma once

#include <lstar/search/astar.hpp>

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lstar {

struct OracleCapExceeded : std::runtime_error {
    explicit OracleCapExceeded(std::size_t cap)
        : std::runtime_error("shortest_path_oracle: enumeration exceeded cap of " +
                             std::to_string(cap)) {}
};

// Exact cost-to-go for every reachable state. States absent from
// `cost_to_go` but present in `enumerated` are dead ends.
template <typename State>
struct OracleResult {
    std::unordered_map<State, double> cost_to_go;
    std::vector<State> enumerated;  // discovery order from the initial state

    std::optional<double> cost(const State& s) const {
        auto it = cost_to_go.find(s);
        if (it == cost_to_go.end()) return std::nullopt;
        return it->second;
    }
    double max_finite_cost() const {
        double m = 0.0;
        for (const auto& [s, c] : cost_to_go) m = std::max(m, c);
        return m;
    }
};

// Exhaustively enumerates the state space reachable from the initial
// state, then runs uniform-cost relaxation from the goal set over the
// reversed edges. Shares no code with the A* engine.
template <ProblemInstance I>
OracleResult<typename I::state_type> shortest_path_oracle(const I& instance,
                                                          std::size_t state_cap = 1000000) {
    using State = typename I::state_type;
    OracleResult<State> result;

    std::unordered_map<State, std::size_t> index_of;
    std::vector<State>& states = result.enumerated;
    std::vector<std::vector<std::pair<std::size_t, double>>> reverse_edges;
    std::vector<bool> is_goal_state;

    auto intern = [&](const State& s) {
        auto [it, inserted] = index_of.try_emplace(s, states.size());
        if (inserted) {
            if (states.size() >= state_cap) throw OracleCapExceeded(state_cap);
            states.push_back(s);
            reverse_edges.emplace_back();
            is_goal_state.push_back(instance.is_goal(s));
        }
        return it->second;
    };

    std::queue<std::size_t> frontier;
    frontier.push(intern(instance.initial_state()));
    while (!frontier.empty()) {
        std::size_t u = frontier.front();
        frontier.pop();
        State from = states[u];  // copy: successors may grow `states`
        for (const auto& [succ, w] : instance.successors(from)) {
            std::size_t before = states.size();
            std::size_t v = intern(succ);
            reverse_edges[v].emplace_back(u, w);
            if (states.size() > before) frontier.push(v);
        }
    }

    std::vector<double> dist(states.size(), -1.0);
    using QEntry = std::pair<double, std::size_t>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;
    for (std::size_t i = 0; i < states.size(); ++i)
        if (is_goal_state[i]) {
            dist[i] = 0.0;
            queue.emplace(0.0, i);
        }
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d != dist[u]) continue;
        for (const auto& [v, w] : reverse_edges[u]) {
            double cand = d + w;
            if (dist[v] < 0.0 || cand < dist[v]) {
                dist[v] = cand;
                queue.emplace(cand, v);
            }
        }
    }

    result.cost_to_go.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        if (dist[i] >= 0.0) result.cost_to_go.emplace(states[i], dist[i]);
    return result;
}

}  // namespace lstar

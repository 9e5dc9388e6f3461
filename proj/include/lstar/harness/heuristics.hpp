#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include <lstar/domains/encode.hpp>
#include <lstar/domains/maze.hpp>
#include <lstar/domains/sokoban.hpp>
#include <lstar/model/model.hpp>
#include <lstar/search/oracle.hpp>

namespace lstar {

template <typename State>
using HeuristicFunction = std::function<double(const State&)>;

// Learned heuristic over encoded states. Evaluations are memoized per
// returned callable, so one search pays at most one forward pass per state.
template <typename Instance>
auto model_heuristic(const Instance& instance, const ModelParams& params) {
    using State = std::decay_t<decltype(std::declval<const Instance&>().initial_state())>;
    auto cache = std::make_shared<std::unordered_map<State, double>>();
    return [&instance, &params, cache](const State& s) {
        auto it = cache->find(s);
        if (it != cache->end()) return it->second;
        double h = forward(params, encode_state(instance, s));
        cache->emplace(s, h);
        return h;
    };
}

// Exact cost-to-go, with goal-unreachable states sent above every finite
// value. Enumerates the instance once up front.
template <typename Instance>
auto oracle_heuristic(const Instance& instance, std::size_t state_cap = 1000000) {
    using State = std::decay_t<decltype(std::declval<const Instance&>().initial_state())>;
    auto oracle = std::make_shared<OracleResult<State>>(shortest_path_oracle(instance, state_cap));
    double dead_h = 2.0 * oracle->max_finite_cost() + 1.0;
    return [oracle, dead_h](const State& s) {
        auto v = oracle->cost(s);
        return v.has_value() ? *v : dead_h;
    };
}

inline HeuristicFunction<Cell> maze_heuristic(const std::string& name, const MazeGrid& grid,
                                              const ModelParams* model = nullptr) {
    if (name == "zero") return [](const Cell&) { return 0.0; };
    if (name == "manhattan")
        return [&grid](const Cell& c) { return maze_manhattan(grid, c); };
    if (name == "oracle") return oracle_heuristic(grid);
    if (name == "model") {
        if (model == nullptr) throw std::invalid_argument("heuristic: model checkpoint required");
        return model_heuristic(grid, *model);
    }
    throw std::invalid_argument("heuristic: unknown maze heuristic " + name);
}

inline HeuristicFunction<SokobanState> sokoban_heuristic(const std::string& name,
                                                         const SokobanLevel& level,
                                                         const ModelParams* model = nullptr) {
    if (name == "zero") return [](const SokobanState&) { return 0.0; };
    if (name == "boxsum")
        return [&level](const SokobanState& s) { return sokoban_boxsum(level, s); };
    if (name == "oracle") return oracle_heuristic(level);
    if (name == "model") {
        if (model == nullptr) throw std::invalid_argument("heuristic: model checkpoint required");
        return model_heuristic(level, *model);
    }
    throw std::invalid_argument("heuristic: unknown sokoban heuristic " + name);
}

}  // namespace lstar

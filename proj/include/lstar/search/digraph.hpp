#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lstar {

// Explicit weighted digraph over integer node ids with named roles.
// Used by the hand-built demonstration graphs and as a search fixture.
class Digraph {
public:
    using state_type = int;

    explicit Digraph(int node_count) : adjacency_(static_cast<std::size_t>(node_count)) {
        if (node_count < 1) throw std::invalid_argument("Digraph: need at least one node");
    }

    void add_edge(int from, int to, double weight) {
        check_node(from);
        check_node(to);
        if (!(weight >= 0.0)) throw std::invalid_argument("Digraph: negative edge weight");
        adjacency_[static_cast<std::size_t>(from)].emplace_back(to, weight);
    }

    void set_start(int node) {
        check_node(node);
        start_ = node;
    }

    void mark_goal(int node) {
        check_node(node);
        goal_.resize(adjacency_.size(), false);
        goal_[static_cast<std::size_t>(node)] = true;
    }

    int node_count() const { return static_cast<int>(adjacency_.size()); }

    state_type initial_state() const { return start_; }

    bool is_goal(const state_type& s) const {
        auto idx = static_cast<std::size_t>(s);
        return idx < goal_.size() && goal_[idx];
    }

    std::vector<std::pair<state_type, double>> successors(const state_type& s) const {
        check_node(s);
        return adjacency_[static_cast<std::size_t>(s)];
    }

    std::size_t state_count_hint() const { return adjacency_.size(); }

    const std::vector<std::vector<std::pair<int, double>>>& adjacency() const { return adjacency_; }

private:
    void check_node(int node) const {
        if (node < 0 || static_cast<std::size_t>(node) >= adjacency_.size())
            throw std::out_of_range("Digraph: node id out of range");
    }

    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<bool> goal_;
    int start_ = 0;
};

// Serialized digraph state, matching the domain state_key overloads.
inline std::string state_key(int node) { return std::to_string(node); }

}  // namespace lstar

#pragma once

#include <lstar/search/digraph.hpp>

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lstar {

// A hand-built digraph together with fixed heuristic tables and the
// exact cost-to-go of every node (empty optional = dead end).
struct DemoGraph {
    std::string name;
    Digraph graph{1};
    // Low regression error, bad ranking: lures the search off the plan.
    std::unordered_map<int, double> misranked_heuristic;
    // Same states, ranked correctly: off-plan f always above on-plan f.
    std::unordered_map<int, double> ranked_heuristic;
    std::unordered_map<int, std::optional<double>> cost_to_go;
    std::vector<std::string> node_labels;
};

// Start s0, goal s2, optimal plan s0-s1-s2 of cost 2. The branch
// s0-s3-s5-s6 is a dead end. The misranked table is pointwise close to
// the true cost-to-go on the plan yet gives the dead-end entry s3 an
// f-value below the plan's, so s3 is expanded before s1. The ranked
// table keeps every off-plan f strictly above 2 and no off-plan state
// is expanded.
inline DemoGraph offpath_trap() {
    DemoGraph d;
    d.name = "offpath_trap";
    d.graph = Digraph(7);
    d.graph.set_start(0);
    d.graph.mark_goal(2);
    d.graph.add_edge(0, 1, 1.0);
    d.graph.add_edge(1, 2, 1.0);
    d.graph.add_edge(0, 3, 1.0);
    d.graph.add_edge(1, 4, 1.0);
    d.graph.add_edge(3, 5, 1.0);
    d.graph.add_edge(5, 6, 1.0);
    d.graph.add_edge(4, 2, 3.0);
    d.misranked_heuristic = {{0, 2.0}, {1, 1.0}, {2, 0.0}, {3, 0.0},
                             {4, 10.0}, {5, 10.0}, {6, 10.0}};
    d.ranked_heuristic = {{0, 2.0}, {1, 1.0}, {2, 0.0}, {3, 10.0},
                          {4, 10.0}, {5, 10.0}, {6, 10.0}};
    d.cost_to_go = {{0, 2.0}, {1, 1.0}, {2, 0.0}, {3, std::nullopt},
                    {4, 3.0}, {5, std::nullopt}, {6, std::nullopt}};
    d.node_labels = {"s0", "s1", "s2", "s3", "s4", "s5", "s6"};
    return d;
}

// Diamond s0-{s1,s2}-s3-s4 with unit edges plus a spur s0-s5-s6. The
// heuristic puts s1 and s2 on the same f-plateau: right after s0 is
// expanded the open list holds exactly two entries with f = 3, so the
// number of expansions depends on the tie-break policy (deeper-first
// skips one plateau sibling, insertion order expands both).
inline DemoGraph tie_plateau() {
    DemoGraph d;
    d.name = "tie_plateau";
    d.graph = Digraph(7);
    d.graph.set_start(0);
    d.graph.mark_goal(4);
    d.graph.add_edge(0, 1, 1.0);
    d.graph.add_edge(0, 2, 1.0);
    d.graph.add_edge(1, 3, 1.0);
    d.graph.add_edge(2, 3, 1.0);
    d.graph.add_edge(3, 4, 1.0);
    d.graph.add_edge(0, 5, 1.0);
    d.graph.add_edge(5, 6, 1.0);
    d.misranked_heuristic = {{0, 3.0}, {1, 2.0}, {2, 2.0}, {3, 1.0},
                             {4, 0.0}, {5, 100.0}, {6, 100.0}};
    d.ranked_heuristic = d.misranked_heuristic;
    d.cost_to_go = {{0, 3.0}, {1, 2.0}, {2, 2.0}, {3, 1.0},
                    {4, 0.0}, {5, std::nullopt}, {6, std::nullopt}};
    d.node_labels = {"s0", "s1", "s2", "s3", "s4", "s5", "s6"};
    return d;
}

}  // namespace lstar

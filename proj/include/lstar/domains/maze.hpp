#pragma once

#include <lstar/core/rng.hpp>
#include <lstar/domains/cell.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lstar {

struct MazeGenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid maze stored one cell per character position: walls occupy cells.
// Entering a teleport endpoint relocates the agent to the paired
// endpoint within the same unit-cost move.
struct MazeGrid {
    using state_type = Cell;

    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> passable_cells;  // row-major, y * width + x
    std::vector<std::pair<Cell, Cell>> teleports;
    Cell start;
    Cell goal;

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    bool passable(const Cell& c) const {
        return in_bounds(c) && passable_cells[static_cast<std::size_t>(c.y) * width + c.x] != 0;
    }
    void set_passable(const Cell& c, bool value) {
        passable_cells[static_cast<std::size_t>(c.y) * width + c.x] = value ? 1 : 0;
    }

    // The paired endpoint if c is a teleport endpoint, otherwise c.
    Cell teleport_destination(const Cell& c) const {
        for (const auto& [a, b] : teleports) {
            if (c == a) return b;
            if (c == b) return a;
        }
        return c;
    }

    Cell initial_state() const { return start; }
    bool is_goal(const Cell& c) const { return c == goal; }

    std::vector<std::pair<Cell, double>> successors(const Cell& c) const {
        std::vector<std::pair<Cell, double>> out;
        out.reserve(4);
        static constexpr int dx[] = {0, 0, -1, 1};
        static constexpr int dy[] = {-1, 1, 0, 0};
        for (int d = 0; d < 4; ++d) {
            Cell n{c.x + dx[d], c.y + dy[d]};
            if (!passable(n)) continue;
            out.emplace_back(teleport_destination(n), 1.0);
        }
        return out;
    }

    std::size_t state_count_hint() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    friend bool operator==(const MazeGrid&, const MazeGrid&) = default;
};

inline std::vector<std::pair<Cell, double>> maze_successors(const MazeGrid& grid, const Cell& s) {
    return grid.successors(s);
}

// Ignores teleports; not admissible once teleports exist.
inline double maze_manhattan(const MazeGrid& grid, const Cell& s) {
    return std::abs(s.x - grid.goal.x) + std::abs(s.y - grid.goal.y);
}

namespace detail {

inline int scan_index(const MazeGrid& g, const Cell& c) { return c.y * g.width + c.x; }

// Canonical form: endpoints ordered within each pair, pairs ordered by
// first endpoint, both in scan order. Makes grid equality and the text
// rendering independent of placement order.
inline void normalize_teleports(MazeGrid& g) {
    for (auto& [a, b] : g.teleports)
        if (scan_index(g, b) < scan_index(g, a)) std::swap(a, b);
    std::sort(g.teleports.begin(), g.teleports.end(),
              [&g](const auto& p, const auto& q) {
                  return scan_index(g, p.first) < scan_index(g, q.first);
              });
}

inline bool maze_reachable(const MazeGrid& g) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.width) * g.height, 0);
    std::queue<Cell> frontier;
    frontier.push(g.start);
    seen[static_cast<std::size_t>(scan_index(g, g.start))] = 1;
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop();
        if (c == g.goal) return true;
        for (const auto& [n, w] : g.successors(c)) {
            auto idx = static_cast<std::size_t>(scan_index(g, n));
            if (!seen[idx]) {
                seen[idx] = 1;
                frontier.push(n);
            }
        }
    }
    return false;
}

}  // namespace detail

// Perfect maze on an n x n cell grid rendered into a (2n+1) x (2n+1)
// character grid, then each remaining interior wall segment falls with
// probability wall_break_rate and teleport endpoint pairs are placed on
// passable cells (start and goal excluded). Teleport placement is
// redrawn until the goal stays reachable.
inline MazeGrid maze_generate(int n, std::uint64_t seed, double wall_break_rate = 0.1,
                              int teleport_pairs = 4) {
    if (n < 2) throw std::invalid_argument("maze_generate: n must be >= 2");
    if (wall_break_rate < 0.0 || wall_break_rate > 1.0)
        throw std::invalid_argument("maze_generate: wall_break_rate outside [0, 1]");
    if (teleport_pairs < 0 || teleport_pairs > 9)
        throw std::invalid_argument("maze_generate: teleport_pairs outside [0, 9]");

    Rng rng(seed);
    MazeGrid g;
    g.width = 2 * n + 1;
    g.height = 2 * n + 1;
    g.passable_cells.assign(static_cast<std::size_t>(g.width) * g.height, 0);

    auto cell_at = [](int cx, int cy) { return Cell{2 * cx + 1, 2 * cy + 1}; };

    // Depth-first carve over the n x n cell grid.
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::pair<int, int>> stack;
    visited[0] = 1;
    g.set_passable(cell_at(0, 0), true);
    stack.emplace_back(0, 0);
    static constexpr int dx[] = {0, 0, -1, 1};
    static constexpr int dy[] = {-1, 1, 0, 0};
    while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        int choices[4];
        int count = 0;
        for (int d = 0; d < 4; ++d) {
            int nx = cx + dx[d], ny = cy + dy[d];
            if (nx < 0 || nx >= n || ny < 0 || ny >= n) continue;
            if (!visited[static_cast<std::size_t>(ny) * n + nx]) choices[count++] = d;
        }
        if (count == 0) {
            stack.pop_back();
            continue;
        }
        int d = choices[rng.below(static_cast<std::uint32_t>(count))];
        int nx = cx + dx[d], ny = cy + dy[d];
        visited[static_cast<std::size_t>(ny) * n + nx] = 1;
        g.set_passable(cell_at(nx, ny), true);
        g.set_passable(Cell{2 * cx + 1 + dx[d], 2 * cy + 1 + dy[d]}, true);
        stack.emplace_back(nx, ny);
    }

    // Knock down surviving interior wall segments (cells between two
    // adjacent maze cells; the corner posts at even/even stay).
    for (int y = 1; y + 1 < g.height; ++y) {
        for (int x = 1; x + 1 < g.width; ++x) {
            bool segment = (x % 2 == 0) != (y % 2 == 0);
            if (!segment || g.passable(Cell{x, y})) continue;
            if (rng.bernoulli(wall_break_rate)) g.set_passable(Cell{x, y}, true);
        }
    }

    // Start and goal: first and last passable cell in scan order.
    std::optional<Cell> first, last;
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            if (g.passable(Cell{x, y})) {
                if (!first) first = Cell{x, y};
                last = Cell{x, y};
            }
    g.start = *first;
    g.goal = *last;

    if (teleport_pairs > 0) {
        std::vector<Cell> candidates;
        for (int y = 0; y < g.height; ++y)
            for (int x = 0; x < g.width; ++x) {
                Cell c{x, y};
                if (g.passable(c) && c != g.start && c != g.goal) candidates.push_back(c);
            }
        if (candidates.size() < static_cast<std::size_t>(2 * teleport_pairs))
            throw MazeGenerationError("maze_generate: not enough free cells for teleports");
        for (int attempt = 0; attempt < 100; ++attempt) {
            auto pool = candidates;
            rng.shuffle(pool);
            g.teleports.clear();
            for (int p = 0; p < teleport_pairs; ++p)
                g.teleports.emplace_back(pool[2 * static_cast<std::size_t>(p)],
                                         pool[2 * static_cast<std::size_t>(p) + 1]);
            detail::normalize_teleports(g);
            if (detail::maze_reachable(g)) return g;
        }
        throw MazeGenerationError("maze_generate: teleport placement kept breaking reachability");
    }
    return g;
}

// Rigid clockwise rotation by quarter_turns * 90 degrees; start, goal
// and teleport endpoints rotate with the grid.
inline MazeGrid maze_rotate(const MazeGrid& g, int quarter_turns) {
    if (quarter_turns < 1 || quarter_turns > 3)
        throw std::invalid_argument("maze_rotate: quarter_turns must be 1, 2 or 3");
    MazeGrid cur = g;
    for (int t = 0; t < quarter_turns; ++t) {
        MazeGrid next;
        next.width = cur.height;
        next.height = cur.width;
        next.passable_cells.assign(static_cast<std::size_t>(next.width) * next.height, 0);
        auto map = [&cur](const Cell& c) { return Cell{cur.height - 1 - c.y, c.x}; };
        for (int y = 0; y < cur.height; ++y)
            for (int x = 0; x < cur.width; ++x)
                if (cur.passable(Cell{x, y})) next.set_passable(map(Cell{x, y}), true);
        next.start = map(cur.start);
        next.goal = map(cur.goal);
        for (const auto& [a, b] : cur.teleports) next.teleports.emplace_back(map(a), map(b));
        detail::normalize_teleports(next);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace lstar

#pragma once

#include <lstar/core/rng.hpp>
#include <lstar/domains/cell.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lstar {

struct SokobanGenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Boxes kept sorted so equal states compare and hash equal.
struct SokobanState {
    Cell player;
    std::vector<Cell> boxes;

    friend bool operator==(const SokobanState&, const SokobanState&) = default;
};

struct SokobanLevel {
    using state_type = SokobanState;

    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> wall_cells;  // row-major
    std::vector<Cell> goal_cells;          // sorted
    Cell initial_player;
    std::vector<Cell> initial_boxes;       // sorted

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    bool wall(const Cell& c) const {
        return !in_bounds(c) || wall_cells[static_cast<std::size_t>(c.y) * width + c.x] != 0;
    }
    void set_wall(const Cell& c, bool value) {
        wall_cells[static_cast<std::size_t>(c.y) * width + c.x] = value ? 1 : 0;
    }
    bool is_goal_cell(const Cell& c) const {
        return std::binary_search(goal_cells.begin(), goal_cells.end(), c);
    }

    SokobanState initial_state() const { return {initial_player, initial_boxes}; }

    bool is_goal(const SokobanState& s) const {
        for (const Cell& b : s.boxes)
            if (!is_goal_cell(b)) return false;
        return true;
    }

    std::vector<std::pair<SokobanState, double>> successors(const SokobanState& s) const {
        std::vector<std::pair<SokobanState, double>> out;
        out.reserve(4);
        static constexpr int dx[] = {0, 0, -1, 1};
        static constexpr int dy[] = {-1, 1, 0, 0};
        for (int d = 0; d < 4; ++d) {
            Cell np{s.player.x + dx[d], s.player.y + dy[d]};
            if (wall(np)) continue;
            auto box = std::lower_bound(s.boxes.begin(), s.boxes.end(), np);
            if (box != s.boxes.end() && *box == np) {
                Cell nb{np.x + dx[d], np.y + dy[d]};
                if (wall(nb)) continue;
                if (std::binary_search(s.boxes.begin(), s.boxes.end(), nb)) continue;
                SokobanState next{np, s.boxes};
                next.boxes[static_cast<std::size_t>(box - s.boxes.begin())] = nb;
                std::sort(next.boxes.begin(), next.boxes.end());
                out.emplace_back(std::move(next), 1.0);
            } else {
                out.emplace_back(SokobanState{np, s.boxes}, 1.0);
            }
        }
        return out;
    }

    friend bool operator==(const SokobanLevel&, const SokobanLevel&) = default;
};

inline std::vector<std::pair<SokobanState, double>> sokoban_successors(const SokobanLevel& level,
                                                                       const SokobanState& s) {
    return level.successors(s);
}

// Sum over boxes of Manhattan distance to the nearest goal cell.
inline double sokoban_boxsum(const SokobanLevel& level, const SokobanState& s) {
    double total = 0.0;
    for (const Cell& b : s.boxes) {
        int best = level.width + level.height;
        for (const Cell& g : level.goal_cells)
            best = std::min(best, std::abs(b.x - g.x) + std::abs(b.y - g.y));
        total += best;
    }
    return total;
}

// A box stuck in a non-goal corner can never be moved again. Optional
// pre-filter for speed experiments; the default pipeline does not use it.
inline bool sokoban_corner_deadlock(const SokobanLevel& level, const SokobanState& s) {
    for (const Cell& b : s.boxes) {
        if (level.is_goal_cell(b)) continue;
        bool up = level.wall(Cell{b.x, b.y - 1});
        bool down = level.wall(Cell{b.x, b.y + 1});
        bool left = level.wall(Cell{b.x - 1, b.y});
        bool right = level.wall(Cell{b.x + 1, b.y});
        if ((up || down) && (left || right)) return true;
    }
    return false;
}

// Reverse-play generation: boxes start on their goals in a walled
// random room, then a seeded walk of player moves and box pulls (the
// inverse of a push) scatters them. Replaying the pulls backwards as
// pushes solves the level, so every emitted level is solvable.
inline SokobanLevel sokoban_generate(int n, int boxes, std::uint64_t seed,
                                     double wall_rate = 0.12) {
    if (n < 3) throw std::invalid_argument("sokoban_generate: n must be >= 3");
    if (boxes < 0) throw std::invalid_argument("sokoban_generate: boxes must be >= 0");

    static constexpr int dx[] = {0, 0, -1, 1};
    static constexpr int dy[] = {-1, 1, 0, 0};
    for (int attempt = 0; attempt < 50; ++attempt) {
        Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(attempt));
        SokobanLevel lv;
        lv.width = n;
        lv.height = n;
        lv.wall_cells.assign(static_cast<std::size_t>(n) * n, 0);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                bool border = x == 0 || y == 0 || x == n - 1 || y == n - 1;
                if (border || rng.bernoulli(wall_rate)) lv.set_wall(Cell{x, y}, true);
            }

        std::vector<Cell> free_cells;
        for (int y = 1; y + 1 < n; ++y)
            for (int x = 1; x + 1 < n; ++x)
                if (!lv.wall(Cell{x, y})) free_cells.push_back(Cell{x, y});
        if (free_cells.size() < static_cast<std::size_t>(boxes) + 1) continue;

        rng.shuffle(free_cells);
        lv.goal_cells.assign(free_cells.begin(), free_cells.begin() + boxes);
        std::sort(lv.goal_cells.begin(), lv.goal_cells.end());
        Cell player = free_cells[static_cast<std::size_t>(boxes)];
        std::vector<Cell> box_now = lv.goal_cells;

        auto box_at = [&box_now](const Cell& c) {
            return std::find(box_now.begin(), box_now.end(), c);
        };
        auto free_of_box = [&](const Cell& c) { return !lv.wall(c) && box_at(c) == box_now.end(); };

        int steps = 24 * n * n;
        for (int step = 0; step < steps; ++step) {
            // Prefer pulls so boxes actually leave their goals.
            bool want_pull = rng.bernoulli(0.7);
            int pulls[4];
            int pull_count = 0;
            int moves[4];
            int move_count = 0;
            for (int d = 0; d < 4; ++d) {
                Cell ahead{player.x + dx[d], player.y + dy[d]};
                Cell behind{player.x - dx[d], player.y - dy[d]};
                if (box_at(ahead) != box_now.end() && free_of_box(behind)) pulls[pull_count++] = d;
                if (free_of_box(ahead)) moves[move_count++] = d;
            }
            if (want_pull && pull_count > 0) {
                int d = pulls[rng.below(static_cast<std::uint32_t>(pull_count))];
                *box_at(Cell{player.x + dx[d], player.y + dy[d]}) = player;
                player = Cell{player.x - dx[d], player.y - dy[d]};
            } else if (move_count > 0) {
                int d = moves[rng.below(static_cast<std::uint32_t>(move_count))];
                player = Cell{player.x + dx[d], player.y + dy[d]};
            }
        }

        lv.initial_player = player;
        lv.initial_boxes = box_now;
        std::sort(lv.initial_boxes.begin(), lv.initial_boxes.end());
        if (boxes > 0 && lv.is_goal(lv.initial_state())) continue;  // walk went nowhere
        return lv;
    }
    throw SokobanGenerationError("sokoban_generate: no usable level after bounded retries");
}

}  // namespace lstar

template <>
struct std::hash<lstar::SokobanState> {
    std::size_t operator()(const lstar::SokobanState& s) const noexcept {
        std::size_t h = std::hash<lstar::Cell>{}(s.player);
        for (const auto& b : s.boxes) h = lstar::hash_mix(h, std::hash<lstar::Cell>{}(b));
        return h;
    }
};

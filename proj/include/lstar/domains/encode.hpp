#pragma once

#include <lstar/domains/cell.hpp>
#include <lstar/domains/maze.hpp>
#include <lstar/domains/sokoban.hpp>

#include <cstddef>
#include <vector>

namespace lstar {

// Dense channel-major stack of binary occupancy planes at the
// instance's native resolution. No fixed spatial size: the model
// consuming these is size-agnostic.
struct FeatureTensor {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> values;  // index (c, y, x) = (c * height + y) * width + x

    double& at(int c, int y, int x) {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double channel_sum(int c) const {
        double s = 0.0;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) s += at(c, y, x);
        return s;
    }
};

inline constexpr int kFeatureChannels = 4;

// Maze planes: 0 walls, 1 agent, 2 goal, 3 teleport endpoints.
inline FeatureTensor encode_state(const MazeGrid& grid, const Cell& agent) {
    FeatureTensor t{kFeatureChannels, grid.height, grid.width,
                    std::vector<double>(static_cast<std::size_t>(kFeatureChannels) *
                                        grid.height * grid.width, 0.0)};
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x)
            if (!grid.passable(Cell{x, y})) t.at(0, y, x) = 1.0;
    t.at(1, agent.y, agent.x) = 1.0;
    t.at(2, grid.goal.y, grid.goal.x) = 1.0;
    for (const auto& [a, b] : grid.teleports) {
        t.at(3, a.y, a.x) = 1.0;
        t.at(3, b.y, b.x) = 1.0;
    }
    return t;
}

// Sokoban planes: 0 walls, 1 player, 2 boxes, 3 goal cells.
inline FeatureTensor encode_state(const SokobanLevel& level, const SokobanState& s) {
    FeatureTensor t{kFeatureChannels, level.height, level.width,
                    std::vector<double>(static_cast<std::size_t>(kFeatureChannels) *
                                        level.height * level.width, 0.0)};
    for (int y = 0; y < level.height; ++y)
        for (int x = 0; x < level.width; ++x)
            if (level.wall(Cell{x, y})) t.at(0, y, x) = 1.0;
    t.at(1, s.player.y, s.player.x) = 1.0;
    for (const Cell& b : s.boxes) t.at(2, b.y, b.x) = 1.0;
    for (const Cell& g : level.goal_cells) t.at(3, g.y, g.x) = 1.0;
    return t;
}

}  // namespace lstar

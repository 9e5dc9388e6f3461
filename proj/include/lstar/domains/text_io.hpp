#pragma once

#include <lstar/domains/cell.hpp>
#include <lstar/domains/maze.hpp>
#include <lstar/domains/sokoban.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lstar {

// Parse failures carry a stable kind tag ahead of the detail text.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind(kind) {}
    std::string kind;
};

using ParsedInstance = std::variant<MazeGrid, SokobanLevel>;

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::pair<int, int> parse_dimensions(const std::string& line) {
    std::istringstream in(line);
    int w = 0, h = 0;
    if (!(in >> w >> h) || w < 1 || h < 1)
        throw ParseError("inconsistent-dimensions", "expected `W H` on line 2, got `" + line + "`");
    std::string rest;
    if (in >> rest)
        throw ParseError("inconsistent-dimensions", "trailing content after `W H`: `" + line + "`");
    return {w, h};
}

inline void check_row_count(std::size_t rows, int h) {
    if (rows != static_cast<std::size_t>(h))
        throw ParseError("inconsistent-dimensions",
                         "expected " + std::to_string(h) + " rows, got " + std::to_string(rows));
}

inline void check_row_width(const std::string& row, int w, int y) {
    if (row.size() != static_cast<std::size_t>(w))
        throw ParseError("inconsistent-dimensions",
                         "row " + std::to_string(y) + " has " + std::to_string(row.size()) +
                             " cells, expected " + std::to_string(w));
}

}  // namespace detail

inline MazeGrid parse_maze_body(const std::vector<std::string>& rows, int w, int h) {
    detail::check_row_count(rows.size(), h);
    MazeGrid g;
    g.width = w;
    g.height = h;
    g.passable_cells.assign(static_cast<std::size_t>(w) * h, 0);
    std::optional<Cell> start, goal;
    std::array<std::vector<Cell>, 9> digit_cells;
    for (int y = 0; y < h; ++y) {
        detail::check_row_width(rows[static_cast<std::size_t>(y)], w, y);
        for (int x = 0; x < w; ++x) {
            char ch = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            Cell c{x, y};
            if (ch == '#') continue;
            g.set_passable(c, true);
            if (ch == '.') continue;
            if (ch == 'S') {
                if (start) throw ParseError("malformed-character", "duplicate start glyph");
                start = c;
            } else if (ch == 'G') {
                if (goal) throw ParseError("malformed-character", "duplicate goal glyph");
                goal = c;
            } else if (ch >= '1' && ch <= '9') {
                digit_cells[static_cast<std::size_t>(ch - '1')].push_back(c);
            } else {
                throw ParseError("malformed-character",
                                 std::string("maze glyph `") + ch + "` is not recognized");
            }
        }
    }
    if (!start || !goal)
        throw ParseError("malformed-character", "maze needs exactly one S and one G");
    g.start = *start;
    g.goal = *goal;
    for (std::size_t d = 0; d < digit_cells.size(); ++d) {
        const auto& cells = digit_cells[d];
        if (cells.empty()) continue;
        if (cells.size() != 2)
            throw ParseError("unpaired-teleport-digit",
                             "digit " + std::to_string(d + 1) + " appears " +
                                 std::to_string(cells.size()) + " times, expected 2");
        g.teleports.emplace_back(cells[0], cells[1]);
    }
    detail::normalize_teleports(g);
    return g;
}

inline SokobanLevel parse_sokoban_body(const std::vector<std::string>& rows, int w, int h) {
    detail::check_row_count(rows.size(), h);
    SokobanLevel lv;
    lv.width = w;
    lv.height = h;
    lv.wall_cells.assign(static_cast<std::size_t>(w) * h, 0);
    std::optional<Cell> player;
    for (int y = 0; y < h; ++y) {
        detail::check_row_width(rows[static_cast<std::size_t>(y)], w, y);
        for (int x = 0; x < w; ++x) {
            char ch = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            Cell c{x, y};
            switch (ch) {
                case '#': lv.set_wall(c, true); break;
                case ' ': break;
                case '@': case '+':
                    if (player) throw ParseError("malformed-character", "duplicate player glyph");
                    player = c;
                    if (ch == '+') lv.goal_cells.push_back(c);
                    break;
                case '$': case '*':
                    lv.initial_boxes.push_back(c);
                    if (ch == '*') lv.goal_cells.push_back(c);
                    break;
                case '.': lv.goal_cells.push_back(c); break;
                default:
                    throw ParseError("malformed-character",
                                     std::string("sokoban glyph `") + ch + "` is not recognized");
            }
        }
    }
    if (!player) throw ParseError("malformed-character", "sokoban needs exactly one player glyph");
    lv.initial_player = *player;
    std::sort(lv.goal_cells.begin(), lv.goal_cells.end());
    std::sort(lv.initial_boxes.begin(), lv.initial_boxes.end());
    return lv;
}

// First line names the domain, second line is `W H`, then H rows of W
// single-character cells.
inline ParsedInstance parse_instance(const std::string& text) {
    auto lines = detail::split_lines(text);
    if (lines.size() < 2)
        throw ParseError("inconsistent-dimensions", "need a domain line and a `W H` line");
    auto [w, h] = detail::parse_dimensions(lines[1]);
    std::vector<std::string> rows(lines.begin() + 2, lines.end());
    if (lines[0] == "maze") return parse_maze_body(rows, w, h);
    if (lines[0] == "sokoban") return parse_sokoban_body(rows, w, h);
    throw ParseError("malformed-character", "unknown domain line `" + lines[0] + "`");
}

inline std::string render_instance(const MazeGrid& g) {
    std::string out = "maze\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n";
    std::vector<std::string> rows(static_cast<std::size_t>(g.height),
                                  std::string(static_cast<std::size_t>(g.width), '#'));
    auto put = [&rows](const Cell& c, char ch) {
        rows[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = ch;
    };
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            if (g.passable(Cell{x, y})) put(Cell{x, y}, '.');
    for (std::size_t p = 0; p < g.teleports.size(); ++p) {
        char digit = static_cast<char>('1' + p);
        put(g.teleports[p].first, digit);
        put(g.teleports[p].second, digit);
    }
    put(g.start, 'S');
    put(g.goal, 'G');
    for (const auto& row : rows) out += row + "\n";
    return out;
}

inline std::string render_instance(const SokobanLevel& lv) {
    std::string out = "sokoban\n" + std::to_string(lv.width) + " " + std::to_string(lv.height) + "\n";
    std::vector<std::string> rows(static_cast<std::size_t>(lv.height),
                                  std::string(static_cast<std::size_t>(lv.width), ' '));
    auto put = [&rows](const Cell& c, char ch) {
        rows[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = ch;
    };
    for (int y = 0; y < lv.height; ++y)
        for (int x = 0; x < lv.width; ++x)
            if (lv.wall(Cell{x, y})) put(Cell{x, y}, '#');
    for (const Cell& g : lv.goal_cells) put(g, '.');
    for (const Cell& b : lv.initial_boxes) put(b, lv.is_goal_cell(b) ? '*' : '$');
    put(lv.initial_player, lv.is_goal_cell(lv.initial_player) ? '+' : '@');
    for (const auto& row : rows) out += row + "\n";
    return out;
}

inline std::string render_instance(const ParsedInstance& inst) {
    return std::visit([](const auto& v) { return render_instance(v); }, inst);
}

// Stable state serializations used by dataset records.
inline std::string state_key(const Cell& c) {
    return std::to_string(c.x) + "," + std::to_string(c.y);
}

inline std::string state_key(const SokobanState& s) {
    std::string key = std::to_string(s.player.x) + "," + std::to_string(s.player.y);
    for (const Cell& b : s.boxes) key += ";" + std::to_string(b.x) + "," + std::to_string(b.y);
    return key;
}

namespace detail {

inline Cell parse_cell_token(const std::string& token) {
    auto comma = token.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == token.size())
        throw ParseError("malformed-character", "state key: expected x,y in '" + token + "'");
    try {
        std::size_t used_x = 0, used_y = 0;
        int x = std::stoi(token.substr(0, comma), &used_x);
        int y = std::stoi(token.substr(comma + 1), &used_y);
        if (used_x != comma || used_y != token.size() - comma - 1)
            throw std::invalid_argument("trailing");
        return Cell{x, y};
    } catch (const std::exception&) {
        throw ParseError("malformed-character", "state key: expected x,y in '" + token + "'");
    }
}

}  // namespace detail

// Inverses of the serializations above.
inline Cell parse_cell_key(const std::string& key) { return detail::parse_cell_token(key); }

inline SokobanState parse_sokoban_key(const std::string& key) {
    SokobanState state;
    std::size_t begin = 0;
    bool first = true;
    while (begin <= key.size()) {
        auto end = key.find(';', begin);
        if (end == std::string::npos) end = key.size();
        Cell c = detail::parse_cell_token(key.substr(begin, end - begin));
        if (first)
            state.player = c;
        else
            state.boxes.push_back(c);
        first = false;
        begin = end + 1;
        if (end == key.size()) break;
    }
    std::sort(state.boxes.begin(), state.boxes.end());
    return state;
}

// Instance-dispatched parse so generic code can turn stored keys back into
// states of the right type.
inline Cell parse_state_key(const MazeGrid&, const std::string& key) { return parse_cell_key(key); }
inline SokobanState parse_state_key(const SokobanLevel&, const std::string& key) {
    return parse_sokoban_key(key);
}

}  // namespace lstar

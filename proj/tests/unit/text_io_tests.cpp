#include <catch2/catch_amalgamated.hpp>

#include <lstar/domains/encode.hpp>
#include <lstar/domains/maze.hpp>
#include <lstar/domains/sokoban.hpp>
#include <lstar/domains/text_io.hpp>

#include <string>
#include <variant>

using lstar::Cell;
using lstar::MazeGrid;
using lstar::ParseError;
using lstar::SokobanLevel;

TEST_CASE("render then parse returns the same instance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = lstar::maze_generate(6, seed, 0.1, 4);
        auto text = lstar::render_instance(g);
        auto back = std::get<MazeGrid>(lstar::parse_instance(text));
        CHECK(back == g);
        CHECK(lstar::render_instance(back) == text);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto lv = lstar::sokoban_generate(8, 2, seed);
        auto text = lstar::render_instance(lv);
        auto back = std::get<SokobanLevel>(lstar::parse_instance(text));
        CHECK(back == lv);
        CHECK(lstar::render_instance(back) == text);
    }
}

TEST_CASE("lonely teleport digit is rejected") {
    const std::string text =
        "maze\n"
        "5 3\n"
        "#####\n"
        "#S3G#\n"
        "#####\n";
    try {
        lstar::parse_instance(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind == "unpaired-teleport-digit");
    }
}

TEST_CASE("unknown glyphs are rejected") {
    const std::string text =
        "maze\n"
        "5 3\n"
        "#####\n"
        "#S?G#\n"
        "#####\n";
    try {
        lstar::parse_instance(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind == "malformed-character");
    }
}

TEST_CASE("row shape mismatches are rejected") {
    const std::string short_row =
        "maze\n"
        "5 3\n"
        "#####\n"
        "#SG#\n"
        "#####\n";
    const std::string missing_row =
        "maze\n"
        "5 3\n"
        "#####\n"
        "#S.G#\n";
    const std::string bad_header = "maze\nfive 3\n";
    for (const auto* text : {&short_row, &missing_row, &bad_header}) {
        try {
            lstar::parse_instance(*text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.kind == "inconsistent-dimensions");
        }
    }
}

TEST_CASE("unknown domain is rejected") {
    CHECK_THROWS_AS(lstar::parse_instance("gridworld\n3 3\n"), ParseError);
}

TEST_CASE("box-on-goal and player-on-goal glyphs overlap correctly") {
    const std::string text =
        "sokoban\n"
        "6 4\n"
        "######\n"
        "#+$ .#\n"
        "# *  #\n"
        "######\n";
    auto lv = std::get<SokobanLevel>(lstar::parse_instance(text));
    CHECK(lv.initial_player == Cell{1, 1});
    CHECK(lv.initial_boxes == std::vector<Cell>{Cell{2, 1}, Cell{2, 2}});
    // goals: player cell, the box-on-goal cell and the bare goal.
    CHECK(lv.goal_cells == std::vector<Cell>{Cell{1, 1}, Cell{2, 2}, Cell{4, 1}});
    CHECK(lv.is_goal_cell(Cell{2, 2}));
    CHECK_FALSE(lv.is_goal_cell(Cell{2, 1}));
    auto rendered = lstar::render_instance(lv);
    auto back = std::get<SokobanLevel>(lstar::parse_instance(rendered));
    CHECK(back == lv);
}

TEST_CASE("maze text without start or goal is rejected") {
    CHECK_THROWS_AS(lstar::parse_instance("maze\n3 1\n.S.\n"), ParseError);
    CHECK_THROWS_AS(lstar::parse_instance("maze\n3 1\n.G.\n"), ParseError);
}

TEST_CASE("feature planes are one-hot where they should be") {
    auto g = lstar::maze_generate(5, 21, 0.1, 2);
    auto t = lstar::encode_state(g, g.start);
    REQUIRE(t.channels == 4);
    CHECK(t.height == g.height);
    CHECK(t.width == g.width);
    CHECK(t.channel_sum(1) == 1.0);
    CHECK(t.at(1, g.start.y, g.start.x) == 1.0);
    CHECK(t.channel_sum(2) == 1.0);
    CHECK(t.at(2, g.goal.y, g.goal.x) == 1.0);
    CHECK(t.channel_sum(3) == 4.0);
    int walls = 0;
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            if (!g.passable(Cell{x, y})) ++walls;
    CHECK(t.channel_sum(0) == static_cast<double>(walls));
}

TEST_CASE("sokoban planes count boxes and goals") {
    auto lv = lstar::sokoban_generate(8, 2, 4);
    auto s = lv.initial_state();
    auto t = lstar::encode_state(lv, s);
    CHECK(t.channel_sum(1) == 1.0);
    CHECK(t.channel_sum(2) == 2.0);
    CHECK(t.channel_sum(3) == 2.0);
    for (const Cell& b : s.boxes) CHECK(t.at(2, b.y, b.x) == 1.0);
}

TEST_CASE("encoding matches the glyph grid after parsing") {
    auto g = lstar::maze_generate(4, 8, 0.0, 1);
    auto text = lstar::render_instance(g);
    auto back = std::get<MazeGrid>(lstar::parse_instance(text));
    auto t = lstar::encode_state(back, back.start);
    // Count glyphs straight off the text body and compare plane sums.
    auto body = text.substr(text.find('\n', text.find('\n') + 1) + 1);
    int walls = 0, teleport_cells = 0;
    for (char ch : body) {
        if (ch == '#') ++walls;
        if (ch >= '1' && ch <= '9') ++teleport_cells;
    }
    CHECK(t.channel_sum(0) == static_cast<double>(walls));
    CHECK(t.channel_sum(3) == static_cast<double>(teleport_cells));
}

TEST_CASE("state keys serialize coordinates stably") {
    CHECK(lstar::state_key(Cell{3, 11}) == "3,11");
    lstar::SokobanState s{Cell{1, 2}, {Cell{3, 4}, Cell{5, 6}}};
    CHECK(lstar::state_key(s) == "1,2;3,4;5,6");
}

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <lstar/losses/losses.hpp>
#include <lstar/search/astar.hpp>

namespace lstar {

// Every knob an experiment run reads, with desk-scale defaults. The same
// keys appear in configuration files as `key = value` lines.
struct ExperimentConfig {
    std::string domain = "maze";  // maze | sokoban
    int size = 10;                // generator n (maze grids are 2n+1 wide)
    int boxes = 2;                // sokoban only
    double wall_break_rate = 0.1;
    int teleport_pairs = 4;
    double wall_rate = 0.12;  // sokoban interior wall density
    std::uint64_t seed = 1;
    std::uint64_t budget = 100000;  // expansion budget per search
    std::string loss = "lstar";     // l2 | lstar
    double margin = 0.0;
    double lr = 0.01;
    int epochs = 4;
    int train_count = 200;
    int test_count = 100;
    std::string monotone_direction = "as-printed";  // as-printed | as-eq3
    std::string tie_break = "high-g";               // high-g | low-g | fifo
    std::string base_heuristic = "manhattan";       // dataset-building heuristic
    double dead_end_multiplier = 2.0;
    std::string output_dir = ".";
};

inline MonotoneDirection parse_monotone_direction(const std::string& name) {
    if (name == "as-printed") return MonotoneDirection::as_printed;
    if (name == "as-eq3") return MonotoneDirection::as_eq3;
    throw std::invalid_argument("config: unknown monotone_direction " + name);
}

inline TieBreak parse_tie_break(const std::string& name) {
    if (name == "high-g") return TieBreak::high_g_first;
    if (name == "low-g") return TieBreak::low_g_first;
    if (name == "fifo") return TieBreak::fifo;
    throw std::invalid_argument("config: unknown tie_break " + name);
}

inline void validate_experiment_config(const ExperimentConfig& c) {
    if (c.domain != "maze" && c.domain != "sokoban")
        throw std::invalid_argument("config: domain must be maze or sokoban");
    if (c.loss != "l2" && c.loss != "lstar")
        throw std::invalid_argument("config: loss must be l2 or lstar");
    if (c.size < 2) throw std::invalid_argument("config: size must be >= 2");
    if (c.boxes < 1) throw std::invalid_argument("config: boxes must be >= 1");
    if (c.budget < 1) throw std::invalid_argument("config: budget must be >= 1");
    if (c.margin < 0.0) throw std::invalid_argument("config: margin must be >= 0");
    if (c.lr <= 0.0) throw std::invalid_argument("config: lr must be > 0");
    if (c.epochs < 0) throw std::invalid_argument("config: epochs must be >= 0");
    if (c.train_count < 0 || c.test_count < 0)
        throw std::invalid_argument("config: train/test counts must be >= 0");
    if (c.wall_break_rate < 0.0 || c.wall_break_rate > 1.0)
        throw std::invalid_argument("config: wall_break_rate must be in [0, 1]");
    if (c.wall_rate < 0.0 || c.wall_rate > 1.0)
        throw std::invalid_argument("config: wall_rate must be in [0, 1]");
    if (c.teleport_pairs < 0 || c.teleport_pairs > 9)
        throw std::invalid_argument("config: teleport_pairs must be in [0, 9]");
    if (c.dead_end_multiplier <= 0.0)
        throw std::invalid_argument("config: dead_end_multiplier must be > 0");
    parse_monotone_direction(c.monotone_direction);
    parse_tie_break(c.tie_break);
    if (c.output_dir.empty()) throw std::invalid_argument("config: output_dir must be non-empty");
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T out{};
    in >> out;
    if (in.fail() || !(in >> std::ws).eof())
        throw std::invalid_argument("config: bad value '" + value + "' for " + key);
    return out;
}

}  // namespace detail

inline void apply_config_entry(ExperimentConfig& c, const std::string& key,
                               const std::string& value) {
    if (key == "domain")
        c.domain = value;
    else if (key == "size")
        c.size = detail::parse_number<int>(key, value);
    else if (key == "boxes")
        c.boxes = detail::parse_number<int>(key, value);
    else if (key == "wall_break_rate")
        c.wall_break_rate = detail::parse_number<double>(key, value);
    else if (key == "teleport_pairs")
        c.teleport_pairs = detail::parse_number<int>(key, value);
    else if (key == "wall_rate")
        c.wall_rate = detail::parse_number<double>(key, value);
    else if (key == "seed")
        c.seed = detail::parse_number<std::uint64_t>(key, value);
    else if (key == "budget")
        c.budget = detail::parse_number<std::uint64_t>(key, value);
    else if (key == "loss")
        c.loss = value;
    else if (key == "margin")
        c.margin = detail::parse_number<double>(key, value);
    else if (key == "lr")
        c.lr = detail::parse_number<double>(key, value);
    else if (key == "epochs")
        c.epochs = detail::parse_number<int>(key, value);
    else if (key == "train_count")
        c.train_count = detail::parse_number<int>(key, value);
    else if (key == "test_count")
        c.test_count = detail::parse_number<int>(key, value);
    else if (key == "monotone_direction")
        c.monotone_direction = value;
    else if (key == "tie_break")
        c.tie_break = value;
    else if (key == "base_heuristic")
        c.base_heuristic = value;
    else if (key == "dead_end_multiplier")
        c.dead_end_multiplier = detail::parse_number<double>(key, value);
    else if (key == "output_dir")
        c.output_dir = value;
    else
        throw std::invalid_argument("config: unknown key " + key);
}

// `key = value` lines; blank lines and #-comments are skipped.
inline ExperimentConfig parse_experiment_config(std::istream& in,
                                                ExperimentConfig base = ExperimentConfig{}) {
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got: " + line);
        apply_config_entry(base, detail::trim(line.substr(0, eq)),
                           detail::trim(line.substr(eq + 1)));
    }
    return base;
}

inline ExperimentConfig load_experiment_config(const std::string& path,
                                               ExperimentConfig base = ExperimentConfig{}) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return parse_experiment_config(in, std::move(base));
}

// LSTAR_OUTPUT_DIR wins over both file and default values.
inline void apply_output_dir_override(ExperimentConfig& c) {
    if (const char* dir = std::getenv("LSTAR_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
        c.output_dir = dir;
}

}  // namespace lstar

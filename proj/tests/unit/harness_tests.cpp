#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <lstar/data/dataset.hpp>
#include <lstar/domains/text_io.hpp>
#include <lstar/harness/evaluate.hpp>
#include <lstar/harness/experiment.hpp>
#include <lstar/harness/heuristics.hpp>
#include <lstar/harness/protocols.hpp>
#include <lstar/harness/train.hpp>

#include "../support/test_oracles.hpp"

namespace {

lstar::ModelConfig tiny_model_config(std::uint64_t seed) {
    lstar::ModelConfig cfg;
    cfg.conv_layers = {{4, 3}, {4, 3}};
    cfg.hidden_width = 8;
    cfg.seed = seed;
    return cfg;
}

std::vector<std::pair<std::string, lstar::MazeGrid>> maze_pool(int count, int n,
                                                               std::uint64_t first_seed) {
    std::vector<std::pair<std::string, lstar::MazeGrid>> pool;
    for (int i = 0; i < count; ++i) {
        std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
        pool.emplace_back("maze-" + std::to_string(seed), lstar::maze_generate(n, seed, 0.1, 2));
    }
    return pool;
}

lstar::TrainingSample solved_maze_sample(const std::string& ref, const lstar::MazeGrid& grid,
                                         bool labeled) {
    auto outcome = lstar::astar(
        grid, [&grid](const lstar::Cell& c) { return lstar::maze_manhattan(grid, c); },
        lstar::SearchOptions{100000});
    REQUIRE(outcome.solved());
    auto sample = lstar::build_sample(ref, outcome);
    if (labeled) sample = lstar::label_cost_to_go(std::move(sample), grid);
    return sample;
}

}  // namespace

TEST_CASE("experiment config defaults validate and names parse") {
    lstar::ExperimentConfig cfg;
    REQUIRE_NOTHROW(lstar::validate_experiment_config(cfg));

    REQUIRE(lstar::parse_monotone_direction("as-printed") == lstar::MonotoneDirection::as_printed);
    REQUIRE(lstar::parse_monotone_direction("as-eq3") == lstar::MonotoneDirection::as_eq3);
    REQUIRE_THROWS_AS(lstar::parse_monotone_direction("upside-down"), std::invalid_argument);
    REQUIRE(lstar::parse_tie_break("high-g") == lstar::TieBreak::high_g_first);
    REQUIRE(lstar::parse_tie_break("low-g") == lstar::TieBreak::low_g_first);
    REQUIRE(lstar::parse_tie_break("fifo") == lstar::TieBreak::fifo);
    REQUIRE_THROWS_AS(lstar::parse_tie_break("random"), std::invalid_argument);
}

TEST_CASE("config files override defaults line by line") {
    std::istringstream in(
        "# comment line\n"
        "domain = sokoban\n"
        "size=8   # trailing comment\n"
        "\n"
        "loss = l2\n"
        "margin = 0.5\n"
        "seed = 42\n"
        "budget = 5000\n"
        "tie_break = fifo\n");
    auto cfg = lstar::parse_experiment_config(in);
    REQUIRE(cfg.domain == "sokoban");
    REQUIRE(cfg.size == 8);
    REQUIRE(cfg.loss == "l2");
    REQUIRE(cfg.margin == 0.5);
    REQUIRE(cfg.seed == 42);
    REQUIRE(cfg.budget == 5000);
    REQUIRE(cfg.tie_break == "fifo");
    REQUIRE(cfg.epochs == 4);  // untouched default

    auto parse_one = [](const std::string& text) {
        std::istringstream one(text);
        return lstar::parse_experiment_config(one);
    };
    REQUIRE_THROWS_AS(parse_one("mystery = 3\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_one("size = ten\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_one("size 10\n"), std::invalid_argument);

    auto reject = [&parse_one](const std::string& text) {
        auto bad = parse_one(text);
        REQUIRE_THROWS_AS(lstar::validate_experiment_config(bad), std::invalid_argument);
    };
    reject("domain = chess\n");
    reject("loss = l1\n");
    reject("budget = 0\n");
    reject("lr = 0\n");
    reject("epochs = -1\n");
    reject("teleport_pairs = 10\n");
    reject("wall_break_rate = 1.5\n");
    reject("monotone_direction = x\n");

    // zero is a legal count for generation and training passes
    REQUIRE_NOTHROW(lstar::validate_experiment_config(parse_one("epochs = 0\ntrain_count = 0\n")));
}

TEST_CASE("output directory env override wins") {
    lstar::ExperimentConfig cfg;
    cfg.output_dir = "from-file";
    ::unsetenv("LSTAR_OUTPUT_DIR");
    lstar::apply_output_dir_override(cfg);
    REQUIRE(cfg.output_dir == "from-file");
    ::setenv("LSTAR_OUTPUT_DIR", "/tmp/elsewhere", 1);
    lstar::apply_output_dir_override(cfg);
    REQUIRE(cfg.output_dir == "/tmp/elsewhere");
    ::unsetenv("LSTAR_OUTPUT_DIR");
}

TEST_CASE("state keys round-trip through their text form") {
    auto rng = lstar::Rng(77);
    for (int i = 0; i < 50; ++i) {
        lstar::Cell c{rng.range_int(0, 40), rng.range_int(0, 40)};
        REQUIRE(lstar::parse_cell_key(lstar::state_key(c)) == c);
    }
    lstar::SokobanState s;
    s.player = {3, 4};
    s.boxes = {{5, 6}, {1, 2}, {5, 1}};
    std::sort(s.boxes.begin(), s.boxes.end());
    auto back = lstar::parse_sokoban_key(lstar::state_key(s));
    REQUIRE(back.player == s.player);
    REQUIRE(back.boxes == s.boxes);

    // box order normalizes on parse
    auto scrambled = lstar::parse_sokoban_key("3,4;5,6;1,2;5,1");
    REQUIRE(scrambled.boxes == s.boxes);

    REQUIRE_THROWS_AS(lstar::parse_cell_key("12"), lstar::ParseError);
    REQUIRE_THROWS_AS(lstar::parse_cell_key("a,b"), lstar::ParseError);
    REQUIRE_THROWS_AS(lstar::parse_cell_key("1,2,3"), lstar::ParseError);
    REQUIRE_THROWS_AS(lstar::parse_sokoban_key(""), lstar::ParseError);
}

TEST_CASE("named heuristics compute what their names say") {
    auto grid = lstar::maze_generate(5, 11, 0.15, 2);

    auto zero = lstar::maze_heuristic("zero", grid);
    auto manhattan = lstar::maze_heuristic("manhattan", grid);
    auto oracle = lstar::maze_heuristic("oracle", grid);
    auto exact = lstar::shortest_path_oracle(grid);
    double dead_h = 2.0 * exact.max_finite_cost() + 1.0;
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x) {
            lstar::Cell c{x, y};
            if (!grid.passable(c)) continue;
            REQUIRE(zero(c) == 0.0);
            REQUIRE(manhattan(c) == lstar::maze_manhattan(grid, c));
            auto ref = lstar::testing::maze_bfs_to_goal(grid, c);
            if (ref.has_value())
                REQUIRE(oracle(c) == static_cast<double>(*ref));
            else
                REQUIRE(oracle(c) == dead_h);
        }

    auto params = lstar::model_init(tiny_model_config(3));
    auto model = lstar::maze_heuristic("model", grid, &params);
    lstar::Cell probe = grid.start;
    REQUIRE(model(probe) == lstar::forward(params, lstar::encode_state(grid, probe)));

    REQUIRE_THROWS_AS(lstar::maze_heuristic("euclid", grid), std::invalid_argument);
    REQUIRE_THROWS_AS(lstar::maze_heuristic("model", grid, nullptr), std::invalid_argument);

    auto level = lstar::sokoban_generate(5, 1, 9);
    auto boxsum = lstar::sokoban_heuristic("boxsum", level);
    REQUIRE(boxsum(level.initial_state()) ==
            lstar::sokoban_boxsum(level, level.initial_state()));
    REQUIRE_THROWS_AS(lstar::sokoban_heuristic("euclid", level), std::invalid_argument);
}

namespace {

// MazeGrid stand-in that counts feature encodings so the memoization of
// model_heuristic is observable.
struct CountingMaze {
    using state_type = lstar::Cell;
    lstar::MazeGrid grid;
    mutable int encode_calls = 0;

    lstar::Cell initial_state() const { return grid.initial_state(); }
    bool is_goal(const lstar::Cell& c) const { return grid.is_goal(c); }
    std::vector<std::pair<lstar::Cell, double>> successors(const lstar::Cell& c) const {
        return grid.successors(c);
    }
};

lstar::FeatureTensor encode_state(const CountingMaze& m, const lstar::Cell& c) {
    ++m.encode_calls;
    return lstar::encode_state(m.grid, c);
}

}  // namespace

TEST_CASE("model heuristic pays one forward pass per distinct state") {
    CountingMaze counting{lstar::maze_generate(4, 5, 0.1, 1), 0};
    auto params = lstar::model_init(tiny_model_config(4));
    auto h = lstar::model_heuristic(counting, params);
    std::vector<lstar::Cell> cells = {counting.grid.start, counting.grid.goal, {3, 1}};
    REQUIRE(cells[0] != cells[2]);
    REQUIRE(cells[1] != cells[2]);
    for (int round = 0; round < 5; ++round) {
        for (const auto& c : cells) {
            double first = h(c);
            REQUIRE(h(c) == first);
        }
    }
    REQUIRE(counting.encode_calls == static_cast<int>(cells.size()));
}

TEST_CASE("evaluating the zero heuristic reproduces blind search effort") {
    auto pool = maze_pool(10, 5, 300);
    lstar::SearchOptions options{100000};
    std::vector<std::string> solved_refs;
    auto report = lstar::evaluate_instances(
        pool, [](const lstar::MazeGrid& g) { return lstar::maze_heuristic("zero", g); },
        [](const lstar::MazeGrid& g) { return lstar::optimal_cost_blind(g); }, options,
        [&](const std::string& ref, const lstar::MazeGrid&,
            const lstar::SearchOutcome<lstar::Cell>&) { solved_refs.push_back(ref); });

    REQUIRE(report.rows.size() == pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        auto direct = lstar::astar(
            pool[i].second, [](const lstar::Cell&) { return 0.0; }, options);
        const auto& row = report.rows[i];
        REQUIRE(row.instance == pool[i].first);
        REQUIRE(row.solved == direct.solved());
        REQUIRE(row.expanded == direct.expanded_count);
        REQUIRE(row.generated == direct.generated_count);
        REQUIRE(row.reopened == direct.reopened_count);
        REQUIRE(row.solved);
        REQUIRE(*row.plan_cost == direct.plan->total_cost);
        REQUIRE(*row.optimal_cost == direct.plan->total_cost);
        REQUIRE(*row.gap == 0.0);
    }
    REQUIRE(solved_refs.size() == report.solved_count());
    REQUIRE(report.coverage() == 1.0);
    REQUIRE(report.mean_gap() == 0.0);
}

TEST_CASE("oracle heuristic evaluation has full coverage and zero gap") {
    auto pool = maze_pool(20, 6, 900);
    auto report = lstar::evaluate_instances(
        pool, [](const lstar::MazeGrid& g) { return lstar::maze_heuristic("oracle", g); },
        [](const lstar::MazeGrid& g) { return lstar::optimal_cost_blind(g); },
        lstar::SearchOptions{100000});
    REQUIRE(report.rows.size() == 20);
    REQUIRE(report.coverage() == 1.0);
    for (const auto& row : report.rows) {
        REQUIRE(row.solved);
        REQUIRE(row.gap.has_value());
        REQUIRE(*row.gap == 0.0);
    }
    REQUIRE(report.mean_gap() == 0.0);
}

TEST_CASE("eval csv prints one row per instance plus column means") {
    lstar::EvalReport report;
    lstar::EvalRow a;
    a.instance = "maze-1";
    a.solved = true;
    a.expanded = 10;
    a.generated = 20;
    a.reopened = 2;
    a.plan_cost = 8.0;
    a.optimal_cost = 8.0;
    a.gap = 0.0;
    lstar::EvalRow b;
    b.instance = "maze-2";
    b.solved = false;
    b.expanded = 30;
    b.generated = 40;
    b.reopened = 0;
    b.optimal_cost = 12.0;
    report.rows = {a, b};

    std::ostringstream out;
    lstar::write_eval_csv(out, report);
    REQUIRE(out.str() ==
            "instance,solved,expanded,generated,reopened,plan_cost,optimal_cost,gap\n"
            "maze-1,1,10,20,2,8,8,0\n"
            "maze-2,0,30,40,0,-,12,-\n"
            "TOTAL,0.5,20,30,1,8,10,0\n");
}

TEST_CASE("training view filters states by loss") {
    lstar::TrainingSample sample;
    sample.instance_ref = "demo";
    lstar::LabeledState on1{"0,0", {}, 0.0, 4.0, false, 0};
    lstar::LabeledState on2{"0,1", {}, 1.0, std::nullopt, false, 1};  // unlabeled on-path
    lstar::LabeledState off_alive{"1,0", {}, 1.0, 3.0, false, std::nullopt};
    lstar::LabeledState off_dead{"2,0", {}, 2.0, std::nullopt, true, std::nullopt};
    lstar::LabeledState off_unknown{"3,0", {}, 2.0, std::nullopt, false, std::nullopt};
    sample.on_path = {on1, on2};
    sample.off_path = {off_alive, off_dead, off_unknown};

    auto ranking = lstar::training_view(sample, "lstar");
    REQUIRE(ranking.on_path.size() == 2);
    REQUIRE(ranking.off_path.size() == 2);  // proven dead end dropped
    REQUIRE(ranking.off_path[0].key == "1,0");
    REQUIRE(ranking.off_path[1].key == "3,0");

    auto regression = lstar::training_view(sample, "l2");
    REQUIRE(regression.on_path.size() == 1);  // unlabeled state dropped
    REQUIRE(regression.on_path[0].key == "0,0");
    REQUIRE(regression.off_path.size() == 2);  // dead end kept, unknown dropped
    REQUIRE(regression.off_path[0].key == "1,0");
    REQUIRE(regression.off_path[1].key == "2,0");

    REQUIRE_THROWS_AS(lstar::training_view(sample, "l1"), std::invalid_argument);
}

TEST_CASE("one sample overfits under the ranking loss") {
    auto grid = lstar::maze_generate(5, 21, 0.15, 2);
    std::vector<lstar::TrainingSample> samples = {solved_maze_sample("m", grid, false)};
    std::vector<std::pair<std::string, lstar::MazeGrid>> pool = {{"m", grid}};
    auto encode = lstar::make_feature_encoder(pool);

    auto params = lstar::model_init(tiny_model_config(7));
    lstar::AdamState adam;
    lstar::TrainOptions opts;
    opts.loss = "lstar";
    opts.lr = 0.01;
    opts.epochs = 50;
    opts.shuffle_seed = 5;
    auto history = lstar::train_model(params, adam, samples, encode, opts);

    REQUIRE(history.size() == 50);
    int non_increasing = 0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        REQUIRE(history[i].samples_used == 1);
        if (history[i].mean_training_loss <= history[i - 1].mean_training_loss + 1e-12)
            ++non_increasing;
    }
    REQUIRE(history.back().mean_training_loss < history.front().mean_training_loss);
    REQUIRE(non_increasing >= 44);  // at least 90% of the 49 steps
}

TEST_CASE("l2 training drives squared error down on one sample") {
    auto grid = lstar::maze_generate(5, 22, 0.15, 2);
    std::vector<lstar::TrainingSample> samples = {solved_maze_sample("m", grid, true)};
    std::vector<std::pair<std::string, lstar::MazeGrid>> pool = {{"m", grid}};
    auto encode = lstar::make_feature_encoder(pool);

    auto params = lstar::model_init(tiny_model_config(8));
    lstar::AdamState adam;
    lstar::TrainOptions opts;
    opts.loss = "l2";
    opts.lr = 0.01;
    opts.epochs = 50;
    opts.dead_end_value = lstar::dataset_dead_end_value(samples);
    auto history = lstar::train_model(params, adam, samples, encode, opts);
    REQUIRE(history.back().mean_training_loss < history.front().mean_training_loss);
}

TEST_CASE("zero epochs leave the parameters untouched") {
    auto grid = lstar::maze_generate(4, 3, 0.1, 1);
    std::vector<lstar::TrainingSample> samples = {solved_maze_sample("m", grid, false)};
    std::vector<std::pair<std::string, lstar::MazeGrid>> pool = {{"m", grid}};
    auto encode = lstar::make_feature_encoder(pool);

    auto params = lstar::model_init(tiny_model_config(9));
    auto before = params.theta;
    lstar::AdamState adam;
    lstar::TrainOptions opts;
    opts.epochs = 0;
    auto history = lstar::train_model(params, adam, samples, encode, opts);
    REQUIRE(history.empty());
    REQUIRE(params.theta == before);
    REQUIRE_THROWS_AS(
        lstar::train_model(params, adam, samples, encode,
                           [] {
                               lstar::TrainOptions bad;
                               bad.epochs = -1;
                               return bad;
                           }()),
        std::invalid_argument);
}

TEST_CASE("samples without usable labels are skipped under l2") {
    auto grid = lstar::maze_generate(4, 6, 0.1, 1);
    auto sample = solved_maze_sample("m", grid, false);  // never labeled
    std::vector<lstar::TrainingSample> samples = {sample};
    std::vector<std::pair<std::string, lstar::MazeGrid>> pool = {{"m", grid}};
    auto encode = lstar::make_feature_encoder(pool);

    auto params = lstar::model_init(tiny_model_config(10));
    auto before = params.theta;
    lstar::AdamState adam;
    lstar::TrainOptions opts;
    opts.loss = "l2";
    opts.epochs = 1;
    auto history = lstar::train_model(params, adam, samples, encode, opts);
    REQUIRE(history.size() == 1);
    REQUIRE(history[0].samples_used == 0);
    REQUIRE(history[0].samples_skipped == 1);
    REQUIRE(params.theta == before);
}

TEST_CASE("training runs are bitwise deterministic") {
    auto pool = maze_pool(5, 5, 500);
    std::vector<lstar::TrainingSample> samples;
    for (const auto& [ref, grid] : pool) samples.push_back(solved_maze_sample(ref, grid, true));
    auto encode = lstar::make_feature_encoder(pool);

    auto run = [&](const std::string& loss) {
        auto params = lstar::model_init(tiny_model_config(11));
        lstar::AdamState adam;
        lstar::TrainOptions opts;
        opts.loss = loss;
        opts.epochs = 3;
        opts.shuffle_seed = 13;
        opts.dead_end_value = lstar::dataset_dead_end_value(samples);
        auto history = lstar::train_model(params, adam, samples, encode, opts);
        return std::make_pair(params.theta, history);
    };
    for (const std::string loss : {"lstar", "l2"}) {
        auto [theta1, hist1] = run(loss);
        auto [theta2, hist2] = run(loss);
        REQUIRE(theta1 == theta2);
        REQUIRE(hist1.size() == hist2.size());
        for (std::size_t i = 0; i < hist1.size(); ++i) {
            REQUIRE(hist1[i].mean_training_loss == hist2[i].mean_training_loss);
            REQUIRE(hist1[i].mean_term1 == hist2[i].mean_term1);
            REQUIRE(hist1[i].mean_term2 == hist2[i].mean_term2);
            REQUIRE(hist1[i].mean_rn_bound == hist2[i].mean_rn_bound);
        }
    }
}

TEST_CASE("evaluation leaves model parameters untouched") {
    auto pool = maze_pool(3, 4, 70);
    auto params = lstar::model_init(tiny_model_config(12));
    auto before = params.theta;
    auto report = lstar::evaluate_instances(
        pool,
        [&params](const lstar::MazeGrid& g) { return lstar::maze_heuristic("model", g, &params); },
        [](const lstar::MazeGrid&) { return std::optional<double>(); },
        lstar::SearchOptions{10000});
    REQUIRE(report.rows.size() == 3);
    REQUIRE(params.theta == before);
}

TEST_CASE("bootstrap alternates evaluation with training on solves") {
    auto pool = maze_pool(8, 4, 4000);
    auto run = [&] {
        auto params = lstar::model_init(tiny_model_config(13));
        lstar::AdamState adam;
        lstar::TrainOptions opts;
        opts.loss = "lstar";
        opts.lr = 0.005;
        opts.shuffle_seed = 29;
        auto rows = lstar::bootstrap_run(params, adam, pool, lstar::SearchOptions{400}, opts, 2);
        return std::make_pair(rows, params.theta);
    };
    auto [rows, theta] = run();
    REQUIRE(rows.size() == 3);
    for (int e = 0; e < 3; ++e) {
        REQUIRE(rows[e].epoch == e);
        REQUIRE(rows[e].coverage >= 0.0);
        REQUIRE(rows[e].coverage <= 1.0);
        REQUIRE(rows[e].solved_count <= pool.size());
    }
    REQUIRE(rows.back().trained_samples == 0);
    REQUIRE(rows.front().trained_samples == rows.front().solved_count);

    auto [rows2, theta2] = run();
    REQUIRE(theta == theta2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].coverage == rows2[i].coverage);
        REQUIRE(rows[i].mean_expanded == rows2[i].mean_expanded);
    }
}

TEST_CASE("curriculum appends only newly solved refs and retrains") {
    auto pool = maze_pool(4, 4, 8100);
    std::vector<lstar::TrainingSample> train_set = {
        solved_maze_sample(pool[0].first, pool[0].second, true)};
    auto encode = lstar::make_feature_encoder(pool);

    auto params = lstar::model_init(tiny_model_config(14));
    lstar::AdamState adam;
    lstar::TrainOptions opts;
    opts.loss = "lstar";
    opts.epochs = 2;
    opts.lr = 0.005;

    auto rep = lstar::curriculum_round(params, adam, train_set, pool, encode,
                                       lstar::SearchOptions{100000}, opts);
    REQUIRE(rep.attempted == 4);
    REQUIRE(rep.solved == 4);  // generous budget solves every maze
    REQUIRE(rep.added == 3);   // pool[0] was already in the training set
    REQUIRE_FALSE(rep.no_op);
    REQUIRE(train_set.size() == 4);
    REQUIRE(rep.training.size() == 2);

    // re-evaluating the solved refs after the round keeps them all solved
    auto after = lstar::evaluate_instances(
        pool, [&params](const lstar::MazeGrid& g) { return lstar::model_heuristic(g, params); },
        [](const lstar::MazeGrid&) { return std::optional<double>{}; },
        lstar::SearchOptions{100000});
    REQUIRE(after.coverage() == 1.0);

    // second round over the same pool adds nothing and trains nothing
    auto before = params.theta;
    auto rep2 = lstar::curriculum_round(params, adam, train_set, pool, encode,
                                        lstar::SearchOptions{100000}, opts);
    REQUIRE(rep2.no_op);
    REQUIRE(rep2.added == 0);
    REQUIRE(train_set.size() == 4);
    REQUIRE(params.theta == before);
}

TEST_CASE("curriculum with nothing solved is a no-op") {
    auto pool = maze_pool(3, 4, 8200);
    std::vector<lstar::TrainingSample> train_set;
    auto encode = lstar::make_feature_encoder(pool);
    auto params = lstar::model_init(tiny_model_config(15));
    auto before = params.theta;
    lstar::AdamState adam;
    auto rep = lstar::curriculum_round(params, adam, train_set, pool, encode,
                                       lstar::SearchOptions{1}, lstar::TrainOptions{});
    REQUIRE(rep.no_op);
    REQUIRE(rep.solved == 0);
    REQUIRE(rep.added == 0);
    REQUIRE(train_set.empty());
    REQUIRE(params.theta == before);
}

TEST_CASE("bootstrap and training csv writers are stable") {
    std::vector<lstar::BootstrapRow> rows(2);
    rows[0] = {0, 0.25, 2, 150.5, 2};
    rows[1] = {1, 0.5, 4, 120.0, 0};
    std::ostringstream boot;
    lstar::write_bootstrap_csv(boot, rows);
    REQUIRE(boot.str() ==
            "epoch,coverage,solved,mean_expanded,trained_samples\n"
            "0,0.25,2,150.5,2\n"
            "1,0.5,4,120,0\n");

    std::vector<lstar::EpochDiagnostics> history(1);
    history[0].epoch = 0;
    history[0].samples_used = 3;
    history[0].samples_skipped = 1;
    history[0].mean_training_loss = 1.5;
    history[0].mean_term1 = 0.125;
    history[0].mean_term2 = 0.0;
    history[0].mean_rn_bound = 7.25;
    std::ostringstream train;
    lstar::write_training_csv(train, history);
    REQUIRE(train.str() ==
            "epoch,samples_used,samples_skipped,mean_training_loss,mean_term1,mean_term2,mean_rn_bound\n"
            "0,3,1,1.5,0.125,0,7.25\n");
}

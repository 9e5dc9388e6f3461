#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include <lstar/data/dataset.hpp>
#include <lstar/domains/text_io.hpp>
#include <lstar/harness/demo_graphs.hpp>
#include <lstar/harness/evaluate.hpp>
#include <lstar/harness/experiment.hpp>
#include <lstar/harness/heuristics.hpp>
#include <lstar/harness/protocols.hpp>
#include <lstar/harness/train.hpp>
#include <lstar/model/checkpoint.hpp>

namespace {

namespace fs = std::filesystem;

// Flags override the config file regardless of their order on the command
// line; both funnel through apply_config_entry so values parse identically.
struct ConfigCli {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_options(CLI::App* cmd, ConfigCli& c) {
    cmd->add_option("--config", c.config_path, "key = value configuration file");
    static const std::vector<std::pair<std::string, std::string>> keys = {
        {"--domain", "domain"},
        {"--size", "size"},
        {"--boxes", "boxes"},
        {"--wall-break-rate", "wall_break_rate"},
        {"--teleport-pairs", "teleport_pairs"},
        {"--wall-rate", "wall_rate"},
        {"--seed", "seed"},
        {"--budget", "budget"},
        {"--loss", "loss"},
        {"--margin", "margin"},
        {"--lr", "lr"},
        {"--epochs", "epochs"},
        {"--train-count", "train_count"},
        {"--test-count", "test_count"},
        {"--monotone-direction", "monotone_direction"},
        {"--tie-break", "tie_break"},
        {"--base-heuristic", "base_heuristic"},
        {"--dead-end-multiplier", "dead_end_multiplier"},
        {"--output-dir", "output_dir"},
    };
    for (const auto& [flag, key] : keys) {
        cmd->add_option_function<std::string>(
            flag,
            [&c, key = key](const std::string& value) { c.overrides.emplace_back(key, value); },
            "sets config key " + key);
    }
}

lstar::ExperimentConfig resolve_config(const ConfigCli& c) {
    lstar::ExperimentConfig cfg;
    if (!c.config_path.empty()) cfg = lstar::load_experiment_config(c.config_path);
    for (const auto& [key, value] : c.overrides) lstar::apply_config_entry(cfg, key, value);
    lstar::apply_output_dir_override(cfg);
    lstar::validate_experiment_config(cfg);
    return cfg;
}

lstar::SearchOptions search_options(const lstar::ExperimentConfig& cfg) {
    lstar::SearchOptions options;
    options.budget = cfg.budget;
    options.tie_break = lstar::parse_tie_break(cfg.tie_break);
    return options;
}

std::string out_path(const lstar::ExperimentConfig& cfg, const std::string& flag_value,
                     const std::string& default_name) {
    fs::path p = flag_value.empty() ? fs::path(cfg.output_dir) / default_name : fs::path(flag_value);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p.string();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("short write on " + path);
}

using InstancePool = std::vector<std::pair<std::string, lstar::ParsedInstance>>;

InstancePool load_pool(const std::vector<std::string>& paths) {
    InstancePool pool;
    pool.reserve(paths.size());
    std::unordered_set<std::string> seen;
    for (const auto& path : paths) {
        if (!seen.insert(path).second) throw std::runtime_error("duplicate instance file " + path);
        pool.emplace_back(path, lstar::parse_instance(read_text_file(path)));
    }
    return pool;
}

template <typename Inst>
std::vector<std::pair<std::string, Inst>> select_typed(const InstancePool& pool) {
    std::vector<std::pair<std::string, Inst>> typed;
    typed.reserve(pool.size());
    for (const auto& [ref, inst] : pool) typed.emplace_back(ref, std::get<Inst>(inst));
    return typed;
}

// Runs fn on the pool as one concrete instance type; mixing domains in a
// single invocation is an error.
template <typename Fn>
void with_typed_pool(const InstancePool& pool, Fn&& fn) {
    if (pool.empty()) throw std::runtime_error("no instances given");
    bool maze = std::holds_alternative<lstar::MazeGrid>(pool.front().second);
    for (const auto& [ref, inst] : pool)
        if (std::holds_alternative<lstar::MazeGrid>(inst) != maze)
            throw std::runtime_error("instance files mix maze and sokoban domains");
    if (maze)
        fn(select_typed<lstar::MazeGrid>(pool));
    else
        fn(select_typed<lstar::SokobanLevel>(pool));
}

lstar::HeuristicFunction<lstar::Cell> named_heuristic(const std::string& name,
                                                      const lstar::MazeGrid& grid,
                                                      const lstar::ModelParams* model) {
    return lstar::maze_heuristic(name, grid, model);
}

lstar::HeuristicFunction<lstar::SokobanState> named_heuristic(const std::string& name,
                                                              const lstar::SokobanLevel& level,
                                                              const lstar::ModelParams* model) {
    return lstar::sokoban_heuristic(name, level, model);
}

std::string instance_file_name(const char* kind, int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%04d.txt", kind, index);
    return buf;
}

// Seed layout keeps train and test draws disjoint per base seed.
std::uint64_t train_seed(const lstar::ExperimentConfig& cfg, int i) {
    return cfg.seed * 100000 + static_cast<std::uint64_t>(i);
}
std::uint64_t test_seed(const lstar::ExperimentConfig& cfg, int i) {
    return cfg.seed * 100000 + 50000 + static_cast<std::uint64_t>(i);
}

int cmd_generate(const lstar::ExperimentConfig& cfg) {
    if (cfg.train_count > 50000 || cfg.test_count > 50000)
        throw std::runtime_error("generate: counts above 50000 collide in the seed layout");
    fs::create_directories(cfg.output_dir);
    auto write_one = [&cfg](const std::string& name, std::uint64_t seed) {
        std::string text;
        if (cfg.domain == "maze")
            text = lstar::render_instance(
                lstar::maze_generate(cfg.size, seed, cfg.wall_break_rate, cfg.teleport_pairs));
        else
            text = lstar::render_instance(
                lstar::sokoban_generate(cfg.size, cfg.boxes, seed, cfg.wall_rate));
        write_text_file((fs::path(cfg.output_dir) / name).string(), text);
    };
    for (int i = 0; i < cfg.train_count; ++i)
        write_one(instance_file_name("train", i), train_seed(cfg, i));
    for (int i = 0; i < cfg.test_count; ++i)
        write_one(instance_file_name("test", i), test_seed(cfg, i));
    std::cout << "wrote " << cfg.train_count << " train and " << cfg.test_count << " test "
              << cfg.domain << " instances to " << cfg.output_dir << "\n";
    return 0;
}

struct SolveArgs {
    std::string instance_path;
    std::string heuristic = "manhattan";
    std::string model_path;
    bool print_plan = false;
};

int cmd_solve(const lstar::ExperimentConfig& cfg, const SolveArgs& args) {
    auto pool = load_pool({args.instance_path});
    std::optional<lstar::ModelParams> model;
    if (!args.model_path.empty()) model = lstar::load_model(args.model_path);
    with_typed_pool(pool, [&](const auto& typed) {
        const auto& [ref, instance] = typed.front();
        auto h = named_heuristic(args.heuristic, instance, model ? &*model : nullptr);
        auto outcome = lstar::astar(instance, h, search_options(cfg));
        std::cout << "instance " << ref << "\n"
                  << "heuristic " << args.heuristic << "\n"
                  << "solved " << (outcome.solved() ? 1 : 0) << "\n";
        if (outcome.solved()) {
            std::cout << "plan_cost " << lstar::detail::format_metric(outcome.plan->total_cost)
                      << "\n"
                      << "plan_length " << outcome.plan->length() << "\n";
        }
        std::cout << "expanded " << outcome.expanded_count << "\n"
                  << "generated " << outcome.generated_count << "\n"
                  << "reopened " << outcome.reopened_count << "\n";
        if (args.print_plan && outcome.solved()) {
            std::cout << "plan";
            for (const auto& s : outcome.plan->states) std::cout << ' ' << lstar::state_key(s);
            std::cout << "\n";
        }
    });
    return 0;
}

struct MakeDatasetArgs {
    std::vector<std::string> instance_paths;
    std::string out;
    std::string model_path;
    bool no_labels = false;
    std::uint64_t label_cap = 1000000;
};

int cmd_make_dataset(const lstar::ExperimentConfig& cfg, const MakeDatasetArgs& args) {
    auto pool = load_pool(args.instance_paths);
    std::optional<lstar::ModelParams> model;
    if (!args.model_path.empty()) model = lstar::load_model(args.model_path);
    lstar::Dataset data;
    std::size_t skipped = 0;
    with_typed_pool(pool, [&](const auto& typed) {
        for (const auto& [ref, instance] : typed) {
            auto h = named_heuristic(cfg.base_heuristic, instance, model ? &*model : nullptr);
            auto outcome = lstar::astar(instance, h, search_options(cfg));
            if (!outcome.solved()) {
                std::cerr << "warning: " << ref << " unsolved within budget, skipped\n";
                ++skipped;
                continue;
            }
            auto sample = lstar::build_sample(ref, outcome);
            if (!args.no_labels)
                sample = lstar::label_cost_to_go(std::move(sample), instance, args.label_cap);
            data.samples.push_back(std::move(sample));
            data.provenance.push_back({ref, cfg.base_heuristic, cfg.seed, cfg.budget});
        }
    });
    auto out = out_path(cfg, args.out, "dataset.txt");
    lstar::write_dataset(fs::path(out), data);
    std::cout << "wrote " << data.samples.size() << " samples to " << out << " (skipped "
              << skipped << " unsolved)\n";
    return 0;
}

// Loads every distinct instance file a dataset refers to, in first-use order.
InstancePool referenced_instances(const lstar::Dataset& data) {
    std::vector<std::string> refs;
    std::unordered_set<std::string> seen;
    for (const auto& sample : data.samples)
        if (seen.insert(sample.instance_ref).second) refs.push_back(sample.instance_ref);
    return load_pool(refs);
}

lstar::TrainOptions train_options(const lstar::ExperimentConfig& cfg) {
    lstar::TrainOptions opts;
    opts.loss = cfg.loss;
    opts.margin = cfg.margin;
    opts.direction = lstar::parse_monotone_direction(cfg.monotone_direction);
    opts.lr = cfg.lr;
    opts.epochs = cfg.epochs;
    opts.shuffle_seed = cfg.seed;
    return opts;
}

struct TrainArgs {
    std::string dataset_path;
    std::string init_path;
    std::string out;
    std::string log;
};

int cmd_train(const lstar::ExperimentConfig& cfg, const TrainArgs& args) {
    auto data = lstar::read_dataset(fs::path(args.dataset_path));
    if (cfg.loss == "l2")
        for (const auto& sample : data.samples)
            if (lstar::training_view(sample, "l2").on_path.empty())
                throw std::runtime_error("sample " + sample.instance_ref +
                                         " has no usable labels under l2; rebuild the dataset "
                                         "with labeling enabled");

    lstar::ModelParams params;
    if (!args.init_path.empty()) {
        params = lstar::load_model(args.init_path);
    } else {
        lstar::ModelConfig mc;
        mc.seed = cfg.seed;
        params = lstar::model_init(mc);
    }

    auto opts = train_options(cfg);
    opts.dead_end_value = lstar::dataset_dead_end_value(data, cfg.dead_end_multiplier);
    std::vector<lstar::EpochDiagnostics> history;
    if (!data.samples.empty() && cfg.epochs > 0) {
        auto pool = referenced_instances(data);
        with_typed_pool(pool, [&](const auto& typed) {
            lstar::AdamState adam;
            auto encode = lstar::make_feature_encoder(typed);
            history = lstar::train_model(params, adam, data.samples, encode, opts);
        });
    }

    auto model_out = out_path(cfg, args.out, "model.ckpt");
    lstar::save_model(model_out, params);
    auto log_out = out_path(cfg, args.log, "train_log.csv");
    std::ostringstream csv;
    lstar::write_training_csv(csv, history);
    write_text_file(log_out, csv.str());
    std::cout << "trained " << cfg.loss << " model for " << history.size() << " epochs over "
              << data.samples.size() << " samples\n";
    if (!history.empty()) {
        const auto& last = history.back();
        std::cout << "final epoch: loss " << lstar::detail::format_metric(last.mean_training_loss)
                  << ", hard terms " << lstar::detail::format_metric(last.mean_term1) << " / "
                  << lstar::detail::format_metric(last.mean_term2) << ", mean off-path bound "
                  << lstar::detail::format_metric(last.mean_rn_bound) << "\n";
    }
    std::cout << "checkpoint " << model_out << "\nlog " << log_out << "\n";
    return 0;
}

struct EvaluateArgs {
    std::vector<std::string> instance_paths;
    std::string heuristic = "model";
    std::string model_path;
    std::string out;
    std::uint64_t gap_cap = 1000000;
    bool no_gap = false;
};

int cmd_evaluate(const lstar::ExperimentConfig& cfg, const EvaluateArgs& args) {
    auto pool = load_pool(args.instance_paths);
    std::optional<lstar::ModelParams> model;
    if (!args.model_path.empty()) model = lstar::load_model(args.model_path);
    lstar::EvalReport report;
    with_typed_pool(pool, [&](const auto& typed) {
        using Instance = std::decay_t<decltype(typed.front().second)>;
        report = lstar::evaluate_instances(
            typed,
            [&](const Instance& instance) {
                return named_heuristic(args.heuristic, instance, model ? &*model : nullptr);
            },
            [&](const Instance& instance) {
                return args.no_gap ? std::nullopt : lstar::optimal_cost_blind(instance, args.gap_cap);
            },
            search_options(cfg));
    });
    auto out = out_path(cfg, args.out, "eval.csv");
    std::ostringstream csv;
    lstar::write_eval_csv(csv, report);
    write_text_file(out, csv.str());
    std::cout << "evaluated " << report.rows.size() << " instances with " << args.heuristic
              << ": coverage " << lstar::detail::format_metric(report.coverage())
              << ", mean expanded " << lstar::detail::format_metric(report.mean_expanded())
              << ", mean gap " << lstar::detail::format_metric(report.mean_gap()) << "\n"
              << "report " << out << "\n";
    return 0;
}

struct CurriculumArgs {
    std::vector<std::string> instance_paths;
    std::string dataset_path;
    std::string model_path;
    std::string out_model;
    std::string out_dataset;
    std::string log;
};

int cmd_curriculum(const lstar::ExperimentConfig& cfg, const CurriculumArgs& args) {
    auto data = lstar::read_dataset(fs::path(args.dataset_path));
    auto params = lstar::load_model(args.model_path);

    // one combined pool: instances the dataset refers to plus the attempt pool
    auto combined = referenced_instances(data);
    std::unordered_set<std::string> have;
    for (const auto& [ref, inst] : combined) have.insert(ref);
    std::vector<std::string> pool_refs = args.instance_paths;
    for (const auto& [ref, inst] : load_pool(args.instance_paths))
        if (have.insert(ref).second) combined.emplace_back(ref, inst);

    lstar::CurriculumReport rep;
    with_typed_pool(combined, [&](const auto& typed) {
        using Instance = std::decay_t<decltype(typed.front().second)>;
        std::unordered_map<std::string, const Instance*> by_ref;
        for (const auto& [ref, inst] : typed) by_ref[ref] = &inst;
        std::vector<std::pair<std::string, Instance>> attempt;
        attempt.reserve(pool_refs.size());
        for (const auto& ref : pool_refs) attempt.emplace_back(ref, *by_ref.at(ref));

        lstar::AdamState adam;
        auto encode = lstar::make_feature_encoder(typed);
        rep = lstar::curriculum_round(params, adam, data.samples, attempt, encode,
                                      search_options(cfg), train_options(cfg),
                                      cfg.dead_end_multiplier);
    });
    for (std::size_t i = data.provenance.size(); i < data.samples.size(); ++i)
        data.provenance.push_back({data.samples[i].instance_ref, "model", cfg.seed, cfg.budget});

    auto model_out = out_path(cfg, args.out_model, "model.ckpt");
    lstar::save_model(model_out, params);
    auto dataset_out = out_path(cfg, args.out_dataset, "curriculum-dataset.txt");
    lstar::write_dataset(fs::path(dataset_out), data);
    auto log_out = out_path(cfg, args.log, "curriculum_log.csv");
    std::ostringstream csv;
    lstar::write_training_csv(csv, rep.training);
    write_text_file(log_out, csv.str());

    std::cout << "attempted " << rep.attempted << ", solved " << rep.solved << ", added "
              << rep.added << " new samples (training set now " << data.samples.size() << ")\n"
              << "checkpoint " << model_out << "\ndataset " << dataset_out << "\nlog " << log_out
              << "\n";
    if (rep.no_op) std::cerr << "warning: nothing newly solved; model parameters unchanged\n";
    return 0;
}

struct BootstrapArgs {
    std::vector<std::string> instance_paths;
    std::string init_path;
    std::string out_model;
    std::string out_csv;
};

int cmd_bootstrap(const lstar::ExperimentConfig& cfg, const BootstrapArgs& args) {
    auto pool = load_pool(args.instance_paths);
    lstar::ModelParams params;
    if (!args.init_path.empty()) {
        params = lstar::load_model(args.init_path);
    } else {
        lstar::ModelConfig mc;
        mc.seed = cfg.seed;
        params = lstar::model_init(mc);
    }
    std::vector<lstar::BootstrapRow> rows;
    with_typed_pool(pool, [&](const auto& typed) {
        lstar::AdamState adam;
        rows = lstar::bootstrap_run(params, adam, typed, search_options(cfg), train_options(cfg),
                                    cfg.epochs, cfg.dead_end_multiplier);
    });
    auto csv_out = out_path(cfg, args.out_csv, "bootstrap.csv");
    std::ostringstream csv;
    lstar::write_bootstrap_csv(csv, rows);
    write_text_file(csv_out, csv.str());
    auto model_out = out_path(cfg, args.out_model, "bootstrap-model.ckpt");
    lstar::save_model(model_out, params);
    for (const auto& row : rows)
        std::cout << "epoch " << row.epoch << ": coverage "
                  << lstar::detail::format_metric(row.coverage) << " (" << row.solved_count << "/"
                  << args.instance_paths.size() << "), mean expanded "
                  << lstar::detail::format_metric(row.mean_expanded) << "\n";
    std::cout << "report " << csv_out << "\ncheckpoint " << model_out << "\n";
    return 0;
}

// Size of the f-plateau sitting in the open list once the first expansion
// has pushed its successors.
int open_plateau_after_first_expansion(const std::vector<lstar::TraceEvent<int>>& trace,
                                       double f_value) {
    std::multiset<double> live;
    int pops = 0;
    for (const auto& ev : trace) {
        if (ev.kind == lstar::TraceEvent<int>::push) {
            live.insert(ev.f);
        } else if (ev.kind == lstar::TraceEvent<int>::pop ||
                   ev.kind == lstar::TraceEvent<int>::stale_pop) {
            if (++pops == 2) break;
            live.erase(live.find(ev.f));
        }
    }
    return static_cast<int>(live.count(f_value));
}

int cmd_counterexample() {
    int failures = 0;
    auto check = [&failures](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    auto trap = lstar::offpath_trap();
    auto misranked = [&trap](const int& s) { return trap.misranked_heuristic.at(s); };
    auto out = lstar::astar(trap.graph, misranked);
    const auto& recs = out.generated_records;
    auto pop_of = [&recs](int node) {
        auto it = recs.find(node);
        return it == recs.end() ? std::optional<std::uint64_t>{} : it->second.pop_order;
    };
    check(out.solved() && out.plan->total_cost == 2.0,
          "low-regression-error heuristic still finds the cost-2 plan");
    check(pop_of(3).has_value(), "the dead-end branch state s3 is expanded");
    check(pop_of(3) && pop_of(1) && *pop_of(3) < *pop_of(1), "s3 is expanded before plan state s1");

    auto sample = lstar::build_sample("offpath-trap", out);
    lstar::HValues h_values;
    for (const auto& [node, value] : trap.misranked_heuristic)
        h_values[lstar::state_key(node)] = value;
    auto [term1, term2] = lstar::lstar_hard(sample, h_values);
    check(term1 > 0.0, "hard ranking loss flags the lure: term1 = " +
                           lstar::detail::format_metric(term1));

    auto ranked = [&trap](const int& s) { return trap.ranked_heuristic.at(s); };
    auto out2 = lstar::astar(trap.graph, ranked);
    bool plan_only = out2.solved();
    for (const auto& [node, rec] : out2.generated_records)
        if (rec.expanded && node != 0 && node != 1 && node != 2) plan_only = false;
    check(plan_only, "reranked heuristic expands plan states only");

    auto tie = lstar::tie_plateau();
    auto tie_h = [&tie](const int& s) { return tie.misranked_heuristic.at(s); };
    lstar::SearchOptions trace_opts;
    trace_opts.record_trace = true;
    auto deep = lstar::astar(tie.graph, tie_h, trace_opts);
    check(open_plateau_after_first_expansion(deep.trace, 3.0) == 2,
          "open list holds exactly two f=3 entries after the first expansion");
    lstar::SearchOptions fifo_opts;
    fifo_opts.tie_break = lstar::TieBreak::fifo;
    auto fifo = lstar::astar(tie.graph, tie_h, fifo_opts);
    check(deep.expanded_count < fifo.expanded_count,
          "deeper-first tie-break expands fewer plateau states (" +
              std::to_string(deep.expanded_count) + " vs " + std::to_string(fifo.expanded_count) +
              ")");
    check(deep.solved() && fifo.solved() && deep.plan->total_cost == fifo.plan->total_cost,
          "both tie-break policies return the same plan cost");

    std::cout << (failures == 0 ? "counterexample suite passed\n"
                                : "counterexample suite FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heuristic-search laboratory: ranking-trained heuristics vs regression"};
    app.require_subcommand(1);

    ConfigCli generate_cfg;
    auto* generate = app.add_subcommand("generate", "write seeded instance files");
    add_config_options(generate, generate_cfg);

    ConfigCli solve_cfg;
    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run one search on one instance");
    add_config_options(solve, solve_cfg);
    solve->add_option("instance", solve_args.instance_path, "instance file")->required();
    solve->add_option("--heuristic", solve_args.heuristic,
                      "zero | manhattan | boxsum | oracle | model");
    solve->add_option("--model", solve_args.model_path, "model checkpoint");
    solve->add_flag("--plan", solve_args.print_plan, "print the plan states");

    ConfigCli mkds_cfg;
    MakeDatasetArgs mkds_args;
    auto* mkds = app.add_subcommand("make-dataset", "solve instances and store labeled samples");
    add_config_options(mkds, mkds_cfg);
    mkds->add_option("instances", mkds_args.instance_paths, "instance files")->required();
    mkds->add_option("--out", mkds_args.out, "dataset file (default <output-dir>/dataset.txt)");
    mkds->add_option("--model", mkds_args.model_path, "checkpoint when base heuristic is model");
    mkds->add_flag("--no-labels", mkds_args.no_labels, "skip exact cost-to-go labeling");
    mkds->add_option("--label-cap", mkds_args.label_cap, "state cap for the labeling sweep");

    ConfigCli train_cfg;
    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "fit a model to a dataset");
    add_config_options(train, train_cfg);
    train->add_option("--dataset", train_args.dataset_path, "dataset file")->required();
    train->add_option("--init", train_args.init_path, "starting checkpoint (default fresh)");
    train->add_option("--out", train_args.out, "checkpoint out (default <output-dir>/model.ckpt)");
    train->add_option("--log", train_args.log, "per-epoch CSV (default <output-dir>/train_log.csv)");

    ConfigCli eval_cfg;
    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand("evaluate", "run a heuristic over instances, write CSV");
    add_config_options(evaluate, eval_cfg);
    evaluate->add_option("instances", eval_args.instance_paths, "instance files")->required();
    evaluate->add_option("--heuristic", eval_args.heuristic, "heuristic name (default model)");
    evaluate->add_option("--model", eval_args.model_path, "model checkpoint");
    evaluate->add_option("--out", eval_args.out, "CSV out (default <output-dir>/eval.csv)");
    evaluate->add_option("--gap-cap", eval_args.gap_cap, "expansion cap for the reference optimum");
    evaluate->add_flag("--no-gap", eval_args.no_gap, "skip the reference optimum");

    ConfigCli cur_cfg;
    CurriculumArgs cur_args;
    auto* curriculum =
        app.add_subcommand("curriculum", "extend the training set with newly solved instances");
    add_config_options(curriculum, cur_cfg);
    curriculum->add_option("instances", cur_args.instance_paths, "attempt pool")->required();
    curriculum->add_option("--dataset", cur_args.dataset_path, "training set in")->required();
    curriculum->add_option("--model", cur_args.model_path, "checkpoint in")->required();
    curriculum->add_option("--out", cur_args.out_model,
                           "checkpoint out (default <output-dir>/model.ckpt)");
    curriculum->add_option("--out-dataset", cur_args.out_dataset,
                           "dataset out (default <output-dir>/curriculum-dataset.txt)");
    curriculum->add_option("--log", cur_args.log,
                           "per-epoch CSV (default <output-dir>/curriculum_log.csv)");

    ConfigCli boot_cfg;
    BootstrapArgs boot_args;
    auto* bootstrap =
        app.add_subcommand("bootstrap", "alternate solve attempts with training on solves");
    add_config_options(bootstrap, boot_cfg);
    bootstrap->add_option("instances", boot_args.instance_paths, "instance files")->required();
    bootstrap->add_option("--init", boot_args.init_path, "starting checkpoint (default fresh)");
    bootstrap->add_option("--out", boot_args.out_model,
                          "checkpoint out (default <output-dir>/bootstrap-model.ckpt)");
    bootstrap->add_option("--out-csv", boot_args.out_csv,
                          "coverage CSV (default <output-dir>/bootstrap.csv)");

    auto* counter = app.add_subcommand(
        "counterexample", "demonstrate how regression error misleads the search order");
    std::uint64_t counter_seed = 0;
    counter->add_option("--seed", counter_seed, "accepted for uniformity; the graphs are fixed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(resolve_config(generate_cfg));
        if (solve->parsed()) return cmd_solve(resolve_config(solve_cfg), solve_args);
        if (mkds->parsed()) return cmd_make_dataset(resolve_config(mkds_cfg), mkds_args);
        if (train->parsed()) return cmd_train(resolve_config(train_cfg), train_args);
        if (evaluate->parsed()) return cmd_evaluate(resolve_config(eval_cfg), eval_args);
        if (curriculum->parsed()) return cmd_curriculum(resolve_config(cur_cfg), cur_args);
        if (bootstrap->parsed()) return cmd_bootstrap(resolve_config(boot_cfg), boot_args);
        if (counter->parsed()) return cmd_counterexample();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

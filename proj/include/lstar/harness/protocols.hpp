#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <lstar/data/dataset.hpp>
#include <lstar/domains/encode.hpp>
#include <lstar/domains/text_io.hpp>
#include <lstar/harness/evaluate.hpp>
#include <lstar/harness/train.hpp>

namespace lstar {

// key -> tensor encoder over a fixed instance pool. Holds pointers into
// `instances`, which must outlive the encoder and stay unmoved.
template <typename Instance>
FeatureEncoder make_feature_encoder(const std::vector<std::pair<std::string, Instance>>& instances) {
    auto by_ref = std::make_shared<std::unordered_map<std::string, const Instance*>>();
    by_ref->reserve(instances.size());
    for (const auto& [ref, inst] : instances) (*by_ref)[ref] = &inst;
    return [by_ref](const TrainingSample& sample, const std::string& key) {
        auto it = by_ref->find(sample.instance_ref);
        if (it == by_ref->end())
            throw std::invalid_argument("encoder: unknown instance ref " + sample.instance_ref);
        const Instance& inst = *it->second;
        return encode_state(inst, parse_state_key(inst, key));
    };
}

struct BootstrapRow {
    int epoch = 0;  // row 0 is the untrained model
    double coverage = 0.0;
    std::size_t solved_count = 0;
    double mean_expanded = 0.0;
    std::size_t trained_samples = 0;  // samples the following training pass used; 0 on the last row
};

// Alternates solve attempts and one training pass over that round's solved
// samples. Produces epochs+1 rows: the evaluation before each of the
// `epochs` training passes plus a final evaluation after the last one.
template <typename Instance>
std::vector<BootstrapRow> bootstrap_run(ModelParams& params, AdamState& adam,
                                        const std::vector<std::pair<std::string, Instance>>& instances,
                                        const SearchOptions& search, const TrainOptions& train_opts,
                                        int epochs, double dead_end_multiplier = 2.0) {
    using State = typename Instance::state_type;
    if (epochs < 0) throw std::invalid_argument("bootstrap: epochs must be >= 0");
    auto encode = make_feature_encoder(instances);
    std::vector<BootstrapRow> rows;
    rows.reserve(static_cast<std::size_t>(epochs) + 1);
    for (int e = 0; e <= epochs; ++e) {
        std::vector<TrainingSample> solved;
        auto make_h = [&params](const Instance& inst) { return model_heuristic(inst, params); };
        auto harvest = [&](const std::string& ref, const Instance& inst,
                           const SearchOutcome<State>& outcome) {
            auto sample = build_sample(ref, outcome);
            if (train_opts.loss == "l2") sample = label_cost_to_go(std::move(sample), inst);
            solved.push_back(std::move(sample));
        };
        auto report = evaluate_instances(instances, make_h,
                                         [](const Instance&) { return std::optional<double>(); },
                                         search, harvest);
        BootstrapRow row;
        row.epoch = e;
        row.coverage = report.coverage();
        row.solved_count = report.solved_count();
        row.mean_expanded = report.mean_expanded();
        if (e < epochs && !solved.empty()) {
            auto opts = train_opts;
            if (opts.loss == "l2")
                opts.dead_end_value = dataset_dead_end_value(solved, dead_end_multiplier);
            auto diag = train_epoch(params, adam, solved, encode, opts, e);
            row.trained_samples = diag.samples_used;
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_bootstrap_csv(std::ostream& out, const std::vector<BootstrapRow>& rows) {
    out << "epoch,coverage,solved,mean_expanded,trained_samples\n";
    for (const auto& r : rows)
        out << r.epoch << ',' << detail::format_metric(r.coverage) << ',' << r.solved_count << ','
            << detail::format_metric(r.mean_expanded) << ',' << r.trained_samples << '\n';
}

struct CurriculumReport {
    std::size_t attempted = 0;
    std::size_t solved = 0;
    std::size_t added = 0;  // freshly solved refs appended to the training set
    bool no_op = false;     // nothing new solved: parameters untouched
    double coverage_before = 0.0;
    std::vector<EpochDiagnostics> training;
};

// One round: attempt `pool`, append samples for newly solved refs to
// `train_set`, then retrain on the extended set. `encode` must cover both
// the existing training refs and the pool.
template <typename Instance>
CurriculumReport curriculum_round(ModelParams& params, AdamState& adam,
                                  std::vector<TrainingSample>& train_set,
                                  const std::vector<std::pair<std::string, Instance>>& pool,
                                  const FeatureEncoder& encode, const SearchOptions& search,
                                  const TrainOptions& train_opts,
                                  double dead_end_multiplier = 2.0) {
    using State = typename Instance::state_type;
    std::unordered_set<std::string> known;
    known.reserve(train_set.size());
    for (const auto& s : train_set) known.insert(s.instance_ref);

    CurriculumReport rep;
    rep.attempted = pool.size();
    std::vector<TrainingSample> fresh;
    auto make_h = [&params](const Instance& inst) { return model_heuristic(inst, params); };
    auto harvest = [&](const std::string& ref, const Instance& inst,
                       const SearchOutcome<State>& outcome) {
        if (known.count(ref)) return;
        auto sample = label_cost_to_go(build_sample(ref, outcome), inst);
        fresh.push_back(std::move(sample));
    };
    auto report = evaluate_instances(pool, make_h,
                                     [](const Instance&) { return std::optional<double>(); },
                                     search, harvest);
    rep.solved = report.solved_count();
    rep.coverage_before = report.coverage();
    rep.added = fresh.size();
    if (fresh.empty()) {
        rep.no_op = true;
        return rep;
    }
    for (auto& s : fresh) train_set.push_back(std::move(s));
    auto opts = train_opts;
    if (opts.loss == "l2")
        opts.dead_end_value = dataset_dead_end_value(train_set, dead_end_multiplier);
    rep.training = train_model(params, adam, train_set, encode, opts);
    return rep;
}

inline void write_training_csv(std::ostream& out, const std::vector<EpochDiagnostics>& history) {
    out << "epoch,samples_used,samples_skipped,mean_training_loss,mean_term1,mean_term2,mean_rn_bound\n";
    for (const auto& d : history)
        out << d.epoch << ',' << d.samples_used << ',' << d.samples_skipped << ','
            << detail::format_metric(d.mean_training_loss) << ','
            << detail::format_metric(d.mean_term1) << ',' << detail::format_metric(d.mean_term2)
            << ',' << detail::format_metric(d.mean_rn_bound) << '\n';
}

}  // namespace lstar

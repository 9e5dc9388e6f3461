#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <lstar/core/rng.hpp>
#include <lstar/domains/encode.hpp>
#include <lstar/losses/losses.hpp>
#include <lstar/model/adam.hpp>
#include <lstar/model/model.hpp>

namespace lstar {

struct TrainOptions {
    std::string loss = "lstar";  // l2 | lstar
    double margin = 0.0;
    MonotoneDirection direction = MonotoneDirection::as_printed;
    double lr = 0.001;
    int epochs = 1;
    std::uint64_t shuffle_seed = 1;
    double dead_end_value = 0.0;  // regression target for dead ends (l2)
};

// Loss and ranking diagnostics averaged over the samples an epoch visited,
// each measured just before that sample's update.
struct EpochDiagnostics {
    int epoch = 0;
    std::size_t samples_used = 0;
    std::size_t samples_skipped = 0;
    double mean_training_loss = 0.0;
    double mean_term1 = 0.0;
    double mean_term2 = 0.0;
    double mean_rn_bound = 0.0;
};

// The subset of a sample each loss trains on. Ranking keeps everything
// except off-path states proven dead; regression keeps only states with a
// usable label.
inline TrainingSample training_view(const TrainingSample& sample, const std::string& loss) {
    TrainingSample view;
    view.instance_ref = sample.instance_ref;
    if (loss == "lstar") {
        view.on_path = sample.on_path;
        for (const auto& st : sample.off_path)
            if (!st.dead_end) view.off_path.push_back(st);
    } else if (loss == "l2") {
        auto usable = [](const LabeledState& st) { return st.cost_to_go.has_value() || st.dead_end; };
        for (const auto& st : sample.on_path)
            if (usable(st)) view.on_path.push_back(st);
        for (const auto& st : sample.off_path)
            if (usable(st)) view.off_path.push_back(st);
    } else {
        throw std::invalid_argument("train: loss must be l2 or lstar");
    }
    return view;
}

// key -> feature tensor for states of one sample's instance.
using FeatureEncoder = std::function<FeatureTensor(const TrainingSample&, const std::string&)>;

// One pass over `samples` in a seeded shuffled order, one optimizer step per
// sample (the per-instance minibatch). Returns the epoch's diagnostics.
inline EpochDiagnostics train_epoch(ModelParams& params, AdamState& adam,
                                    const std::vector<TrainingSample>& samples,
                                    const FeatureEncoder& encode, const TrainOptions& opts,
                                    int epoch_index) {
    EpochDiagnostics diag;
    diag.epoch = epoch_index;
    adam.lr = opts.lr;

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto rng = Rng(opts.shuffle_seed).fork(static_cast<std::uint64_t>(epoch_index));
    rng.shuffle(order);

    for (std::size_t idx : order) {
        const TrainingSample& sample = samples[idx];
        auto view = training_view(sample, opts.loss);
        if (view.on_path.empty()) {
            ++diag.samples_skipped;
            continue;
        }

        // One forward pass per sample state; the view only selects which
        // states receive gradient.
        std::vector<const LabeledState*> states;
        states.reserve(sample.on_path.size() + sample.off_path.size());
        for (const auto& st : sample.on_path) states.push_back(&st);
        for (const auto& st : sample.off_path) states.push_back(&st);

        std::vector<FeatureTensor> batch;
        batch.reserve(states.size());
        HValues h;
        for (const auto* st : states) {
            batch.push_back(encode(sample, st->key));
            h[st->key] = forward(params, batch.back());
        }

        auto report = make_loss_report(sample, h, opts.margin, opts.direction,
                                       opts.loss == "l2" ? std::optional<double>(opts.dead_end_value)
                                                         : std::nullopt);
        diag.mean_term1 += report.term1_hard;
        diag.mean_term2 += report.term2_hard;
        diag.mean_rn_bound += static_cast<double>(report.rn_bound);

        HValues dL_dh;
        double training_loss = 0.0;
        if (opts.loss == "lstar") {
            auto [loss, grad] = lstar_surrogate(view, h, opts.margin, opts.direction);
            training_loss = loss;
            dL_dh = std::move(grad);
        } else {
            auto [loss, grad] = l2_loss(view, h, opts.dead_end_value);
            training_loss = loss;
            dL_dh = std::move(grad);
        }
        diag.mean_training_loss += training_loss;

        std::vector<double> weights;
        weights.reserve(states.size());
        for (const auto* st : states) {
            auto it = dL_dh.find(st->key);
            weights.push_back(it == dL_dh.end() ? 0.0 : it->second);
        }
        auto grad_theta = backward(params, batch, weights);
        adam_step(params, grad_theta, adam);
        ++diag.samples_used;
    }

    if (diag.samples_used > 0) {
        double n = static_cast<double>(diag.samples_used);
        diag.mean_training_loss /= n;
        diag.mean_term1 /= n;
        diag.mean_term2 /= n;
        diag.mean_rn_bound /= n;
    }
    return diag;
}

inline std::vector<EpochDiagnostics> train_model(ModelParams& params, AdamState& adam,
                                                 const std::vector<TrainingSample>& samples,
                                                 const FeatureEncoder& encode,
                                                 const TrainOptions& opts) {
    if (opts.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
    std::vector<EpochDiagnostics> history;
    history.reserve(static_cast<std::size_t>(opts.epochs));
    for (int e = 0; e < opts.epochs; ++e)
        history.push_back(train_epoch(params, adam, samples, encode, opts, e));
    return history;
}

}  // namespace lstar

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <lstar/domains/encode.hpp>

namespace lstar {

// One state drawn from a solved search, keyed by its serialized form.
// cost_to_go absent with dead_end=false means the label is unknown.
struct LabeledState {
    std::string key;
    FeatureTensor features{};
    double g = 0.0;
    std::optional<double> cost_to_go{};
    bool dead_end = false;
    std::optional<int> path_index{};
};

// on_path holds the plan states in order (start first); off_path holds the
// remaining generated states. The two lists are disjoint by key.
// partially_labeled is true while any state lacks a usable label
// (no cost_to_go and no dead-end marker).
struct TrainingSample {
    std::string instance_ref;
    std::vector<LabeledState> on_path;
    std::vector<LabeledState> off_path;
    bool partially_labeled = false;
};

using HValues = std::unordered_map<std::string, double>;

// Direction of the path-monotonicity pressure in the surrogate. as_printed
// penalizes f rising toward the goal; as_eq3 penalizes f falling.
enum class MonotoneDirection { as_printed, as_eq3 };

struct LossReport {
    double term1_hard = 0.0;
    double term2_hard = 0.0;
    double surrogate = 0.0;
    std::optional<double> l2{};
    int rn_bound = 0;
};

namespace detail {

inline double h_at(const HValues& h, const std::string& key) {
    auto it = h.find(key);
    if (it == h.end()) throw std::out_of_range("loss: missing h value for state " + key);
    return it->second;
}

inline void require_on_path(const TrainingSample& sample) {
    if (sample.on_path.empty()) throw std::invalid_argument("loss: sample has empty on_path");
}

// L_l(x) = log(1 + exp(-x)), in the overflow-safe form.
inline double logistic_loss(double x) {
    return std::max(0.0, -x) + std::log1p(std::exp(-std::abs(x)));
}

// d/dx L_l(x) = -1 / (1 + exp(x)).
inline double logistic_loss_grad(double x) {
    if (x >= 0.0) {
        double e = std::exp(-x);
        return -e / (1.0 + e);
    }
    return -1.0 / (1.0 + std::exp(x));
}

inline std::vector<double> path_f(const TrainingSample& sample, const HValues& h) {
    std::vector<double> f;
    f.reserve(sample.on_path.size());
    for (const auto& st : sample.on_path) f.push_back(st.g + h_at(h, st.key));
    return f;
}

}  // namespace detail

// Fraction of ranking violations: term1 over (on, off) pairs with
// f(on) >= f(off), term2 over ordered path pairs (i, j <= i) with
// f(i) > f(j). Degenerate denominators yield 0.
inline std::pair<double, double> lstar_hard(const TrainingSample& sample, const HValues& h) {
    detail::require_on_path(sample);
    auto f_on = detail::path_f(sample, h);
    std::size_t n_on = f_on.size();
    std::size_t n_off = sample.off_path.size();

    double term1 = 0.0;
    if (n_off > 0) {
        std::size_t count = 0;
        for (const auto& off : sample.off_path) {
            double f_off = off.g + detail::h_at(h, off.key);
            for (double f : f_on)
                if (f >= f_off) ++count;
        }
        term1 = static_cast<double>(count) / (static_cast<double>(n_on) * static_cast<double>(n_off));
    }

    double term2 = 0.0;
    if (n_on > 1) {
        std::size_t count = 0;
        for (std::size_t i = 1; i < n_on; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (f_on[i] > f_on[j]) ++count;
        term2 = static_cast<double>(count) /
                (static_cast<double>(n_on) * static_cast<double>(n_on - 1));
    }
    return {term1, term2};
}

// Smooth relaxation of lstar_hard: each indicator [a >= b] becomes
// L_l(b - a - margin) under the same normalizations. The identically
// satisfied diagonal of term2 is omitted. Returns the loss and its exact
// partial derivatives with respect to every h value in the sample.
inline std::pair<double, HValues> lstar_surrogate(
    const TrainingSample& sample, const HValues& h, double margin = 0.0,
    MonotoneDirection direction = MonotoneDirection::as_printed) {
    detail::require_on_path(sample);
    if (margin < 0.0) throw std::invalid_argument("loss: margin must be >= 0");

    HValues grad;
    for (const auto& st : sample.on_path) grad[st.key] = 0.0;
    for (const auto& st : sample.off_path) grad[st.key] = 0.0;

    auto f_on = detail::path_f(sample, h);
    std::size_t n_on = f_on.size();
    std::size_t n_off = sample.off_path.size();
    double loss = 0.0;

    if (n_off > 0) {
        double norm = 1.0 / (static_cast<double>(n_on) * static_cast<double>(n_off));
        for (const auto& off : sample.off_path) {
            double f_off = off.g + detail::h_at(h, off.key);
            for (std::size_t i = 0; i < n_on; ++i) {
                double x = f_off - f_on[i] - margin;
                loss += norm * detail::logistic_loss(x);
                double dx = norm * detail::logistic_loss_grad(x);
                grad[off.key] += dx;
                grad[sample.on_path[i].key] -= dx;
            }
        }
    }

    if (n_on > 1) {
        double norm = 1.0 / (static_cast<double>(n_on) * static_cast<double>(n_on - 1));
        for (std::size_t i = 1; i < n_on; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double x = direction == MonotoneDirection::as_printed ? f_on[j] - f_on[i] - margin
                                                                      : f_on[i] - f_on[j] - margin;
                loss += norm * detail::logistic_loss(x);
                double dx = norm * detail::logistic_loss_grad(x);
                if (direction == MonotoneDirection::as_printed) {
                    grad[sample.on_path[j].key] += dx;
                    grad[sample.on_path[i].key] -= dx;
                } else {
                    grad[sample.on_path[i].key] += dx;
                    grad[sample.on_path[j].key] -= dx;
                }
            }
        }
    }
    return {loss, std::move(grad)};
}

// Sum of squared residuals against cost-to-go labels over every sample state.
// Dead-end states take dead_end_value as their target.
inline std::pair<double, HValues> l2_loss(const TrainingSample& sample, const HValues& h,
                                          double dead_end_value) {
    detail::require_on_path(sample);
    HValues grad;
    double loss = 0.0;
    auto accumulate = [&](const LabeledState& st) {
        double y;
        if (st.cost_to_go.has_value()) {
            y = *st.cost_to_go;
        } else if (st.dead_end) {
            y = dead_end_value;
        } else {
            throw std::invalid_argument("loss: unlabeled state " + st.key);
        }
        double r = detail::h_at(h, st.key) - y;
        loss += r * r;
        grad[st.key] += 2.0 * r;
    };
    for (const auto& st : sample.on_path) accumulate(st);
    for (const auto& st : sample.off_path) accumulate(st);
    return {loss, std::move(grad)};
}

// |{off-path s with some on-path f(s') >= f(s)}|: the states a search with
// this h may still expand besides the path itself.
inline int compute_rn_bound(const TrainingSample& sample, const HValues& h) {
    detail::require_on_path(sample);
    auto f_on = detail::path_f(sample, h);
    double f_max = *std::max_element(f_on.begin(), f_on.end());
    int count = 0;
    for (const auto& off : sample.off_path)
        if (f_max >= off.g + detail::h_at(h, off.key)) ++count;
    return count;
}

// Bundles every loss view of one sample. l2 is absent when some state
// carries no usable label (unlabeled, or dead without a substitute value).
inline LossReport make_loss_report(const TrainingSample& sample, const HValues& h,
                                   double margin = 0.0,
                                   MonotoneDirection direction = MonotoneDirection::as_printed,
                                   std::optional<double> dead_end_value = std::nullopt) {
    LossReport report;
    auto [t1, t2] = lstar_hard(sample, h);
    report.term1_hard = t1;
    report.term2_hard = t2;
    report.surrogate = lstar_surrogate(sample, h, margin, direction).first;
    report.rn_bound = compute_rn_bound(sample, h);

    bool labeled = true;
    auto check = [&](const LabeledState& st) {
        if (!st.cost_to_go.has_value() && !(st.dead_end && dead_end_value.has_value()))
            labeled = false;
    };
    for (const auto& st : sample.on_path) check(st);
    for (const auto& st : sample.off_path) check(st);
    if (labeled) report.l2 = l2_loss(sample, h, dead_end_value.value_or(0.0)).first;
    return report;
}

}  // namespace lstar

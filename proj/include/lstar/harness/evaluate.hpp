#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <lstar/harness/heuristics.hpp>
#include <lstar/search/astar.hpp>

namespace lstar {

struct EvalRow {
    std::string instance;
    bool solved = false;
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::uint64_t reopened = 0;
    std::optional<double> plan_cost;     // absent when unsolved
    std::optional<double> optimal_cost;  // absent when unknown or unreachable
    std::optional<double> gap;           // plan_cost - optimal_cost when both known
};

struct EvalReport {
    std::vector<EvalRow> rows;

    std::size_t solved_count() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.solved ? 1 : 0;
        return n;
    }
    // Search effort columns average over every instance, solved or not.
    double coverage() const {
        return rows.empty() ? 0.0 : static_cast<double>(solved_count()) / static_cast<double>(rows.size());
    }
    double mean_expanded() const { return mean_of([](const EvalRow& r) { return std::optional<double>(static_cast<double>(r.expanded)); }); }
    double mean_generated() const { return mean_of([](const EvalRow& r) { return std::optional<double>(static_cast<double>(r.generated)); }); }
    double mean_reopened() const { return mean_of([](const EvalRow& r) { return std::optional<double>(static_cast<double>(r.reopened)); }); }
    // Solution quality columns average over the rows where the value exists.
    double mean_plan_cost() const { return mean_of([](const EvalRow& r) { return r.plan_cost; }); }
    double mean_optimal_cost() const { return mean_of([](const EvalRow& r) { return r.optimal_cost; }); }
    double mean_gap() const { return mean_of([](const EvalRow& r) { return r.gap; }); }

   private:
    template <typename Get>
    double mean_of(Get&& get) const {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& r : rows) {
            if (auto v = get(r)) {
                sum += *v;
                ++n;
            }
        }
        return n == 0 ? 0.0 : sum / static_cast<double>(n);
    }
};

// Reference cost from a zero-heuristic search; empty when the budget runs
// out or no path exists.
template <typename Instance>
std::optional<double> optimal_cost_blind(const Instance& instance, std::uint64_t budget = 1000000) {
    using State = typename Instance::state_type;
    auto outcome = astar(instance, [](const State&) { return 0.0; }, SearchOptions{budget});
    if (!outcome.solved()) return std::nullopt;
    return outcome.plan->total_cost;
}

// Runs one search per (ref, instance) pair. `make_h(instance)` builds the
// per-instance heuristic; `optimal_of(instance)` supplies the reference
// cost; `on_solved(ref, instance, outcome)` fires for each solved row so
// callers can harvest search trees without a second run.
template <typename Instance, typename MakeH, typename OptimalOf, typename OnSolved>
EvalReport evaluate_instances(const std::vector<std::pair<std::string, Instance>>& instances,
                              MakeH&& make_h, OptimalOf&& optimal_of,
                              const SearchOptions& options, OnSolved&& on_solved) {
    EvalReport report;
    report.rows.reserve(instances.size());
    for (const auto& [ref, instance] : instances) {
        auto h = make_h(instance);
        auto outcome = astar(instance, h, options);
        EvalRow row;
        row.instance = ref;
        row.solved = outcome.solved();
        row.expanded = outcome.expanded_count;
        row.generated = outcome.generated_count;
        row.reopened = outcome.reopened_count;
        if (outcome.solved()) row.plan_cost = outcome.plan->total_cost;
        row.optimal_cost = optimal_of(instance);
        if (row.plan_cost && row.optimal_cost) row.gap = *row.plan_cost - *row.optimal_cost;
        if (outcome.solved()) on_solved(ref, instance, outcome);
        report.rows.push_back(std::move(row));
    }
    return report;
}

template <typename Instance, typename MakeH, typename OptimalOf>
EvalReport evaluate_instances(const std::vector<std::pair<std::string, Instance>>& instances,
                              MakeH&& make_h, OptimalOf&& optimal_of,
                              const SearchOptions& options) {
    using State = typename Instance::state_type;
    return evaluate_instances(instances, std::forward<MakeH>(make_h),
                              std::forward<OptimalOf>(optimal_of), options,
                              [](const std::string&, const Instance&, const SearchOutcome<State>&) {});
}

namespace detail {

inline std::string format_metric(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string format_metric(const std::optional<double>& v) {
    return v ? format_metric(*v) : std::string("-");
}

}  // namespace detail

// One row per instance plus a TOTAL row of the column means (the solved
// column's mean is coverage; optional columns average where present).
inline void write_eval_csv(std::ostream& out, const EvalReport& report) {
    out << "instance,solved,expanded,generated,reopened,plan_cost,optimal_cost,gap\n";
    for (const auto& r : report.rows) {
        out << r.instance << ',' << (r.solved ? 1 : 0) << ',' << r.expanded << ',' << r.generated
            << ',' << r.reopened << ',' << detail::format_metric(r.plan_cost) << ','
            << detail::format_metric(r.optimal_cost) << ',' << detail::format_metric(r.gap) << '\n';
    }
    out << "TOTAL," << detail::format_metric(report.coverage()) << ','
        << detail::format_metric(report.mean_expanded()) << ','
        << detail::format_metric(report.mean_generated()) << ','
        << detail::format_metric(report.mean_reopened()) << ','
        << detail::format_metric(report.mean_plan_cost()) << ','
        << detail::format_metric(report.mean_optimal_cost()) << ','
        << detail::format_metric(report.mean_gap()) << '\n';
}

}  // namespace lstar

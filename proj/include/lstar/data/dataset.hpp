#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <lstar/domains/text_io.hpp>
#include <lstar/losses/losses.hpp>
#include <lstar/search/astar.hpp>
#include <lstar/search/digraph.hpp>
#include <lstar/search/oracle.hpp>

namespace lstar {

namespace detail {

inline bool has_unlabeled(const TrainingSample& sample) {
    auto unlabeled = [](const LabeledState& st) {
        return !st.cost_to_go.has_value() && !st.dead_end;
    };
    for (const auto& st : sample.on_path)
        if (unlabeled(st)) return true;
    for (const auto& st : sample.off_path)
        if (unlabeled(st)) return true;
    return false;
}

}  // namespace detail

struct DatasetError : std::runtime_error {
    std::string kind;  // version-mismatch | malformed-record | io

    DatasetError(std::string k, const std::string& message)
        : std::runtime_error(message), kind(std::move(k)) {}
};

// Where a sample came from: enough to regenerate it bit-exactly.
struct SampleProvenance {
    std::string instance_path;
    std::string heuristic_name;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
};

// provenance runs parallel to samples; instance refs are unique.
struct Dataset {
    std::vector<TrainingSample> samples;
    std::vector<SampleProvenance> provenance;
};

// Sample skeleton from one solved search: plan states in order with their
// recorded g, then every other generated state ordered by first generation.
// Open/closed membership is irrelevant; all generated states qualify.
template <typename State>
TrainingSample build_sample(std::string instance_ref, const SearchOutcome<State>& outcome) {
    if (!outcome.solved()) throw std::invalid_argument("dataset: outcome has no plan");
    TrainingSample sample;
    sample.instance_ref = std::move(instance_ref);
    std::unordered_set<std::string> on_keys;
    const auto& plan = outcome.plan.value();
    for (std::size_t i = 0; i < plan.states.size(); ++i) {
        LabeledState st;
        st.key = state_key(plan.states[i]);
        st.g = outcome.generated_records.at(plan.states[i]).g;
        st.path_index = static_cast<int>(i);
        on_keys.insert(st.key);
        sample.on_path.push_back(std::move(st));
    }
    std::vector<std::pair<std::uint64_t, LabeledState>> rest;
    rest.reserve(outcome.generated_records.size());
    for (const auto& [state, rec] : outcome.generated_records) {
        std::string key = state_key(state);
        if (on_keys.count(key)) continue;
        LabeledState st;
        st.key = std::move(key);
        st.g = rec.g;
        rest.emplace_back(rec.gen_seq, std::move(st));
    }
    std::sort(rest.begin(), rest.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    sample.off_path.reserve(rest.size());
    for (auto& [seq, st] : rest) sample.off_path.push_back(std::move(st));
    sample.partially_labeled = detail::has_unlabeled(sample);
    return sample;
}

// Exact cost-to-go for every sample state via the reverse oracle. States the
// goal cannot be reached from get the dead-end marker. If enumeration blows
// the budget the sample comes back untouched except for the partial flag.
template <typename Instance>
TrainingSample label_cost_to_go(TrainingSample sample, const Instance& instance,
                                std::size_t labeling_budget = 1000000) {
    std::unordered_map<std::string, std::optional<double>> by_key;
    try {
        auto oracle = shortest_path_oracle(instance, labeling_budget);
        by_key.reserve(oracle.enumerated.size());
        for (const auto& state : oracle.enumerated) by_key[state_key(state)] = oracle.cost(state);
    } catch (const OracleCapExceeded&) {
        sample.partially_labeled = detail::has_unlabeled(sample);
        return sample;
    }
    auto apply = [&](LabeledState& st) {
        auto it = by_key.find(st.key);
        if (it == by_key.end()) {
            st.cost_to_go.reset();
            st.dead_end = false;
        } else if (it->second.has_value()) {
            st.cost_to_go = *it->second;
            st.dead_end = false;
        } else {
            st.cost_to_go.reset();
            st.dead_end = true;
        }
    };
    for (auto& st : sample.on_path) apply(st);
    for (auto& st : sample.off_path) apply(st);
    sample.partially_labeled = detail::has_unlabeled(sample);
    return sample;
}

// Substitute regression target for dead ends: multiplier times the largest
// finite label anywhere in the dataset, 0 when nothing is labeled.
inline double dataset_dead_end_value(const std::vector<TrainingSample>& samples,
                                     double multiplier = 2.0) {
    double max_label = 0.0;
    bool seen = false;
    for (const auto& sample : samples) {
        auto scan = [&](const LabeledState& st) {
            if (st.cost_to_go.has_value()) {
                max_label = std::max(max_label, *st.cost_to_go);
                seen = true;
            }
        };
        for (const auto& st : sample.on_path) scan(st);
        for (const auto& st : sample.off_path) scan(st);
    }
    return seen ? multiplier * max_label : 0.0;
}

inline double dataset_dead_end_value(const Dataset& data, double multiplier = 2.0) {
    return dataset_dead_end_value(data.samples, multiplier);
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_record(std::ostream& out, const LabeledState& st, bool on_path) {
    out << (on_path ? 'O' : 'N') << ' ';
    if (st.path_index.has_value())
        out << *st.path_index;
    else
        out << '-';
    out << ' ' << format_double(st.g) << ' ';
    if (st.cost_to_go.has_value())
        out << format_double(*st.cost_to_go);
    else if (st.dead_end)
        out << "DEAD";
    else
        out << '?';
    out << ' ' << st.key << '\n';
}

inline void require_token_field(const std::string& token, const std::string& prefix,
                                const std::string& line) {
    if (token.rfind(prefix, 0) != 0)
        throw DatasetError("malformed-record", "dataset: expected " + prefix + "... in: " + line);
}

}  // namespace detail

constexpr const char* kDatasetMagic = "lstar-dataset v1";

inline void write_dataset(std::ostream& out, const Dataset& data) {
    if (data.samples.size() != data.provenance.size())
        throw std::invalid_argument("dataset: provenance must cover every sample");
    std::unordered_set<std::string> seen;
    out << kDatasetMagic << '\n';
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const auto& sample = data.samples[i];
        const auto& prov = data.provenance[i];
        if (sample.instance_ref.empty() || sample.instance_ref.find(' ') != std::string::npos ||
            prov.heuristic_name.find(' ') != std::string::npos)
            throw DatasetError("malformed-record",
                               "dataset: refs and heuristic names must be non-empty, space-free");
        if (!seen.insert(sample.instance_ref).second)
            throw DatasetError("malformed-record",
                               "dataset: duplicate instance ref " + sample.instance_ref);
        out << "sample " << sample.instance_ref << " heuristic=" << prov.heuristic_name
            << " seed=" << prov.seed << " budget=" << prov.budget
            << " states=" << sample.on_path.size() + sample.off_path.size() << '\n';
        for (const auto& st : sample.on_path) detail::write_record(out, st, true);
        for (const auto& st : sample.off_path) detail::write_record(out, st, false);
    }
}

inline void write_dataset(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DatasetError("io", "dataset: cannot open " + path.string() + " for writing");
    write_dataset(out, data);
    if (!out) throw DatasetError("io", "dataset: write failed for " + path.string());
}

inline Dataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kDatasetMagic)
        throw DatasetError("version-mismatch", "dataset: bad header: " + line);

    Dataset data;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream header(line);
        std::string tag, ref, heuristic, seed, budget, states;
        header >> tag >> ref >> heuristic >> seed >> budget >> states;
        std::string trailing;
        if (tag != "sample" || ref.empty() || (header >> trailing))
            throw DatasetError("malformed-record", "dataset: expected sample header, got: " + line);
        detail::require_token_field(heuristic, "heuristic=", line);
        detail::require_token_field(seed, "seed=", line);
        detail::require_token_field(budget, "budget=", line);
        detail::require_token_field(states, "states=", line);
        if (!seen.insert(ref).second)
            throw DatasetError("malformed-record", "dataset: duplicate instance ref " + ref);

        TrainingSample sample;
        sample.instance_ref = ref;
        SampleProvenance prov;
        prov.instance_path = ref;
        prov.heuristic_name = heuristic.substr(10);
        std::size_t count = 0;
        try {
            prov.seed = std::stoull(seed.substr(5));
            prov.budget = std::stoull(budget.substr(7));
            count = std::stoul(states.substr(7));
        } catch (const std::exception&) {
            throw DatasetError("malformed-record", "dataset: bad numeric field in: " + line);
        }

        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(in, line))
                throw DatasetError("malformed-record",
                                   "dataset: truncated sample " + ref + " after " +
                                       std::to_string(i) + " of " + std::to_string(count) +
                                       " records");
            std::istringstream rec(line);
            std::string side, index, g, label, key;
            rec >> side >> index >> g >> label >> key;
            std::string extra;
            if ((side != "O" && side != "N") || key.empty() || (rec >> extra))
                throw DatasetError("malformed-record", "dataset: bad record: " + line);
            LabeledState st;
            st.key = key;
            try {
                st.g = std::stod(g);
                if (index != "-") st.path_index = std::stoi(index);
            } catch (const std::exception&) {
                throw DatasetError("malformed-record", "dataset: bad record: " + line);
            }
            if (label == "DEAD") {
                st.dead_end = true;
            } else if (label == "?") {
                sample.partially_labeled = true;
            } else {
                try {
                    st.cost_to_go = std::stod(label);
                } catch (const std::exception&) {
                    throw DatasetError("malformed-record", "dataset: bad label in: " + line);
                }
            }
            bool on = side == "O";
            if (on != st.path_index.has_value())
                throw DatasetError("malformed-record",
                                   "dataset: path index and side disagree in: " + line);
            (on ? sample.on_path : sample.off_path).push_back(std::move(st));
        }
        data.samples.push_back(std::move(sample));
        data.provenance.push_back(std::move(prov));
    }
    return data;
}

inline Dataset read_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("io", "dataset: cannot open " + path.string());
    return read_dataset(in);
}

}  // namespace lstar

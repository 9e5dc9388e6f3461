#pragma once

#include <lstar/model/model.hpp>

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lstar {

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kModelMagic = "lstar-model v1";

// Text layout header followed by the raw parameter array as
// little-endian 64-bit floats. Same params -> byte-identical file.
inline void save_model(std::ostream& out, const ModelParams& p) {
    out << kModelMagic << "\n";
    out << "channels " << p.config.input_channels << "\n";
    for (const auto& [o, k] : p.config.conv_layers) out << "conv " << o << " " << k << "\n";
    out << "hidden " << p.config.hidden_width << "\n";
    out << "params " << p.theta.size() << "\n";
    for (double value : p.theta) {
        auto bits = std::bit_cast<std::uint64_t>(value);
        char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
        out.write(bytes, 8);
    }
}

inline void save_model(const std::string& path, const ModelParams& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path);
    save_model(out, p);
    if (!out) throw CheckpointError("short write on checkpoint: " + path);
}

inline ModelParams load_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kModelMagic)
        throw CheckpointError("checkpoint magic mismatch, expected `" + std::string(kModelMagic) + "`");
    ModelConfig config;
    config.conv_layers.clear();
    std::size_t declared = 0;
    bool saw_params = false;
    while (!saw_params && std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        if (tag == "channels") {
            row >> config.input_channels;
        } else if (tag == "conv") {
            int o = 0, k = 0;
            row >> o >> k;
            config.conv_layers.emplace_back(o, k);
        } else if (tag == "hidden") {
            row >> config.hidden_width;
        } else if (tag == "params") {
            row >> declared;
            saw_params = true;
        } else {
            throw CheckpointError("unknown checkpoint header line: " + line);
        }
        if (!row) throw CheckpointError("malformed checkpoint header line: " + line);
    }
    if (!saw_params) throw CheckpointError("checkpoint header ended before `params`");
    validate_config(config);
    if (declared != param_count(config))
        throw CheckpointError("checkpoint parameter count does not match its layout");

    ModelParams p{config, std::vector<double>(declared, 0.0)};
    for (std::size_t i = 0; i < declared; ++i) {
        char bytes[8];
        in.read(bytes, 8);
        if (!in) throw CheckpointError("checkpoint truncated in parameter block");
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
        p.theta[i] = std::bit_cast<double>(bits);
    }
    return p;
}

inline ModelParams load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint for reading: " + path);
    return load_model(in);
}

}  // namespace lstar

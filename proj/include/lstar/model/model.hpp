#pragma once

#include <lstar/core/rng.hpp>
#include <lstar/domains/encode.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lstar {

// Conv stack (stride 1, same padding, ReLU) -> global average pooling
// -> dense ReLU layer -> scalar -> softplus. Pooling makes the output
// independent of the input's spatial size, so one set of parameters
// serves every instance size.
struct ModelConfig {
    int input_channels = kFeatureChannels;
    std::vector<std::pair<int, int>> conv_layers = {{8, 3}, {8, 3}, {8, 3}};  // (out, kernel)
    int hidden_width = 32;
    std::uint64_t seed = 0;

    // Equality is architectural; seed only matters at init time.
    friend bool operator==(const ModelConfig& a, const ModelConfig& b) {
        return a.input_channels == b.input_channels && a.conv_layers == b.conv_layers &&
               a.hidden_width == b.hidden_width;
    }
};

inline void validate_config(const ModelConfig& c) {
    if (c.input_channels < 1) throw std::invalid_argument("model: input_channels must be >= 1");
    if (c.conv_layers.empty()) throw std::invalid_argument("model: need at least one conv layer");
    for (const auto& [out, k] : c.conv_layers) {
        if (out < 1) throw std::invalid_argument("model: conv out_channels must be >= 1");
        if (k < 1 || k % 2 == 0) throw std::invalid_argument("model: kernel sizes must be odd");
    }
    if (c.hidden_width < 1) throw std::invalid_argument("model: hidden_width must be >= 1");
}

inline std::size_t param_count(const ModelConfig& c) {
    std::size_t total = 0;
    int in = c.input_channels;
    for (const auto& [out, k] : c.conv_layers) {
        total += static_cast<std::size_t>(out) * in * k * k + static_cast<std::size_t>(out);
        in = out;
    }
    total += static_cast<std::size_t>(c.hidden_width) * in + c.hidden_width;  // dense
    total += static_cast<std::size_t>(c.hidden_width) + 1;                    // scalar head
    return total;
}

struct ModelParams {
    ModelConfig config;
    std::vector<double> theta;
};

// He-style fan-in scaled normal weights, zero biases, in a fixed layout
// order so equal seeds give bitwise-equal parameters.
inline ModelParams model_init(const ModelConfig& config) {
    validate_config(config);
    ModelParams p{config, std::vector<double>(param_count(config), 0.0)};
    Rng rng(config.seed);
    std::size_t at = 0;
    int in = config.input_channels;
    for (const auto& [out, k] : config.conv_layers) {
        double scale = std::sqrt(2.0 / (static_cast<double>(in) * k * k));
        std::size_t n = static_cast<std::size_t>(out) * in * k * k;
        for (std::size_t i = 0; i < n; ++i) p.theta[at++] = rng.normal(0.0, scale);
        at += static_cast<std::size_t>(out);  // biases stay zero
        in = out;
    }
    double scale = std::sqrt(2.0 / in);
    for (int i = 0; i < config.hidden_width * in; ++i) p.theta[at++] = rng.normal(0.0, scale);
    at += static_cast<std::size_t>(config.hidden_width);
    scale = std::sqrt(2.0 / config.hidden_width);
    for (int i = 0; i < config.hidden_width; ++i) p.theta[at++] = rng.normal(0.0, scale);
    at += 1;
    return p;
}

inline double softplus(double x) {
    return std::max(0.0, x) + std::log1p(std::exp(-std::abs(x)));
}

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

namespace detail {

// Post-activation maps of one forward pass, kept for the reverse sweep.
struct ForwardTrace {
    std::vector<std::vector<double>> conv_out;  // per layer, (c, y, x) packed
    std::vector<double> pooled;
    std::vector<double> hidden;     // post-ReLU
    double pre_output = 0.0;        // scalar before softplus
    double h = 0.0;
};

inline double conv_forward(const ModelParams& p, const FeatureTensor& x, ForwardTrace* trace) {
    const ModelConfig& c = p.config;
    if (x.channels != c.input_channels)
        throw std::invalid_argument("model forward: feature tensor has " +
                                    std::to_string(x.channels) + " channels, config wants " +
                                    std::to_string(c.input_channels));
    const int H = x.height, W = x.width;
    const std::size_t plane = static_cast<std::size_t>(H) * W;

    std::vector<double> cur = x.values;
    int in = c.input_channels;
    std::size_t at = 0;
    if (trace) trace->conv_out.clear();
    for (const auto& [out, k] : c.conv_layers) {
        const int pad = k / 2;
        std::vector<double> next(static_cast<std::size_t>(out) * plane, 0.0);
        const double* weights = p.theta.data() + at;
        const double* bias = weights + static_cast<std::size_t>(out) * in * k * k;
        for (int o = 0; o < out; ++o) {
            for (int y = 0; y < H; ++y) {
                for (int xx = 0; xx < W; ++xx) {
                    double acc = bias[o];
                    for (int i = 0; i < in; ++i) {
                        const double* wrow =
                            weights + ((static_cast<std::size_t>(o) * in + i) * k) * k;
                        const double* iplane = cur.data() + static_cast<std::size_t>(i) * plane;
                        for (int ky = 0; ky < k; ++ky) {
                            int sy = y + ky - pad;
                            if (sy < 0 || sy >= H) continue;
                            for (int kx = 0; kx < k; ++kx) {
                                int sx = xx + kx - pad;
                                if (sx < 0 || sx >= W) continue;
                                acc += wrow[ky * k + kx] * iplane[static_cast<std::size_t>(sy) * W + sx];
                            }
                        }
                    }
                    next[(static_cast<std::size_t>(o) * H + y) * W + xx] = std::max(0.0, acc);
                }
            }
        }
        at += static_cast<std::size_t>(out) * in * k * k + static_cast<std::size_t>(out);
        cur = std::move(next);
        if (trace) trace->conv_out.push_back(cur);
        in = out;
    }

    std::vector<double> pooled(static_cast<std::size_t>(in), 0.0);
    for (int i = 0; i < in; ++i) {
        double s = 0.0;
        const double* iplane = cur.data() + static_cast<std::size_t>(i) * plane;
        for (std::size_t j = 0; j < plane; ++j) s += iplane[j];
        pooled[static_cast<std::size_t>(i)] = s / static_cast<double>(plane);
    }

    const double* w1 = p.theta.data() + at;
    const double* b1 = w1 + static_cast<std::size_t>(c.hidden_width) * in;
    std::vector<double> hidden(static_cast<std::size_t>(c.hidden_width), 0.0);
    for (int j = 0; j < c.hidden_width; ++j) {
        double acc = b1[j];
        for (int i = 0; i < in; ++i)
            acc += w1[static_cast<std::size_t>(j) * in + i] * pooled[static_cast<std::size_t>(i)];
        hidden[static_cast<std::size_t>(j)] = std::max(0.0, acc);
    }
    at += static_cast<std::size_t>(c.hidden_width) * in + c.hidden_width;

    const double* w2 = p.theta.data() + at;
    const double b2 = w2[c.hidden_width];
    double u = b2;
    for (int j = 0; j < c.hidden_width; ++j) u += w2[j] * hidden[static_cast<std::size_t>(j)];

    if (trace) {
        trace->pooled = std::move(pooled);
        trace->hidden = std::move(hidden);
        trace->pre_output = u;
        trace->h = softplus(u);
        return trace->h;
    }
    return softplus(u);
}

}  // namespace detail

inline double forward(const ModelParams& p, const FeatureTensor& x) {
    return detail::conv_forward(p, x, nullptr);
}

// Gradient of sum_i dL_dh[i] * h_theta(batch[i]) with respect to theta.
inline std::vector<double> backward(const ModelParams& p, const std::vector<FeatureTensor>& batch,
                                    const std::vector<double>& dL_dh) {
    if (batch.size() != dL_dh.size())
        throw std::invalid_argument("model backward: batch and dL_dh sizes differ");
    const ModelConfig& c = p.config;
    std::vector<double> grad(p.theta.size(), 0.0);

    for (std::size_t s = 0; s < batch.size(); ++s) {
        if (dL_dh[s] == 0.0) continue;
        const FeatureTensor& x = batch[s];
        detail::ForwardTrace trace;
        detail::conv_forward(p, x, &trace);

        const int H = x.height, W = x.width;
        const std::size_t plane = static_cast<std::size_t>(H) * W;
        const int last_out = c.conv_layers.back().first;

        // Offsets of the dense layers inside theta.
        std::size_t conv_params = 0;
        {
            int in = c.input_channels;
            for (const auto& [out, k] : c.conv_layers) {
                conv_params += static_cast<std::size_t>(out) * in * k * k + out;
                in = out;
            }
        }
        const std::size_t w1_at = conv_params;
        const std::size_t b1_at = w1_at + static_cast<std::size_t>(c.hidden_width) * last_out;
        const std::size_t w2_at = b1_at + static_cast<std::size_t>(c.hidden_width);
        const std::size_t b2_at = w2_at + static_cast<std::size_t>(c.hidden_width);

        double du = dL_dh[s] * sigmoid(trace.pre_output);  // softplus'

        grad[b2_at] += du;
        std::vector<double> dhidden(static_cast<std::size_t>(c.hidden_width), 0.0);
        for (int j = 0; j < c.hidden_width; ++j) {
            grad[w2_at + j] += du * trace.hidden[static_cast<std::size_t>(j)];
            dhidden[static_cast<std::size_t>(j)] = du * p.theta[w2_at + j];
        }

        std::vector<double> dpooled(static_cast<std::size_t>(last_out), 0.0);
        for (int j = 0; j < c.hidden_width; ++j) {
            if (trace.hidden[static_cast<std::size_t>(j)] <= 0.0) continue;  // ReLU gate
            double dz = dhidden[static_cast<std::size_t>(j)];
            grad[b1_at + j] += dz;
            for (int i = 0; i < last_out; ++i) {
                grad[w1_at + static_cast<std::size_t>(j) * last_out + i] +=
                    dz * trace.pooled[static_cast<std::size_t>(i)];
                dpooled[static_cast<std::size_t>(i)] +=
                    dz * p.theta[w1_at + static_cast<std::size_t>(j) * last_out + i];
            }
        }

        std::vector<double> dcur(static_cast<std::size_t>(last_out) * plane, 0.0);
        for (int i = 0; i < last_out; ++i) {
            double v = dpooled[static_cast<std::size_t>(i)] / static_cast<double>(plane);
            double* dplane = dcur.data() + static_cast<std::size_t>(i) * plane;
            for (std::size_t j = 0; j < plane; ++j) dplane[j] = v;
        }

        // Reverse conv sweep, innermost layer first.
        for (int layer = static_cast<int>(c.conv_layers.size()) - 1; layer >= 0; --layer) {
            const auto [out, k] = c.conv_layers[static_cast<std::size_t>(layer)];
            const int in = layer == 0 ? c.input_channels
                                      : c.conv_layers[static_cast<std::size_t>(layer) - 1].first;
            const int pad = k / 2;
            std::size_t layer_at = 0;
            {
                int lin = c.input_channels;
                for (int l = 0; l < layer; ++l) {
                    const auto [lout, lk] = c.conv_layers[static_cast<std::size_t>(l)];
                    layer_at += static_cast<std::size_t>(lout) * lin * lk * lk + lout;
                    lin = lout;
                }
            }
            const double* weights = p.theta.data() + layer_at;
            const std::size_t bias_at = layer_at + static_cast<std::size_t>(out) * in * k * k;
            const std::vector<double>& post = trace.conv_out[static_cast<std::size_t>(layer)];
            const std::vector<double>& input =
                layer == 0 ? x.values : trace.conv_out[static_cast<std::size_t>(layer) - 1];

            std::vector<double> dinput(static_cast<std::size_t>(in) * plane, 0.0);
            for (int o = 0; o < out; ++o) {
                for (int y = 0; y < H; ++y) {
                    for (int xx = 0; xx < W; ++xx) {
                        std::size_t idx = (static_cast<std::size_t>(o) * H + y) * W + xx;
                        if (post[idx] <= 0.0) continue;  // ReLU gate
                        double d = dcur[idx];
                        if (d == 0.0) continue;
                        grad[bias_at + o] += d;
                        for (int i = 0; i < in; ++i) {
                            const std::size_t wbase = ((static_cast<std::size_t>(o) * in + i) * k) * k;
                            const double* iplane = input.data() + static_cast<std::size_t>(i) * plane;
                            double* diplane = dinput.data() + static_cast<std::size_t>(i) * plane;
                            for (int ky = 0; ky < k; ++ky) {
                                int sy = y + ky - pad;
                                if (sy < 0 || sy >= H) continue;
                                for (int kx = 0; kx < k; ++kx) {
                                    int sx = xx + kx - pad;
                                    if (sx < 0 || sx >= W) continue;
                                    std::size_t sidx = static_cast<std::size_t>(sy) * W + sx;
                                    grad[layer_at + wbase + static_cast<std::size_t>(ky) * k + kx] +=
                                        d * iplane[sidx];
                                    diplane[sidx] +=
                                        d * p.theta[layer_at + wbase + static_cast<std::size_t>(ky) * k + kx];
                                }
                            }
                        }
                    }
                }
            }
            dcur = std::move(dinput);
        }
    }
    return grad;
}

}  // namespace lstar

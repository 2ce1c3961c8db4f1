#pragma once

#include <span>
#include <string>
#include <vector>

#include "rng.hpp"

namespace vqremap {

// Matched-parameter classical baseline: input -> hidden (ELU, alpha = 1) ->
// single sigmoid output, trained with binary cross-entropy. The default
// 4-6-1 shape has 4*6 + 6 + 6 + 1 = 37 parameters. Flat parameter layout:
// w1 (hidden x input, row-major), b1, w2, b2.
struct MlpModel {
    int n_inputs = 4;
    int n_hidden = 6;
    std::vector<double> params;

    static MlpModel make(int n_inputs = 4, int n_hidden = 6);

    int parameter_count() const { return n_hidden * n_inputs + n_hidden + n_hidden + 1; }

    std::span<double> w1() { return {params.data(), static_cast<std::size_t>(n_hidden * n_inputs)}; }
    std::span<double> b1() {
        return {params.data() + n_hidden * n_inputs, static_cast<std::size_t>(n_hidden)};
    }
    std::span<double> w2() {
        return {params.data() + n_hidden * (n_inputs + 1), static_cast<std::size_t>(n_hidden)};
    }
    double& b2() { return params[n_hidden * (n_inputs + 2)]; }
    std::span<const double> w1() const {
        return {params.data(), static_cast<std::size_t>(n_hidden * n_inputs)};
    }
    std::span<const double> b1() const {
        return {params.data() + n_hidden * n_inputs, static_cast<std::size_t>(n_hidden)};
    }
    std::span<const double> w2() const {
        return {params.data() + n_hidden * (n_inputs + 1), static_cast<std::size_t>(n_hidden)};
    }
    double b2() const { return params[n_hidden * (n_inputs + 2)]; }

    // Uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer, biases zero.
    void init_params(Rng& rng);
};

double mlp_forward(const MlpModel& model, std::span<const double> features);

// Exact gradient of -[y ln p + (1-y) ln(1-p)] with respect to every parameter,
// in the flat layout of MlpModel::params.
std::vector<double> mlp_gradient(const MlpModel& model, std::span<const double> features,
                                 int label);

void save_mlp_model(const MlpModel& model, const std::string& path);

} // namespace vqremap

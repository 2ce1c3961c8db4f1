#include "training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace vqremap {

namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorCode::Config, "training", message);
}

} // namespace

void TrainingConfig::validate() const {
    if (learning_rate <= 0.0) config_error("learning_rate must be > 0");
    if (batch_size < 1) config_error("batch_size must be >= 1");
    if (n_epochs < 1) config_error("n_epochs must be >= 1");
}

double cross_entropy(std::span<const double> probs, int label) {
    if (label < 0 || label >= static_cast<int>(probs.size())) {
        config_error("label " + std::to_string(label) + " out of range for " +
                     std::to_string(probs.size()) + " classes");
    }
    return -std::log(probs[label]);
}

std::vector<double> vqc_gradient(const VqcModel& model, std::span<const double> features,
                                 int label) {
    const int n_weights = model.weight_count();
    std::vector<double> remapped = model.remapped_weights();
    const CircuitTrace trace = trace_circuit(model, remapped, features);

    std::vector<double> logits(trace.expectations);
    const auto biases = model.biases();
    for (int j = 0; j < model.n_classes; ++j) logits[j] += biases[j];
    const std::vector<double> probs = softmax(logits);

    // dL/dz_j = p_j - [j == label]; z_j = e_j + b_j, so this is both the bias
    // gradient and dL/de_j.
    std::vector<double> dz(model.n_classes);
    for (int j = 0; j < model.n_classes; ++j) {
        dz[j] = probs[j] - (j == label ? 1.0 : 0.0);
    }

    std::vector<double> grad(model.parameter_count(), 0.0);
    const int per_layer = 3 * model.n_qubits;
    const auto weights = model.weights();
    for (int i = 0; i < n_weights; ++i) {
        const double dphi = remap_derivative(model.remap, weights[i]);
        if (dphi == 0.0) continue; // clamp saturation freezes the weight
        const int layer = i / per_layer + 1;
        const StateVector& prefix = trace.before_layer[layer - 1];

        const double angle = remapped[i];
        remapped[i] = angle + kPi / 2.0;
        const auto plus = expectations_from(model, prefix, layer, remapped, features);
        remapped[i] = angle - kPi / 2.0;
        const auto minus = expectations_from(model, prefix, layer, remapped, features);
        remapped[i] = angle;

        double acc = 0.0;
        for (int j = 0; j < model.n_classes; ++j) {
            acc += dz[j] * (plus[j] - minus[j]) / 2.0;
        }
        grad[i] = dphi * acc;
    }
    for (int j = 0; j < model.n_classes; ++j) grad[n_weights + j] = dz[j];
    return grad;
}

double vqc_loss(const VqcModel& model, std::span<const double> features, int label) {
    return cross_entropy(forward(model, features).probs, label);
}

int vqc_predict(const VqcModel& model, std::span<const double> features) {
    const auto probs = forward(model, features).probs;
    return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double mlp_loss(const MlpModel& model, std::span<const double> features, int label) {
    const double p = mlp_forward(model, features);
    return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

int mlp_predict(const MlpModel& model, std::span<const double> features) {
    return mlp_forward(model, features) >= 0.5 ? 1 : 0;
}

void sgd_step(std::span<double> params, std::span<const double> grad, double learning_rate) {
    if (params.size() != grad.size()) config_error("parameter/gradient shape mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= learning_rate * grad[i];
}

namespace {

// Shared epoch loop; the adapter supplies gradient/loss/predict and exposes
// the flat parameter vector.
template <typename Adapter>
TrainRecord train_impl(Adapter& adapter, const SplitData& splits, const TrainingConfig& config,
                       Rng& rng) {
    config.validate();
    if (splits.train_y.empty() || splits.valid_y.empty() || splits.test_y.empty()) {
        config_error("all three splits must be nonempty");
    }

    TrainRecord record;
    record.weights_in_range = adapter.weights_in_range();

    const std::size_t n_train = splits.train_y.size();
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<double> grad_sum;
    for (int epoch = 0; epoch < config.n_epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t start = 0; start < n_train; start += config.batch_size) {
            const std::size_t stop = std::min(n_train, start + config.batch_size);
            grad_sum.assign(adapter.params().size(), 0.0);
            for (std::size_t k = start; k < stop; ++k) {
                const std::size_t i = order[k];
                const auto g = adapter.gradient(splits.train_row(i), splits.train_y[i]);
                for (std::size_t j = 0; j < grad_sum.size(); ++j) grad_sum[j] += g[j];
            }
            const double scale = 1.0 / static_cast<double>(stop - start);
            for (double& g : grad_sum) g *= scale;
            sgd_step(adapter.params(), grad_sum, config.learning_rate);
            if (record.weights_in_range && !adapter.weights_in_range()) {
                record.weights_in_range = false;
            }
        }

        double loss = 0.0;
        int correct = 0;
        for (std::size_t i = 0; i < n_train; ++i) {
            loss += adapter.loss(splits.train_row(i), splits.train_y[i]);
            correct += adapter.predict(splits.train_row(i)) == splits.train_y[i];
        }
        record.train_loss.push_back(loss / static_cast<double>(n_train));
        record.train_acc.push_back(static_cast<double>(correct) / static_cast<double>(n_train));

        loss = 0.0;
        correct = 0;
        const std::size_t n_valid = splits.valid_y.size();
        for (std::size_t i = 0; i < n_valid; ++i) {
            loss += adapter.loss(splits.valid_row(i), splits.valid_y[i]);
            correct += adapter.predict(splits.valid_row(i)) == splits.valid_y[i];
        }
        record.valid_loss.push_back(loss / static_cast<double>(n_valid));
        record.valid_acc.push_back(static_cast<double>(correct) / static_cast<double>(n_valid));
    }

    const std::size_t n_test = splits.test_y.size();
    record.test_correct.resize(n_test);
    int correct = 0;
    for (std::size_t i = 0; i < n_test; ++i) {
        const bool hit = adapter.predict(splits.test_row(i)) == splits.test_y[i];
        record.test_correct[i] = hit ? 1 : 0;
        correct += hit;
    }
    record.test_acc = static_cast<double>(correct) / static_cast<double>(n_test);
    return record;
}

struct VqcAdapter {
    VqcModel& model;
    std::span<double> params() { return model.params; }
    std::vector<double> gradient(std::span<const double> x, int y) {
        return vqc_gradient(model, x, y);
    }
    double loss(std::span<const double> x, int y) const { return vqc_loss(model, x, y); }
    int predict(std::span<const double> x) const { return vqc_predict(model, x); }
    bool weights_in_range() const { return model.weights_within(kPi); }
};

struct MlpAdapter {
    MlpModel& model;
    std::span<double> params() { return model.params; }
    std::vector<double> gradient(std::span<const double> x, int y) {
        return mlp_gradient(model, x, y);
    }
    double loss(std::span<const double> x, int y) const { return mlp_loss(model, x, y); }
    int predict(std::span<const double> x) const { return mlp_predict(model, x); }
    bool weights_in_range() const { return true; } // not an angle-domain model
};

} // namespace

TrainRecord train_vqc(VqcModel& model, const SplitData& splits, const TrainingConfig& config,
                      Rng& rng) {
    VqcAdapter adapter{model};
    return train_impl(adapter, splits, config, rng);
}

TrainRecord train_mlp(MlpModel& model, const SplitData& splits, const TrainingConfig& config,
                      Rng& rng) {
    MlpAdapter adapter{model};
    return train_impl(adapter, splits, config, rng);
}

} // namespace vqremap

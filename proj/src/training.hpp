#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "mlp.hpp"
#include "vqc_model.hpp"

namespace vqremap {

struct TrainingConfig {
    double learning_rate = 0.01;
    int batch_size = 5;
    int n_epochs = 30;
    std::uint64_t seed = 0;
    std::string approach;

    void validate() const;
};

struct TrainRecord {
    std::vector<double> train_loss, train_acc, valid_loss, valid_acc;
    double test_acc = 0.0;
    std::vector<std::uint8_t> test_correct; // per test sample, pooled for CIs
    bool weights_in_range = true;           // rotation weights stayed in [-pi, pi]
};

double cross_entropy(std::span<const double> probs, int label);

// Parameter-shift gradient chained through the re-mapping derivative, plus the
// exact softmax cross-entropy gradient for the biases. Layout matches
// VqcModel::params.
std::vector<double> vqc_gradient(const VqcModel& model, std::span<const double> features,
                                 int label);

double vqc_loss(const VqcModel& model, std::span<const double> features, int label);
int vqc_predict(const VqcModel& model, std::span<const double> features);

double mlp_loss(const MlpModel& model, std::span<const double> features, int label);
int mlp_predict(const MlpModel& model, std::span<const double> features);

void sgd_step(std::span<double> params, std::span<const double> grad, double learning_rate);

TrainRecord train_vqc(VqcModel& model, const SplitData& splits, const TrainingConfig& config,
                      Rng& rng);
TrainRecord train_mlp(MlpModel& model, const SplitData& splits, const TrainingConfig& config,
                      Rng& rng);

} // namespace vqremap

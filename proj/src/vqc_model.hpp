#pragma once

#include <span>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "remap.hpp"
#include "rng.hpp"
#include "statevector.hpp"

namespace vqremap {

// Layered variational classifier. Rotation weights are stored raw; the remap
// function is applied on every forward pass only. Parameters live in one flat
// vector: 3 * n_qubits * n_layers weights (layer-major, then qubit, then the
// RZ/RY/RZ slot) followed by n_classes biases.
struct VqcModel {
    EmbeddingSpec embedding;
    RemapKind remap = RemapKind::Identity;
    bool reupload = false;
    int n_qubits = 0;
    int n_layers = 0;
    int n_classes = 0;
    std::vector<double> params;

    static VqcModel make(const EmbeddingSpec& embedding, int n_layers, int n_classes,
                         RemapKind remap, bool reupload);

    int weight_count() const { return 3 * n_qubits * n_layers; }
    int parameter_count() const { return weight_count() + n_classes; }

    std::span<double> weights() { return {params.data(), static_cast<std::size_t>(weight_count())}; }
    std::span<const double> weights() const {
        return {params.data(), static_cast<std::size_t>(weight_count())};
    }
    std::span<double> biases() {
        return {params.data() + weight_count(), static_cast<std::size_t>(n_classes)};
    }
    std::span<const double> biases() const {
        return {params.data() + weight_count(), static_cast<std::size_t>(n_classes)};
    }

    // Weights i.i.d. uniform on [-pi, pi], biases zero.
    void init_params(Rng& rng);

    bool weights_within(double bound) const;

    std::vector<double> remapped_weights() const;
};

// Per-qubit RZ, RY, RZ followed by the CNOT ring with target (i + l) mod n.
// CNOTs whose target would equal their control (l a multiple of n) are skipped.
void apply_layer(StateVector& state, std::span<const double> layer_weights, int layer_index);

// Embedding for the first layer: angle gates or direct amplitude assignment.
StateVector initial_state(const VqcModel& model, std::span<const double> features);

// Continues the circuit from a state positioned just before `layer`, applying
// layers layer..n_layers (re-appling the embedding before each later layer in
// re-uploading mode), then measures <Z_j> for the first n_classes qubits.
std::vector<double> expectations_from(const VqcModel& model, StateVector state, int layer,
                                      std::span<const double> remapped_weights,
                                      std::span<const double> features);

// Full circuit with explicitly supplied (already remapped) rotation angles.
std::vector<double> circuit_expectations(const VqcModel& model,
                                         std::span<const double> remapped_weights,
                                         std::span<const double> features);

// Snapshot of the state just before each layer's rotations; reused by the
// parameter-shift gradient so shifted evaluations replay only the suffix.
struct CircuitTrace {
    std::vector<StateVector> before_layer; // size n_layers
    std::vector<double> expectations;
};
CircuitTrace trace_circuit(const VqcModel& model, std::span<const double> remapped_weights,
                           std::span<const double> features);

std::vector<double> softmax(std::span<const double> logits);

struct Forward {
    std::vector<double> probs;
    std::vector<double> expectations;
};
Forward forward(const VqcModel& model, std::span<const double> features);

// Flat text checkpoint; field names documented in the README.
void save_vqc_model(const VqcModel& model, const std::string& path);
VqcModel load_vqc_model(const std::string& path);

} // namespace vqremap

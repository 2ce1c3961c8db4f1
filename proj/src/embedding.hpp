#pragma once

#include <span>
#include <vector>

#include "statevector.hpp"

namespace vqremap {

enum class EmbeddingKind { Angle, Amplitude };

std::string_view embedding_name(EmbeddingKind kind);
EmbeddingKind embedding_from_name(std::string_view name);

struct EmbeddingSpec {
    EmbeddingKind kind = EmbeddingKind::Angle;
    int n_features = 0;
    int n_qubits = 0;

    static EmbeddingSpec angle(int n_features);     // one qubit per feature
    static EmbeddingSpec amplitude(int n_features); // ceil(log2(max(n_features, 2))) qubits
};

// RX(x_i) on qubit i for each feature; also the re-uploading form of the
// angle embedding when applied to a non-fresh state.
void apply_angle_embedding(StateVector& state, std::span<const double> features);

// Features padded with zeros to 2^n_qubits and L2-normalized.
std::vector<double> amplitude_vector(std::span<const double> features, int n_qubits);

// Overwrites the state with (embedded amplitudes on the first embed_qubits
// qubits) tensor |0...0> on the rest. Valid as state preparation from |0...0>.
void assign_amplitude_embedding(StateVector& state, std::span<const double> features,
                                int embed_qubits);

// Real orthogonal D x D matrix (row-major) whose first column is the given
// unit vector: the state-preparation unitary taking |0...0> to the target.
// Used to re-upload an amplitude embedding onto an arbitrary current state.
std::vector<double> completion_unitary(std::span<const double> unit_target);

// Applies a real D x D matrix (D = 2^embed_qubits, row-major) to the
// sub-register formed by the first embed_qubits qubits.
void apply_unitary_on_prefix(StateVector& state, std::span<const double> matrix, int embed_qubits);

void apply_amplitude_embedding_unitary(StateVector& state, std::span<const double> features,
                                       int embed_qubits);

// Spec-level single-shot embeddings.
StateVector embed_angle(std::span<const double> features);
StateVector embed_amplitude(std::span<const double> features);

} // namespace vqremap

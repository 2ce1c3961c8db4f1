#include "embedding.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace vqremap {

namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorCode::Config, "embedding", message);
}

int amplitude_qubits(int n_features) {
    int n = 1;
    while ((std::size_t{1} << n) < static_cast<std::size_t>(n_features)) ++n;
    return n;
}

} // namespace

std::string_view embedding_name(EmbeddingKind kind) {
    return kind == EmbeddingKind::Angle ? "angle" : "amplitude";
}

EmbeddingKind embedding_from_name(std::string_view name) {
    if (name == "angle") return EmbeddingKind::Angle;
    if (name == "amplitude") return EmbeddingKind::Amplitude;
    throw Error(ErrorCode::Usage, "embedding",
                "unknown embedding '" + std::string(name) + "' (expected angle or amplitude)");
}

EmbeddingSpec EmbeddingSpec::angle(int n_features) {
    if (n_features < 1) config_error("angle embedding requires at least one feature");
    if (n_features > kMaxQubits) {
        config_error("angle embedding of " + std::to_string(n_features) + " features exceeds " +
                     std::to_string(kMaxQubits) + " qubits");
    }
    return {EmbeddingKind::Angle, n_features, n_features};
}

EmbeddingSpec EmbeddingSpec::amplitude(int n_features) {
    if (n_features < 1) config_error("amplitude embedding requires at least one feature");
    return {EmbeddingKind::Amplitude, n_features, amplitude_qubits(n_features)};
}

void apply_angle_embedding(StateVector& state, std::span<const double> features) {
    if (features.empty()) config_error("empty feature vector");
    if (static_cast<int>(features.size()) > state.n_qubits()) {
        config_error("angle embedding of " + std::to_string(features.size()) +
                     " features needs as many qubits, state has " +
                     std::to_string(state.n_qubits()));
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        state.apply_rx(static_cast<int>(i), features[i]);
    }
}

std::vector<double> amplitude_vector(std::span<const double> features, int n_qubits) {
    if (features.empty()) config_error("empty feature vector");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (features.size() > dim) {
        config_error("amplitude embedding of " + std::to_string(features.size()) +
                     " features does not fit in " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<double> padded(dim, 0.0);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        padded[i] = features[i];
        norm_sq += features[i] * features[i];
    }
    if (norm_sq <= 0.0) {
        throw Error(ErrorCode::Numeric, "embedding",
                    "all-zero feature vector cannot be amplitude embedded");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : padded) v *= inv;
    return padded;
}

void assign_amplitude_embedding(StateVector& state, std::span<const double> features,
                                int embed_qubits) {
    const auto target = amplitude_vector(features, embed_qubits);
    const int pad_qubits = state.n_qubits() - embed_qubits;
    if (pad_qubits < 0) {
        config_error("state has fewer qubits than the embedding register");
    }
    const std::size_t dim = state.dimension();
    const int shift = pad_qubits;
    for (std::size_t i = 0; i < dim; ++i) state.set_amplitude(i, {0.0, 0.0});
    for (std::size_t hi = 0; hi < target.size(); ++hi) {
        state.set_amplitude(hi << shift, {target[hi], 0.0});
    }
}

std::vector<double> completion_unitary(std::span<const double> unit_target) {
    const std::size_t dim = unit_target.size();
    std::vector<std::vector<double>> cols;
    cols.reserve(dim);
    cols.emplace_back(unit_target.begin(), unit_target.end());
    for (std::size_t j = 0; j < dim && cols.size() < dim; ++j) {
        std::vector<double> v(dim, 0.0);
        v[j] = 1.0;
        for (const auto& c : cols) {
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) dot += c[k] * v[k];
            for (std::size_t k = 0; k < dim; ++k) v[k] -= dot * c[k];
        }
        double norm_sq = 0.0;
        for (double x : v) norm_sq += x * x;
        if (norm_sq < 1e-12) continue; // e_j already spanned
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& x : v) x *= inv;
        cols.push_back(std::move(v));
    }
    if (cols.size() != dim) {
        throw Error(ErrorCode::Internal, "embedding", "basis completion failed");
    }
    std::vector<double> matrix(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) matrix[r * dim + c] = cols[c][r];
    }
    return matrix;
}

void apply_unitary_on_prefix(StateVector& state, std::span<const double> matrix,
                             int embed_qubits) {
    const std::size_t dim = std::size_t{1} << embed_qubits;
    if (matrix.size() != dim * dim) {
        config_error("matrix size does not match the embedding register");
    }
    const int shift = state.n_qubits() - embed_qubits;
    if (shift < 0) config_error("state has fewer qubits than the embedding register");
    const std::size_t lo_count = std::size_t{1} << shift;
    std::vector<std::complex<double>> sub(dim);
    for (std::size_t lo = 0; lo < lo_count; ++lo) {
        for (std::size_t hi = 0; hi < dim; ++hi) sub[hi] = state.amplitude((hi << shift) | lo);
        for (std::size_t r = 0; r < dim; ++r) {
            double re = 0.0, im = 0.0;
            const double* row = matrix.data() + r * dim;
            for (std::size_t c = 0; c < dim; ++c) {
                re += row[c] * sub[c].real();
                im += row[c] * sub[c].imag();
            }
            state.set_amplitude((r << shift) | lo, {re, im});
        }
    }
}

void apply_amplitude_embedding_unitary(StateVector& state, std::span<const double> features,
                                       int embed_qubits) {
    const auto target = amplitude_vector(features, embed_qubits);
    const auto matrix = completion_unitary(target);
    apply_unitary_on_prefix(state, matrix, embed_qubits);
}

StateVector embed_angle(std::span<const double> features) {
    if (features.empty()) config_error("empty feature vector");
    StateVector state(static_cast<int>(features.size()));
    apply_angle_embedding(state, features);
    return state;
}

StateVector embed_amplitude(std::span<const double> features) {
    const auto spec = EmbeddingSpec::amplitude(static_cast<int>(features.size()));
    StateVector state(spec.n_qubits);
    assign_amplitude_embedding(state, features, spec.n_qubits);
    return state;
}

} // namespace vqremap

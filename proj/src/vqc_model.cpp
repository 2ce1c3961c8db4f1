#include "vqc_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace vqremap {

namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorCode::Config, "vqc-model", message);
}

std::vector<double> measure_classes(const StateVector& state, int n_classes) {
    std::vector<double> expectations(n_classes);
    for (int j = 0; j < n_classes; ++j) expectations[j] = state.expectation_z(j);
    return expectations;
}

void reembed(StateVector& state, const VqcModel& model, std::span<const double> features) {
    if (model.embedding.kind == EmbeddingKind::Angle) {
        apply_angle_embedding(state, features);
    } else {
        apply_amplitude_embedding_unitary(state, features, model.embedding.n_qubits);
    }
}

} // namespace

VqcModel VqcModel::make(const EmbeddingSpec& embedding, int n_layers, int n_classes,
                        RemapKind remap, bool reupload) {
    if (n_layers < 1) config_error("n_layers must be >= 1");
    if (n_classes < 1) config_error("n_classes must be >= 1");
    // One measured qubit per class; registers smaller than the class count are
    // padded with |0> qubits.
    const int n_qubits = std::max(embedding.n_qubits, n_classes);
    if (n_qubits > kMaxQubits) {
        config_error("circuit of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                     std::to_string(kMaxQubits));
    }
    VqcModel model;
    model.embedding = embedding;
    model.remap = remap;
    model.reupload = reupload;
    model.n_qubits = n_qubits;
    model.n_layers = n_layers;
    model.n_classes = n_classes;
    model.params.assign(model.parameter_count(), 0.0);
    return model;
}

void VqcModel::init_params(Rng& rng) {
    auto w = weights();
    for (double& v : w) v = uniform(rng, -kPi, kPi);
    auto b = biases();
    std::fill(b.begin(), b.end(), 0.0);
}

bool VqcModel::weights_within(double bound) const {
    for (double v : weights()) {
        if (std::abs(v) > bound) return false;
    }
    return true;
}

std::vector<double> VqcModel::remapped_weights() const {
    const auto w = weights();
    std::vector<double> remapped(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) remapped[i] = vqremap::remap(remap, w[i]);
    return remapped;
}

void apply_layer(StateVector& state, std::span<const double> layer_weights, int layer_index) {
    const int n = state.n_qubits();
    if (layer_index < 1) {
        config_error("layer_index must be >= 1, got " + std::to_string(layer_index));
    }
    if (layer_weights.size() != static_cast<std::size_t>(3 * n)) {
        config_error("layer expects 3 angles per qubit");
    }
    for (int i = 0; i < n; ++i) {
        state.apply_rz(i, layer_weights[3 * i]);
        state.apply_ry(i, layer_weights[3 * i + 1]);
        state.apply_rz(i, layer_weights[3 * i + 2]);
    }
    for (int i = 0; i < n; ++i) {
        const int target = (i + layer_index) % n;
        if (target == i) continue;
        state.apply_cnot(i, target);
    }
}

StateVector initial_state(const VqcModel& model, std::span<const double> features) {
    StateVector state(model.n_qubits);
    if (model.embedding.kind == EmbeddingKind::Angle) {
        apply_angle_embedding(state, features);
    } else {
        assign_amplitude_embedding(state, features, model.embedding.n_qubits);
    }
    return state;
}

std::vector<double> expectations_from(const VqcModel& model, StateVector state, int layer,
                                      std::span<const double> remapped_weights,
                                      std::span<const double> features) {
    const std::size_t stride = static_cast<std::size_t>(3 * model.n_qubits);
    for (int l = layer; l <= model.n_layers; ++l) {
        if (l > layer && model.reupload) reembed(state, model, features);
        apply_layer(state, remapped_weights.subspan((l - 1) * stride, stride), l);
    }
    return measure_classes(state, model.n_classes);
}

std::vector<double> circuit_expectations(const VqcModel& model,
                                         std::span<const double> remapped_weights,
                                         std::span<const double> features) {
    return expectations_from(model, initial_state(model, features), 1, remapped_weights,
                             features);
}

CircuitTrace trace_circuit(const VqcModel& model, std::span<const double> remapped_weights,
                           std::span<const double> features) {
    const std::size_t stride = static_cast<std::size_t>(3 * model.n_qubits);
    CircuitTrace trace;
    trace.before_layer.reserve(model.n_layers);
    StateVector state = initial_state(model, features);
    for (int l = 1; l <= model.n_layers; ++l) {
        if (l > 1 && model.reupload) reembed(state, model, features);
        trace.before_layer.push_back(state);
        apply_layer(state, remapped_weights.subspan((l - 1) * stride, stride), l);
    }
    trace.expectations = measure_classes(state, model.n_classes);
    return trace;
}

std::vector<double> softmax(std::span<const double> logits) {
    const double zmax = *std::max_element(logits.begin(), logits.end());
    std::vector<double> probs(logits.size());
    double denom = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - zmax);
        denom += probs[i];
    }
    for (double& p : probs) p /= denom;
    return probs;
}

Forward forward(const VqcModel& model, std::span<const double> features) {
    const auto remapped = model.remapped_weights();
    Forward out;
    out.expectations = circuit_expectations(model, remapped, features);
    std::vector<double> logits(out.expectations);
    const auto b = model.biases();
    for (int j = 0; j < model.n_classes; ++j) logits[j] += b[j];
    out.probs = softmax(logits);
    return out;
}

void save_vqc_model(const VqcModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "vqc-model", "cannot write " + path);
    out << "vqremap-model v1\n";
    out << "kind=vqc\n";
    out << "embedding=" << embedding_name(model.embedding.kind) << "\n";
    out << "n_features=" << model.embedding.n_features << "\n";
    out << "n_qubits=" << model.n_qubits << "\n";
    out << "n_layers=" << model.n_layers << "\n";
    out << "n_classes=" << model.n_classes << "\n";
    out << "remap=" << remap_name(model.remap) << "\n";
    out << "reupload=" << (model.reupload ? 1 : 0) << "\n";
    out << "weights=";
    const auto w = model.weights();
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << fmt_double(w[i]);
    out << "\nbiases=";
    const auto b = model.biases();
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << fmt_double(b[i]);
    out << "\n";
}

namespace {

std::vector<double> parse_vector(std::string_view text, const std::string& where) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(' ', pos);
        if (next == std::string_view::npos) next = text.size();
        if (next > pos) values.push_back(parse_double(text.substr(pos, next - pos), where));
        pos = next + 1;
    }
    return values;
}

} // namespace

VqcModel load_vqc_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "vqc-model", "cannot read " + path);
    std::string line;
    std::getline(in, line);
    if (line != "vqremap-model v1") {
        throw Error(ErrorCode::Ingest, "vqc-model", "bad checkpoint header in " + path);
    }
    std::string embedding = "angle", remap_str = "none";
    int n_features = 0, n_qubits = 0, n_layers = 0, n_classes = 0, reupload = 0;
    std::vector<double> weights, biases;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "embedding") embedding = value;
        else if (key == "n_features") n_features = static_cast<int>(parse_long(value, path));
        else if (key == "n_qubits") n_qubits = static_cast<int>(parse_long(value, path));
        else if (key == "n_layers") n_layers = static_cast<int>(parse_long(value, path));
        else if (key == "n_classes") n_classes = static_cast<int>(parse_long(value, path));
        else if (key == "remap") remap_str = value;
        else if (key == "reupload") reupload = static_cast<int>(parse_long(value, path));
        else if (key == "weights") weights = parse_vector(value, path);
        else if (key == "biases") biases = parse_vector(value, path);
    }
    const auto spec = embedding_from_name(embedding) == EmbeddingKind::Angle
                          ? EmbeddingSpec::angle(n_features)
                          : EmbeddingSpec::amplitude(n_features);
    VqcModel model = VqcModel::make(spec, n_layers, n_classes, remap_from_name(remap_str),
                                    reupload != 0);
    if (model.n_qubits != n_qubits ||
        weights.size() != static_cast<std::size_t>(model.weight_count()) ||
        biases.size() != static_cast<std::size_t>(model.n_classes)) {
        throw Error(ErrorCode::Ingest, "vqc-model", "checkpoint shape mismatch in " + path);
    }
    std::copy(weights.begin(), weights.end(), model.weights().begin());
    std::copy(biases.begin(), biases.end(), model.biases().begin());
    return model;
}

} // namespace vqremap

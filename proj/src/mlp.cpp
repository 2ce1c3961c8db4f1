#include "mlp.hpp"

#include <cmath>
#include <fstream>

#include "error.hpp"
#include "textio.hpp"

namespace vqremap {

namespace {

double elu(double z) { return z < 0.0 ? std::exp(z) - 1.0 : z; }
double elu_derivative(double z) { return z < 0.0 ? std::exp(z) : 1.0; }
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

} // namespace

MlpModel MlpModel::make(int n_inputs, int n_hidden) {
    if (n_inputs < 1 || n_hidden < 1) {
        throw Error(ErrorCode::Config, "classical-baseline", "layer sizes must be >= 1");
    }
    MlpModel model;
    model.n_inputs = n_inputs;
    model.n_hidden = n_hidden;
    model.params.assign(model.parameter_count(), 0.0);
    return model;
}

void MlpModel::init_params(Rng& rng) {
    const double lim1 = 1.0 / std::sqrt(static_cast<double>(n_inputs));
    for (double& v : w1()) v = uniform(rng, -lim1, lim1);
    for (double& v : b1()) v = 0.0;
    const double lim2 = 1.0 / std::sqrt(static_cast<double>(n_hidden));
    for (double& v : w2()) v = uniform(rng, -lim2, lim2);
    b2() = 0.0;
}

double mlp_forward(const MlpModel& model, std::span<const double> features) {
    if (features.size() != static_cast<std::size_t>(model.n_inputs)) {
        throw Error(ErrorCode::Config, "classical-baseline", "feature size mismatch");
    }
    const auto w1 = model.w1();
    const auto b1 = model.b1();
    const auto w2 = model.w2();
    double z2 = model.b2();
    for (int h = 0; h < model.n_hidden; ++h) {
        double z1 = b1[h];
        for (int i = 0; i < model.n_inputs; ++i) z1 += w1[h * model.n_inputs + i] * features[i];
        z2 += w2[h] * elu(z1);
    }
    return sigmoid(z2);
}

std::vector<double> mlp_gradient(const MlpModel& model, std::span<const double> features,
                                 int label) {
    const int in = model.n_inputs;
    const int hidden = model.n_hidden;
    const auto w1 = model.w1();
    const auto b1 = model.b1();
    const auto w2 = model.w2();

    std::vector<double> z1(hidden), h_act(hidden);
    double z2 = model.b2();
    for (int h = 0; h < hidden; ++h) {
        double z = b1[h];
        for (int i = 0; i < in; ++i) z += w1[h * in + i] * features[i];
        z1[h] = z;
        h_act[h] = elu(z);
        z2 += w2[h] * h_act[h];
    }
    const double p = sigmoid(z2);
    const double dz2 = p - static_cast<double>(label); // dL/dz2 for BCE + sigmoid

    std::vector<double> grad(model.parameter_count(), 0.0);
    std::span<double> gw1{grad.data(), static_cast<std::size_t>(hidden * in)};
    std::span<double> gb1{grad.data() + hidden * in, static_cast<std::size_t>(hidden)};
    std::span<double> gw2{grad.data() + hidden * (in + 1), static_cast<std::size_t>(hidden)};
    double& gb2 = grad[hidden * (in + 2)];

    gb2 = dz2;
    for (int h = 0; h < hidden; ++h) {
        gw2[h] = dz2 * h_act[h];
        const double dz1 = dz2 * w2[h] * elu_derivative(z1[h]);
        gb1[h] = dz1;
        for (int i = 0; i < in; ++i) gw1[h * in + i] = dz1 * features[i];
    }
    return grad;
}

void save_mlp_model(const MlpModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "classical-baseline", "cannot write " + path);
    out << "vqremap-model v1\n";
    out << "kind=mlp\n";
    out << "n_inputs=" << model.n_inputs << "\n";
    out << "n_hidden=" << model.n_hidden << "\n";
    out << "params=";
    for (std::size_t i = 0; i < model.params.size(); ++i) {
        out << (i ? " " : "") << fmt_double(model.params[i]);
    }
    out << "\n";
}

} // namespace vqremap

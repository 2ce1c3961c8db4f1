#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "mlp.hpp"
#include "rng.hpp"

using namespace vqremap;

namespace {

double bce(const MlpModel& model, std::span<const double> x, int y) {
    const double p = mlp_forward(model, x);
    return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

} // namespace

TEST_CASE("parameter count is 37 for the 4-6-1 shape") {
    const MlpModel model = MlpModel::make();
    CHECK(model.parameter_count() == 37);
    CHECK(model.params.size() == 37);
}

TEST_CASE("all-zero parameters output one half") {
    const MlpModel model = MlpModel::make();
    const std::vector<double> x = {0.3, -0.7, 2.0, 0.1};
    CHECK(mlp_forward(model, x) == 0.5);
}

TEST_CASE("zero hidden weights reduce to sigmoid of the output bias") {
    MlpModel model = MlpModel::make();
    model.b2() = 10.0;
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    CHECK(mlp_forward(model, x) == doctest::Approx(0.9999546021312976).epsilon(1e-12));
}

TEST_CASE("hand-computed single-path network") {
    MlpModel model = MlpModel::make();
    model.w1()[0] = 1.0;  // hidden 0 <- input 0
    model.w2()[0] = 2.0;
    model.b2() = 0.5;
    const std::vector<double> x = {0.3, 0.0, 0.0, 0.0};
    // z1 = 0.3, elu keeps it, z2 = 2 * 0.3 + 0.5 = 1.1, sigmoid(1.1) below
    CHECK(mlp_forward(model, x) == doctest::Approx(0.7502601055951177).epsilon(1e-12));

    // negative preactivation exercises the elu branch:
    // z1 = -0.4, h = e^-0.4 - 1, z2 = 2 h + 0.5
    const std::vector<double> neg = {-0.4, 0.0, 0.0, 0.0};
    const double h = std::exp(-0.4) - 1.0;
    const double expected = 1.0 / (1.0 + std::exp(-(2.0 * h + 0.5)));
    CHECK(mlp_forward(model, neg) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences") {
    Rng rng(101);
    const double h = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        MlpModel model = MlpModel::make();
        model.init_params(rng);
        for (double& v : model.b1()) v = uniform(rng, -0.5, 0.5);
        model.b2() = uniform(rng, -0.5, 0.5);
        std::vector<double> x(4);
        for (double& v : x) v = uniform(rng, -1.0, 1.0);
        const int y = static_cast<int>(bounded(rng, 2));

        const auto grad = mlp_gradient(model, x, y);
        double worst = 0.0;
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            const double saved = model.params[i];
            model.params[i] = saved + h;
            const double up = bce(model, x, y);
            model.params[i] = saved - h;
            const double down = bce(model, x, y);
            model.params[i] = saved;
            worst = std::max(worst, std::abs(grad[i] - (up - down) / (2.0 * h)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("zero output weights zero out the hidden gradient") {
    Rng rng(7);
    MlpModel model = MlpModel::make();
    for (double& v : model.w1()) v = uniform(rng, -1.0, 1.0);
    // w2 stays zero
    const std::vector<double> x = {0.4, -0.2, 0.9, 0.1};
    const auto grad = mlp_gradient(model, x, 1);
    for (int i = 0; i < 24; ++i) CHECK(grad[i] == 0.0); // w1 block
    for (int i = 24; i < 30; ++i) CHECK(grad[i] == 0.0); // b1 block
}

TEST_CASE("symmetric hidden units receive identical gradients") {
    MlpModel model = MlpModel::make();
    for (int i = 0; i < 4; ++i) {
        model.w1()[0 * 4 + i] = 0.3 * (i + 1);
        model.w1()[1 * 4 + i] = 0.3 * (i + 1);
    }
    model.w2()[0] = 0.7;
    model.w2()[1] = 0.7;
    const std::vector<double> x = {0.2, 0.4, -0.3, 0.6};
    const auto grad = mlp_gradient(model, x, 0);
    for (int i = 0; i < 4; ++i) CHECK(grad[0 * 4 + i] == grad[1 * 4 + i]);
    CHECK(grad[24] == grad[25]); // b1
    CHECK(grad[30] == grad[31]); // w2
}

TEST_CASE("loss decreases on a separable two-point toy set") {
    Rng rng(3);
    MlpModel model = MlpModel::make();
    model.init_params(rng);
    const std::vector<double> x0 = {0.0, 0.0, 0.0, 0.0};
    const std::vector<double> x1 = {1.0, 1.0, 1.0, 1.0};

    double previous = bce(model, x0, 0) + bce(model, x1, 1);
    for (int step = 0; step < 10; ++step) {
        const auto g0 = mlp_gradient(model, x0, 0);
        const auto g1 = mlp_gradient(model, x1, 1);
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            model.params[i] -= 0.1 * 0.5 * (g0[i] + g1[i]);
        }
        const double current = bce(model, x0, 0) + bce(model, x1, 1);
        CHECK(current < previous);
        previous = current;
    }
}

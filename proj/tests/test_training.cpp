#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "training.hpp"

using namespace vqremap;

namespace {

VqcModel small_model(Rng& rng, EmbeddingKind kind, RemapKind remap, bool reupload) {
    const auto spec =
        kind == EmbeddingKind::Angle ? EmbeddingSpec::angle(2) : EmbeddingSpec::amplitude(4);
    VqcModel model = VqcModel::make(spec, 2, 2, remap, reupload);
    model.init_params(rng);
    return model;
}

std::vector<double> small_features(Rng& rng, const VqcModel& model) {
    std::vector<double> x(model.embedding.n_features);
    for (double& v : x) {
        v = model.embedding.kind == EmbeddingKind::Angle ? uniform(rng, 0.0, kPi)
                                                         : uniform(rng, 0.05, 1.0);
    }
    return x;
}

// iris-2class-like toy splits for the loop tests
SplitData toy_splits() {
    const RawTable table = iris_two_class_table();
    return make_splits(table, EmbeddingKind::Angle, 0);
}

} // namespace

TEST_CASE("cross entropy examples") {
    const std::vector<double> uniform_probs = {0.5, 0.5};
    CHECK(cross_entropy(uniform_probs, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    const std::vector<double> near_one = {1.0 - 1e-9, 1e-9};
    CHECK(cross_entropy(near_one, 0) == doctest::Approx(1e-9).epsilon(1e-6));

    const std::vector<double> skewed = {0.1, 0.9};
    CHECK(cross_entropy(skewed, 0) == doctest::Approx(std::log(10.0)).epsilon(1e-15));

    CHECK_THROWS_AS(cross_entropy(skewed, 2), Error);
}

TEST_CASE("parameter-shift of a single rotation reproduces -sin") {
    // e(theta) = cos(theta) for RX(theta)|0>; the +-pi/2 shift gives the
    // exact derivative, so the loss 1 - <Z> has gradient sin(theta).
    VqcModel model = VqcModel::make(EmbeddingSpec::angle(1), 1, 1, RemapKind::Identity, false);
    const double x = 0.0;
    for (double theta : {-1.2, -0.4, 0.0, 0.8, 2.5}) {
        std::vector<double> angles = {0.0, 0.0, 0.0};
        angles[1] = theta + kPi / 2.0;
        const double plus = circuit_expectations(model, angles, {&x, 1})[0];
        angles[1] = theta - kPi / 2.0;
        const double minus = circuit_expectations(model, angles, {&x, 1})[0];
        const double shift = (plus - minus) / 2.0;
        CHECK(shift == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    }
}

TEST_CASE("vqc gradient matches finite differences of the full loss") {
    Rng rng(42);
    const double h = 1e-5;
    for (const RemapKind remap :
         {RemapKind::Identity, RemapKind::Tanh, RemapKind::Elu, RemapKind::Sin}) {
        VqcModel model = small_model(rng, EmbeddingKind::Angle, remap, false);
        const auto x = small_features(rng, model);
        const int label = 1;

        const auto grad = vqc_gradient(model, x, label);
        double worst = 0.0;
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            const double saved = model.params[i];
            model.params[i] = saved + h;
            const double up = vqc_loss(model, x, label);
            model.params[i] = saved - h;
            const double down = vqc_loss(model, x, label);
            model.params[i] = saved;
            worst = std::max(worst, std::abs(grad[i] - (up - down) / (2.0 * h)));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("clamp saturation freezes the weight") {
    Rng rng(5);
    VqcModel model = small_model(rng, EmbeddingKind::Angle, RemapKind::Clamp, false);
    model.weights()[3] = 5.0; // far outside [-pi, pi]
    const auto x = small_features(rng, model);
    const auto grad = vqc_gradient(model, x, 0);
    CHECK(grad[3] == 0.0);
}

TEST_CASE("sgd step") {
    std::vector<double> params = {1.0, -2.0};
    const std::vector<double> zero = {0.0, 0.0};
    sgd_step(params, zero, 0.01);
    CHECK(params[0] == 1.0);
    CHECK(params[1] == -2.0);

    const std::vector<double> grad = {2.0, 1.0};
    sgd_step(params, grad, 0.01);
    CHECK(params[0] == doctest::Approx(0.98).epsilon(1e-15));

    std::vector<double> short_params = {1.0};
    CHECK_THROWS_AS(sgd_step(short_params, grad, 0.01), Error);
}

TEST_CASE("one full batch applies the mean gradient") {
    Rng rng(9);
    VqcModel model = small_model(rng, EmbeddingKind::Angle, RemapKind::Tanh, false);

    SplitData splits;
    splits.n_features = 2;
    splits.n_classes = 2;
    splits.train_x = {0.3, 1.1, 2.0, 0.4};
    splits.train_y = {0, 1};
    splits.valid_x = splits.train_x;
    splits.valid_y = splits.train_y;
    splits.test_x = splits.train_x;
    splits.test_y = splits.train_y;

    const auto g0 = vqc_gradient(model, splits.train_row(0), 0);
    const auto g1 = vqc_gradient(model, splits.train_row(1), 1);
    std::vector<double> expected(model.params.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        expected[i] = model.params[i] - 0.01 * 0.5 * (g0[i] + g1[i]);
    }

    TrainingConfig config;
    config.n_epochs = 1;
    config.batch_size = 2;
    config.learning_rate = 0.01;
    Rng train_rng(0);
    train_vqc(model, splits, config, train_rng);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(model.params[i] == expected[i]);
    }
}

TEST_CASE("training is deterministic given the seed") {
    const SplitData splits = toy_splits();
    TrainingConfig config;
    config.n_epochs = 3;

    const auto once = [&] {
        Rng rng(7);
        VqcModel model = VqcModel::make(EmbeddingSpec::angle(4), 2, 2, RemapKind::Tanh, false);
        model.init_params(rng);
        return train_vqc(model, splits, config, rng);
    };
    const TrainRecord a = once();
    const TrainRecord b = once();
    CHECK(a.train_loss == b.train_loss);
    CHECK(a.valid_acc == b.valid_acc);
    CHECK(a.test_acc == b.test_acc);
    CHECK(a.test_correct == b.test_correct);
}

TEST_CASE("clamp and identity share the trajectory while weights stay inside") {
    const SplitData splits = toy_splits();
    TrainingConfig config;
    config.n_epochs = 3;
    config.learning_rate = 1e-3;

    const auto trajectory = [&](RemapKind remap) {
        Rng rng(3);
        VqcModel model = VqcModel::make(EmbeddingSpec::angle(4), 2, 2, remap, false);
        model.init_params(rng);
        const TrainRecord record = train_vqc(model, splits, config, rng);
        REQUIRE(record.weights_in_range);
        return std::pair{model.params, record};
    };
    const auto [params_none, record_none] = trajectory(RemapKind::Identity);
    const auto [params_clamp, record_clamp] = trajectory(RemapKind::Clamp);
    CHECK(params_none == params_clamp);
    CHECK(record_none.train_loss == record_clamp.train_loss);
    CHECK(record_none.valid_loss == record_clamp.valid_loss);
}

TEST_CASE("full-batch loss is non-increasing at small learning rate") {
    const SplitData splits = toy_splits();
    TrainingConfig config;
    config.n_epochs = 5;
    config.learning_rate = 1e-3;
    config.batch_size = static_cast<int>(splits.train_y.size());

    Rng rng(1);
    VqcModel model = VqcModel::make(EmbeddingSpec::angle(4), 2, 2, RemapKind::Tanh, false);
    model.init_params(rng);
    const TrainRecord record = train_vqc(model, splits, config, rng);
    for (std::size_t e = 1; e < record.train_loss.size(); ++e) {
        CHECK(record.train_loss[e] <= record.train_loss[e - 1] + 1e-12);
    }
}

TEST_CASE("empty split is rejected") {
    SplitData splits;
    splits.n_features = 2;
    splits.n_classes = 2;
    TrainingConfig config;
    Rng rng(0);
    VqcModel model = VqcModel::make(EmbeddingSpec::angle(2), 1, 2, RemapKind::Tanh, false);
    CHECK_THROWS_AS(train_vqc(model, splits, config, rng), Error);
}

TEST_CASE("linearly separable iris pair trains to high validation accuracy") {
    // Setosa/Versicolour, angle embedding, 6 layers, tanh, 30 epochs
    const RawTable table = iris_two_class_table();
    int good_seeds = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SplitData splits = make_splits(table, EmbeddingKind::Angle, seed);
        TrainingConfig config;
        config.seed = seed;
        Rng rng(seed);
        VqcModel model = VqcModel::make(EmbeddingSpec::angle(4), 6, 2, RemapKind::Tanh, false);
        model.init_params(rng);
        const TrainRecord record = train_vqc(model, splits, config, rng);
        if (record.valid_acc.back() >= 0.95) ++good_seeds;
    }
    CHECK(good_seeds >= 8);
}

#include "stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace vqremap {

namespace {

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorCode::Config, "metrics-stats", message);
}

double population_std(std::span<const double> values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

// Continued fraction for the incomplete beta (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double accuracy(std::span<const int> true_labels, std::span<const int> predicted_labels) {
    if (true_labels.empty() || true_labels.size() != predicted_labels.size()) {
        config_error("accuracy needs two equal-length nonempty label vectors");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        hits += true_labels[i] == predicted_labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(true_labels.size());
}

PocResult point_of_convergence(std::span<const double> valid_losses, double k) {
    if (valid_losses.size() < 2) {
        config_error("point of convergence needs at least two epochs");
    }
    PocResult result;
    result.k = k;
    result.sigma = population_std(valid_losses);
    result.threshold = k * result.sigma;
    result.epoch = static_cast<int>(valid_losses.size()) - 1;
    for (std::size_t t = 1; t < valid_losses.size(); ++t) {
        if (std::abs(valid_losses[t] - valid_losses[t - 1]) < result.threshold) {
            result.epoch = static_cast<int>(t);
            break;
        }
    }
    return result;
}

double convergence_diff(std::span<const double> baseline_valid_loss,
                        std::span<const double> baseline_valid_acc,
                        std::span<const double> approach_valid_loss,
                        std::span<const double> approach_valid_acc, double k, PocAnchor anchor) {
    if (baseline_valid_loss.size() != baseline_valid_acc.size() ||
        approach_valid_loss.size() != approach_valid_acc.size() ||
        baseline_valid_loss.size() != approach_valid_loss.size()) {
        config_error("convergence_diff requires matched runs with equal epoch counts");
    }
    const int t_base = point_of_convergence(baseline_valid_loss, k).epoch;
    const int t_appr = anchor == PocAnchor::Baseline
                           ? t_base
                           : point_of_convergence(approach_valid_loss, k).epoch;
    return baseline_valid_acc[t_base] - approach_valid_acc[t_appr];
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) config_error("ANOVA needs at least two groups");
    std::size_t total_n = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) config_error("each ANOVA group needs at least two observations");
        total_n += g.size();
        for (double v : g) grand_sum += v;
    }
    const double grand_mean = grand_sum / static_cast<double>(total_n);

    double ss_between = 0.0, ss_within = 0.0;
    for (const auto& g : groups) {
        double mean = 0.0;
        for (double v : g) mean += v;
        mean /= static_cast<double>(g.size());
        ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double v : g) ss_within += (v - mean) * (v - mean);
    }

    AnovaResult result;
    result.df_between = static_cast<int>(groups.size()) - 1;
    result.df_within = static_cast<int>(total_n) - static_cast<int>(groups.size());
    if (ss_within == 0.0) {
        if (ss_between == 0.0) {
            result.f_stat = 0.0;
            result.p_value = 1.0;
        } else {
            result.f_stat = std::numeric_limits<double>::infinity();
            result.p_value = 0.0;
        }
        return result;
    }
    result.f_stat = (ss_between / result.df_between) / (ss_within / result.df_within);
    result.p_value = f_distribution_sf(result.f_stat, result.df_between, result.df_within);
    return result;
}

std::pair<double, double> confidence_interval_95(std::span<const std::uint8_t> correct) {
    if (correct.size() < 2) config_error("confidence interval needs at least two samples");
    double p = 0.0;
    for (auto c : correct) p += c ? 1.0 : 0.0;
    p /= static_cast<double>(correct.size());
    const double half = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(correct.size()));
    return {p, half};
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) config_error("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double f, int d1, int d2) {
    if (d1 < 1 || d2 < 1) config_error("F distribution needs positive degrees of freedom");
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    const double da = static_cast<double>(d1);
    const double db = static_cast<double>(d2);
    // P(F > f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)
    return regularized_incomplete_beta(db / 2.0, da / 2.0, db / (db + da * f));
}

} // namespace vqremap

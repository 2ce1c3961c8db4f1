#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vqremap {

double accuracy(std::span<const int> true_labels, std::span<const int> predicted_labels);

struct PocResult {
    int epoch = 0;      // index into the loss array, first epoch with a predecessor
    double sigma = 0.0; // population std of the whole validation-loss trajectory
    double threshold = 0.0; // k * sigma
    double k = 1.0;
};

// First epoch t >= 1 whose one-epoch absolute loss change falls below
// k * sigma; the final epoch when no epoch qualifies.
PocResult point_of_convergence(std::span<const double> valid_losses, double k);

enum class PocAnchor { Baseline, Self };

// Validation-accuracy difference baseline - approach, evaluated at the
// baseline's point of convergence (or each run's own, behind the Self anchor).
// Negative means the approach is ahead of the baseline.
double convergence_diff(std::span<const double> baseline_valid_loss,
                        std::span<const double> baseline_valid_acc,
                        std::span<const double> approach_valid_loss,
                        std::span<const double> approach_valid_acc, double k,
                        PocAnchor anchor = PocAnchor::Baseline);

struct AnovaResult {
    double f_stat = 0.0;
    int df_between = 0;
    int df_within = 0;
    double p_value = 1.0;
};

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

// Wald interval over pooled 0/1 correctness indicators: (mean, halfwidth).
std::pair<double, double> confidence_interval_95(std::span<const std::uint8_t> correct);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Upper tail of the F distribution: P(F > f) at (d1, d2) degrees of freedom.
double f_distribution_sf(double f, int d1, int d2);

} // namespace vqremap

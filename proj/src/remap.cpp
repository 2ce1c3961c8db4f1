#include "remap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "statevector.hpp"

namespace vqremap {

namespace {

void check_finite(double theta) {
    if (!std::isfinite(theta)) {
        throw Error(ErrorCode::Numeric, "remap", "non-finite weight " + std::to_string(theta));
    }
}

} // namespace

std::string_view remap_name(RemapKind kind) {
    switch (kind) {
    case RemapKind::Identity: return "none";
    case RemapKind::Clamp: return "clamp";
    case RemapKind::Tanh: return "tanh";
    case RemapKind::Arctan: return "arctan";
    case RemapKind::Sigmoid: return "sigmoid";
    case RemapKind::Elu: return "elu";
    case RemapKind::Sin: return "sin";
    }
    throw Error(ErrorCode::Internal, "remap", "unhandled kind");
}

RemapKind remap_from_name(std::string_view name) {
    for (RemapKind kind : kAllRemapKinds) {
        if (remap_name(kind) == name) return kind;
    }
    throw Error(ErrorCode::Usage, "remap",
                "unknown remap name '" + std::string(name) +
                    "' (expected one of none, clamp, tanh, arctan, sigmoid, elu, sin)");
}

std::string approach_label(RemapKind kind) {
    if (kind == RemapKind::Identity) return "VQC";
    return "VQC-" + std::string(remap_name(kind));
}

double remap(RemapKind kind, double theta) {
    check_finite(theta);
    switch (kind) {
    case RemapKind::Identity:
        return theta;
    case RemapKind::Clamp:
        return std::clamp(theta, -kPi, kPi);
    case RemapKind::Tanh:
        return kPi * std::tanh(theta);
    case RemapKind::Arctan:
        return 2.0 * std::atan(2.0 * theta);
    case RemapKind::Sigmoid:
        return 2.0 * kPi / (1.0 + std::exp(-theta)) - kPi;
    case RemapKind::Elu:
        return theta < 0.0 ? kPi * (std::exp(theta) - 1.0) : theta;
    case RemapKind::Sin:
        return kPi * std::sin(theta / 2.0);
    }
    throw Error(ErrorCode::Internal, "remap", "unhandled kind");
}

double remap_derivative(RemapKind kind, double theta) {
    check_finite(theta);
    switch (kind) {
    case RemapKind::Identity:
        return 1.0;
    case RemapKind::Clamp:
        // Closed-interval subgradient: 1 on [-pi, pi] including the boundary,
        // so a weight landing exactly on it is not frozen.
        return std::abs(theta) <= kPi ? 1.0 : 0.0;
    case RemapKind::Tanh: {
        const double t = std::tanh(theta);
        return kPi * (1.0 - t * t);
    }
    case RemapKind::Arctan:
        return 4.0 / (1.0 + 4.0 * theta * theta);
    case RemapKind::Sigmoid: {
        const double s = 1.0 / (1.0 + std::exp(-theta));
        return 2.0 * kPi * s * (1.0 - s);
    }
    case RemapKind::Elu:
        return theta < 0.0 ? kPi * std::exp(theta) : 1.0;
    case RemapKind::Sin:
        return kPi / 2.0 * std::cos(theta / 2.0);
    }
    throw Error(ErrorCode::Internal, "remap", "unhandled kind");
}

} // namespace vqremap

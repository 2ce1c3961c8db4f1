#pragma once

#include <array>
#include <string_view>

namespace vqremap {

// Weight re-mapping functions phi applied to every trainable rotation angle
// during the forward pass only; raw weights are what the optimizer updates.
// All kinds except Identity and the upper branch of Elu map into [-pi, pi].
enum class RemapKind { Identity, Clamp, Tanh, Arctan, Sigmoid, Elu, Sin };

inline constexpr std::array<RemapKind, 7> kAllRemapKinds = {
    RemapKind::Identity, RemapKind::Clamp,   RemapKind::Tanh, RemapKind::Arctan,
    RemapKind::Sigmoid,  RemapKind::Elu,     RemapKind::Sin,
};

// Canonical names used by the CLI and output files: Identity is "none".
std::string_view remap_name(RemapKind kind);
RemapKind remap_from_name(std::string_view name);

// Approach label used in report tables: "VQC" for none, "VQC-tanh", ...
std::string approach_label(RemapKind kind);

double remap(RemapKind kind, double theta);
double remap_derivative(RemapKind kind, double theta);

} // namespace vqremap

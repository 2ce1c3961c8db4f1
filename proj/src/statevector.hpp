#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vqremap {

inline constexpr int kMaxQubits = 16;
inline constexpr double kPi = 3.14159265358979323846;

enum class GateKind { RX, RY, RZ, CNOT };

struct Gate {
    GateKind kind;
    double angle = 0.0; // radians; ignored for CNOT
    int target = 0;
    int control = -1; // CNOT only

    static Gate rx(int target, double angle) { return {GateKind::RX, angle, target, -1}; }
    static Gate ry(int target, double angle) { return {GateKind::RY, angle, target, -1}; }
    static Gate rz(int target, double angle) { return {GateKind::RZ, angle, target, -1}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, 0.0, target, control}; }

    // Same rotation with negated angle; CNOT is self-inverse.
    Gate inverse() const { return {kind, -angle, target, control}; }
};

// Dense amplitude vector of an n-qubit register. Qubit 0 is the most
// significant bit of the basis-state index, matching circuit diagrams read
// top to bottom; embedding and measurement rely on this ordering.
class StateVector {
public:
    explicit StateVector(int n_qubits); // |0...0>

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }

    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::size_t basis_index) const { return amps_[basis_index]; }
    void set_amplitude(std::size_t basis_index, std::complex<double> value) { amps_[basis_index] = value; }

    void apply(const Gate& gate);
    void apply_rx(int qubit, double angle);
    void apply_ry(int qubit, double angle);
    void apply_rz(int qubit, double angle);
    void apply_cnot(int control, int target);

    // <Z_q> = sum_b |amp_b|^2 * (+1 if the qubit's bit is 0, else -1).
    double expectation_z(int qubit) const;

    double norm_squared() const;

private:
    std::size_t qubit_mask(int qubit) const;
    void check_qubit(int qubit) const;

    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

StateVector zero_state(int n_qubits);

} // namespace vqremap

#include "statevector.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace vqremap {

namespace {

[[noreturn]] void index_error(const std::string& message) {
    throw Error(ErrorCode::Index, "statevector", message);
}

} // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorCode::Config, "statevector",
                    "n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

std::size_t StateVector::qubit_mask(int qubit) const {
    return std::size_t{1} << (n_qubits_ - 1 - qubit);
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        index_error("qubit index " + std::to_string(qubit) + " out of range for " +
                    std::to_string(n_qubits_) + " qubits");
    }
}

void StateVector::apply(const Gate& gate) {
    switch (gate.kind) {
    case GateKind::RX: apply_rx(gate.target, gate.angle); break;
    case GateKind::RY: apply_ry(gate.target, gate.angle); break;
    case GateKind::RZ: apply_rz(gate.target, gate.angle); break;
    case GateKind::CNOT: apply_cnot(gate.control, gate.target); break;
    }
}

// RX(t) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]]
void StateVector::apply_rx(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t step = qubit_mask(qubit);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            std::complex<double>& a0 = amps_[base + off];
            std::complex<double>& a1 = amps_[base + off + step];
            const double r0 = a0.real(), i0 = a0.imag();
            const double r1 = a1.real(), i1 = a1.imag();
            a0 = {c * r0 + s * i1, c * i0 - s * r1};
            a1 = {s * i0 + c * r1, -s * r0 + c * i1};
        }
    }
}

// RY(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
void StateVector::apply_ry(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t step = qubit_mask(qubit);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            std::complex<double>& a0 = amps_[base + off];
            std::complex<double>& a1 = amps_[base + off + step];
            const double r0 = a0.real(), i0 = a0.imag();
            const double r1 = a1.real(), i1 = a1.imag();
            a0 = {c * r0 - s * r1, c * i0 - s * i1};
            a1 = {s * r0 + c * r1, s * i0 + c * i1};
        }
    }
}

// RZ(t) = diag(e^{-it/2}, e^{+it/2})
void StateVector::apply_rz(int qubit, double angle) {
    check_qubit(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t step = qubit_mask(qubit);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t off = 0; off < step; ++off) {
            std::complex<double>& a0 = amps_[base + off];
            std::complex<double>& a1 = amps_[base + off + step];
            const double r0 = a0.real(), i0 = a0.imag();
            const double r1 = a1.real(), i1 = a1.imag();
            a0 = {c * r0 + s * i0, c * i0 - s * r0};
            a1 = {c * r1 - s * i1, c * i1 + s * r1};
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        index_error("CNOT control and target must differ, both are " + std::to_string(target));
    }
    const std::size_t cmask = qubit_mask(control);
    const std::size_t tmask = qubit_mask(target);
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

double StateVector::expectation_z(int qubit) const {
    check_qubit(qubit);
    const std::size_t mask = qubit_mask(qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double p = std::norm(amps_[i]);
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

} // namespace vqremap

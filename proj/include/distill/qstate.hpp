#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "distill/linalg.hpp"

namespace distill {

// Register convention, fixed project-wide: the four qubits are ordered
// (A0, B0, A1, B1) with A0 the most significant bit of the computational
// basis index, i.e. index = 8*a0 + 4*b0 + 2*a1 + 1*b1. (A0,B0) is the
// preserved pair, (A1,B1) the sacrificial pair.
inline constexpr int kPosA0 = 0;
inline constexpr int kPosB0 = 1;
inline constexpr int kPosA1 = 2;
inline constexpr int kPosB1 = 3;

enum class GateKind { RX, RY, RZ, RZY, CNOT };

const char* gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// A gate bound to register positions. RX/RY/RZ take one target; RZY takes
/// two, ordered (Z operand, Y operand); CNOT takes (control, target).
/// The angle is in radians and unused for CNOT.
struct GatePlacement {
    GateKind kind;
    std::vector<int> targets;
    double angle = 0.0;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GatePlacement> gates;
};

/// Density matrix over 1, 2 or 4 qubits. The constructor enforces
/// Hermiticity and unit trace within kStateTol; positive semidefiniteness
/// is probed separately (see psd_probe) since it needs sampling.
class DensityMatrix {
public:
    DensityMatrix(int num_qubits, ComplexMatrix mat);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }

private:
    int num_qubits_;
    ComplexMatrix mat_;
};

/// |phi+><phi+| with phi+ = (|00> + |11>)/sqrt(2).
DensityMatrix bell_phi_plus();

/// F |phi+><phi+| + (1-F) |00><00| for F in [0,1].
DensityMatrix s_state(double input_fidelity);

/// Local matrix of a gate: 2x2 for single-qubit rotations, 4x4 for RZY and
/// CNOT. Rotations use closed forms, e.g. RX(t) = cos(t/2) I - i sin(t/2) X
/// and RZY(t) = cos(t/2) I4 - i sin(t/2) (Z kron Y), exact because
/// (Z kron Y)^2 = I4.
ComplexMatrix gate_matrix(const GatePlacement& g);

/// Unitary on the full register acting as gate_matrix(g) on the listed
/// positions and as identity elsewhere. Non-adjacent targets are handled by
/// basis-index remapping rather than SWAP insertion.
ComplexMatrix embed_gate(const GatePlacement& g, int num_qubits);

/// Ordered product of the embedded gates; later gates multiply on the left.
ComplexMatrix circuit_unitary(const Circuit& c);

/// U rho U^dagger. U must be unitary within kStateTol.
DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u);

/// Probability below which a measurement outcome is treated as absent and
/// its conditional state left undefined.
inline constexpr double kOutcomeProbFloor = 1e-12;

struct MeasuredOutcome {
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // absent when probability <= floor
};

/// Outcomes of measuring the sacrificial pair (A1,B1) in the computational
/// basis, indexed by 2*x + y with x the A1 bit and y the B1 bit.
using MeasurementOutcomes = std::array<MeasuredOutcome, 4>;

MeasurementOutcomes measure_sacrificial(const DensityMatrix& rho4);

/// Reduced state of the preserved pair (A0,B0); equals the probability-
/// weighted average of the conditional post-measurement states.
DensityMatrix partial_trace_sacrificial(const DensityMatrix& rho4);

/// <phi+| rho |phi+> for a two-qubit state.
double fidelity_to_bell(const DensityMatrix& rho2);

/// Minimum of real(v^dagger rho v) over num_probes random unit vectors drawn
/// from the given seed. Values >= -kStateTol indicate the PSD invariant.
double psd_probe(const DensityMatrix& rho, int num_probes, unsigned seed);

}  // namespace distill

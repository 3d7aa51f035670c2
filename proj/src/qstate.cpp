#include "distill/qstate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace distill {

namespace {

// Bit of basis index `idx` at register position `pos`, MSB-first.
inline int bit_at(std::size_t idx, int pos, int num_qubits) {
    return static_cast<int>((idx >> (num_qubits - 1 - pos)) & 1u);
}

ComplexMatrix pauli_x() {
    return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix(2, 2, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
}

// cos(t/2) I - i sin(t/2) G, exact whenever G^2 = I.
ComplexMatrix rotation(const ComplexMatrix& generator, double angle) {
    const Complex minus_i_sin{0.0, -std::sin(angle / 2.0)};
    return add(scale(ComplexMatrix::identity(generator.rows()), std::cos(angle / 2.0)),
               scale(generator, minus_i_sin));
}

void check_placement(const GatePlacement& g, int num_qubits) {
    const std::size_t want = (g.kind == GateKind::RZY || g.kind == GateKind::CNOT) ? 2 : 1;
    if (g.targets.size() != want) {
        throw std::invalid_argument("gate placement: wrong number of targets");
    }
    for (int t : g.targets) {
        if (t < 0 || t >= num_qubits) {
            throw std::invalid_argument("gate placement: target outside register");
        }
    }
    if (want == 2 && g.targets[0] == g.targets[1]) {
        throw std::invalid_argument("gate placement: duplicate target");
    }
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::RZY: return "RZY";
        case GateKind::CNOT: return "CNOT";
    }
    throw std::invalid_argument("gate_kind_name: unknown kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "RZY") return GateKind::RZY;
    if (name == "CNOT") return GateKind::CNOT;
    throw std::invalid_argument("unknown gate kind: " + name);
}

DensityMatrix::DensityMatrix(int num_qubits, ComplexMatrix mat)
    : num_qubits_(num_qubits), mat_(std::move(mat)) {
    if (num_qubits != 1 && num_qubits != 2 && num_qubits != 4) {
        throw std::invalid_argument("DensityMatrix: unsupported register size");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: matrix does not match register size");
    }
    if (!mat_.all_finite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (!is_hermitian(mat_, kStateTol)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(trace(mat_) - Complex{1.0, 0.0}) > kStateTol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
}

DensityMatrix bell_phi_plus() {
    ComplexMatrix m(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix(2, std::move(m));
}

DensityMatrix s_state(double input_fidelity) {
    if (!(input_fidelity >= 0.0 && input_fidelity <= 1.0)) {
        throw std::domain_error("s_state: input fidelity must lie in [0,1]");
    }
    ComplexMatrix m(4, 4);
    m(0, 0) = 1.0 - input_fidelity / 2.0;
    m(0, 3) = m(3, 0) = m(3, 3) = input_fidelity / 2.0;
    return DensityMatrix(2, std::move(m));
}

ComplexMatrix gate_matrix(const GatePlacement& g) {
    switch (g.kind) {
        case GateKind::RX: return rotation(pauli_x(), g.angle);
        case GateKind::RY: return rotation(pauli_y(), g.angle);
        case GateKind::RZ: return rotation(pauli_z(), g.angle);
        case GateKind::RZY: return rotation(kron(pauli_z(), pauli_y()), g.angle);
        case GateKind::CNOT:
            return ComplexMatrix(4, 4,
                                 {1, 0, 0, 0,  //
                                  0, 1, 0, 0,  //
                                  0, 0, 0, 1,  //
                                  0, 0, 1, 0});
    }
    throw std::invalid_argument("gate_matrix: unknown kind");
}

ComplexMatrix embed_gate(const GatePlacement& g, int num_qubits) {
    check_placement(g, num_qubits);
    const ComplexMatrix local = gate_matrix(g);
    const std::size_t dim = std::size_t{1} << num_qubits;
    ComplexMatrix out(dim, dim);

    // Index-permutation embedding: an entry (i,j) is local[gi,gj] when i and
    // j agree on every non-target bit, zero otherwise.
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t gi = 0;
        for (int t : g.targets) gi = gi * 2 + bit_at(i, t, num_qubits);
        for (std::size_t gj = 0; gj < local.cols(); ++gj) {
            const Complex v = local(gi, gj);
            if (v == Complex{0.0, 0.0}) continue;
            // Rebuild j from i by substituting the target bits with gj.
            std::size_t j = i;
            std::size_t rem = gj;
            for (auto it = g.targets.rbegin(); it != g.targets.rend(); ++it) {
                const std::size_t mask = std::size_t{1} << (num_qubits - 1 - *it);
                j = (j & ~mask) | ((rem & 1u) ? mask : 0u);
                rem >>= 1;
            }
            out(i, j) = v;
        }
    }
    return out;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
    if (c.num_qubits <= 0 || c.num_qubits > 4) {
        throw std::invalid_argument("circuit_unitary: unsupported register size");
    }
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << c.num_qubits);
    for (const GatePlacement& g : c.gates) {
        u = matmul(embed_gate(g, c.num_qubits), u);
    }
    return u;
}

DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u) {
    if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
        throw std::invalid_argument("evolve: dimension mismatch");
    }
    if (!is_unitary(u, kStateTol)) {
        throw std::invalid_argument("evolve: operator is not unitary");
    }
    return DensityMatrix(rho.num_qubits(), matmul(matmul(u, rho.mat()), dagger(u)));
}

MeasurementOutcomes measure_sacrificial(const DensityMatrix& rho4) {
    if (rho4.num_qubits() != 4) {
        throw std::invalid_argument("measure_sacrificial: expected a 4-qubit state");
    }
    const ComplexMatrix& m = rho4.mat();
    MeasurementOutcomes outcomes;
    for (int o = 0; o < 4; ++o) {
        // Basis indices with the sacrificial bits fixed to (x,y) = o.
        ComplexMatrix cond(4, 4);
        double prob = 0.0;
        for (int k = 0; k < 4; ++k) {
            for (int l = 0; l < 4; ++l) {
                cond(k, l) = m(static_cast<std::size_t>(4 * k + o),
                               static_cast<std::size_t>(4 * l + o));
            }
            prob += cond(k, k).real();
        }
        outcomes[o].probability = prob;
        if (prob > kOutcomeProbFloor) {
            outcomes[o].state = DensityMatrix(2, scale(cond, 1.0 / prob));
        }
    }
    return outcomes;
}

DensityMatrix partial_trace_sacrificial(const DensityMatrix& rho4) {
    if (rho4.num_qubits() != 4) {
        throw std::invalid_argument("partial_trace_sacrificial: expected a 4-qubit state");
    }
    const ComplexMatrix& m = rho4.mat();
    ComplexMatrix out(4, 4);
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            Complex sum{0.0, 0.0};
            for (int o = 0; o < 4; ++o) {
                sum += m(static_cast<std::size_t>(4 * k + o),
                         static_cast<std::size_t>(4 * l + o));
            }
            out(k, l) = sum;
        }
    }
    return DensityMatrix(2, std::move(out));
}

double fidelity_to_bell(const DensityMatrix& rho2) {
    if (rho2.num_qubits() != 2) {
        throw std::invalid_argument("fidelity_to_bell: expected a 2-qubit state");
    }
    const ComplexMatrix& m = rho2.mat();
    const Complex overlap = m(0, 0) + m(0, 3) + m(3, 0) + m(3, 3);
    if (std::abs(overlap.imag()) > 1e-10) {
        throw std::invalid_argument("fidelity_to_bell: overlap has a large imaginary part");
    }
    return overlap.real() / 2.0;
}

double psd_probe(const DensityMatrix& rho, int num_probes, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dim = rho.dim();
    double worst = 1.0;
    std::vector<Complex> v(dim);
    for (int probe = 0; probe < num_probes; ++probe) {
        double norm_sq = 0.0;
        for (auto& z : v) {
            z = Complex{gauss(rng), gauss(rng)};
            norm_sq += std::norm(z);
        }
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        Complex quad{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                quad += std::conj(v[i]) * rho.mat()(i, j) * v[j];
            }
        }
        worst = std::min(worst, quad.real() * inv_norm * inv_norm);
    }
    return worst;
}

}  // namespace distill

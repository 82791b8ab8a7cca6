#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qpipe/errors.hpp"
#include "qpipe/rng.hpp"

namespace qpipe {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 32;
inline constexpr double kNormTolerance = 1e-9;

// Outcome counts from repeated measurement of a fixed qubit list. Outcomes
// are packed into integers with measured_qubits[0] as the most significant
// bit, matching the reading order of the corresponding bitstring.
struct MeasurementCounts {
    std::vector<int> measured_qubits;
    std::vector<std::uint64_t> counts;  // dense, indexed by packed outcome
    std::uint64_t shots = 0;

    std::uint64_t total() const;
    std::string bitstring(std::uint64_t outcome) const;
    std::map<std::string, std::uint64_t> to_map() const;  // nonzero outcomes
};

// Dense complex statevector over n qubits. Qubit 0 is the most significant
// bit of the basis-state index, i.e. the top wire of a circuit diagram.
class QuantumState {
  public:
    // |0...0> on num_qubits qubits; 1 <= num_qubits <= kMaxQubits.
    static QuantumState zero(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    Complex amplitude(std::uint64_t basis_state) const { return amps_.at(basis_state); }
    double norm_squared() const;

    // Writes `target` onto the contiguous qubit range [first, first+count).
    // The addressed qubits must still be |0...0> and unentangled from the
    // rest, which holds by construction when initializations precede gates.
    void initialize_register(int first, int count, std::span<const Complex> target);
    void initialize_register(int first, int count, std::span<const double> target);

    void h(int qubit);
    void x(int qubit);
    // Multi-controlled X firing on basis states whose control qubits match
    // `pattern` bit-for-bit.
    void mcx(std::span<const int> controls, std::span<const int> pattern, int target);
    void ch(int control, int target);
    void fredkin(int control, int a, int b);

    // Born-rule marginal over the listed qubits; the result is indexed by
    // packed outcome with qubits[0] as the most significant bit.
    std::vector<double> marginals(std::span<const int> qubits) const;

    // Draws `shots` i.i.d. samples from marginals(qubits).
    MeasurementCounts sample(std::span<const int> qubits, std::uint64_t shots, RngStream& rng) const;

  private:
    explicit QuantumState(int num_qubits);

    std::uint64_t qubit_mask(int qubit) const {
        return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
    }
    void check_qubit(int qubit, const char* what) const;

    int num_qubits_;
    std::vector<Complex> amps_;
};

// |<u|v>|^2 for two unit vectors of equal length.
double fidelity(std::span<const Complex> u, std::span<const Complex> v);
double fidelity(std::span<const double> u, std::span<const double> v);

// H - controlled-SWAP(s) - H between two registers of `reg_size` qubits
// starting at reg_a and reg_b, controlled by `ancilla`. Measuring the ancilla
// afterwards gives P(0) = (1 + |<psi|phi>|^2) / 2.
void apply_swap_test(QuantumState& state, int ancilla, int reg_a, int reg_b, int reg_size);

// Probability map view used by tests and bindings.
std::map<std::string, double> marginals_as_map(const QuantumState& state, std::span<const int> qubits);

// Smallest m with 2^m >= n (n >= 1); the register width needed to index n slots.
int qubits_for(std::uint64_t n);

}  // namespace qpipe

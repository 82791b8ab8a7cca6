#include "qpipe/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qpipe {

namespace {

// Enumerates all basis indices whose bits at `fixed_mask` equal `fixed_value`
// and calls fn(index). The masked increment walks the free bits directly, so
// a gate with c constrained qubits costs O(2^(n-c)) with O(1) per step.
template <typename Fn>
void for_each_with_bits(int num_qubits, std::uint64_t fixed_mask, std::uint64_t fixed_value, Fn&& fn) {
    const std::uint64_t dim_mask = (std::uint64_t{1} << num_qubits) - 1;
    const std::uint64_t free_mask = dim_mask & ~fixed_mask;
    std::uint64_t j = 0;
    while (true) {
        fn(j | fixed_value);
        if (j == free_mask) {
            break;
        }
        j = ((j | fixed_mask) + 1) & free_mask;
    }
}

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

}  // namespace

std::uint64_t MeasurementCounts::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : counts) {
        t += c;
    }
    return t;
}

std::string MeasurementCounts::bitstring(std::uint64_t outcome) const {
    const std::size_t m = measured_qubits.size();
    std::string s(m, '0');
    for (std::size_t j = 0; j < m; ++j) {
        if (outcome & (std::uint64_t{1} << (m - 1 - j))) {
            s[j] = '1';
        }
    }
    return s;
}

std::map<std::string, std::uint64_t> MeasurementCounts::to_map() const {
    std::map<std::string, std::uint64_t> out;
    for (std::uint64_t o = 0; o < counts.size(); ++o) {
        if (counts[o] != 0) {
            out[bitstring(o)] = counts[o];
        }
    }
    return out;
}

QuantumState::QuantumState(int num_qubits) : num_qubits_(num_qubits), amps_(std::uint64_t{1} << num_qubits) {}

QuantumState QuantumState::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    QuantumState s(num_qubits);
    s.amps_[0] = 1.0;
    return s;
}

double QuantumState::norm_squared() const {
    double n2 = 0.0;
    for (const Complex& a : amps_) {
        n2 += std::norm(a);
    }
    return n2;
}

void QuantumState::check_qubit(int qubit, const char* what) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw IndexError(std::string(what) + " qubit " + std::to_string(qubit) + " out of range for " +
                         std::to_string(num_qubits_) + "-qubit state");
    }
}

void QuantumState::initialize_register(int first, int count, std::span<const Complex> target) {
    if (count < 1 || first < 0 || first + count > num_qubits_) {
        throw IndexError("register [" + std::to_string(first) + ", " + std::to_string(first + count) +
                         ") out of range");
    }
    if (target.size() != (std::uint64_t{1} << count)) {
        throw DimensionError("register of " + std::to_string(count) + " qubits needs " +
                             std::to_string(std::uint64_t{1} << count) + " amplitudes, got " +
                             std::to_string(target.size()));
    }
    double n2 = 0.0;
    for (const Complex& a : target) {
        n2 += std::norm(a);
    }
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw NormalizationError("initialization amplitudes have squared norm " + std::to_string(n2));
    }

    // shift of the register's least significant qubit within the basis index
    const int shift = num_qubits_ - (first + count);
    const std::uint64_t reg_mask = ((std::uint64_t{1} << count) - 1) << shift;

    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        if ((b & reg_mask) != 0 && std::norm(amps_[b]) > 0.0) {
            throw InitializationOrderError("register qubits are not in the zero state");
        }
    }

    // The support lives entirely on register-zero indices, whose fan-out
    // targets are disjoint, so the expansion can run in place.
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        if ((b & reg_mask) != 0) {
            continue;
        }
        const Complex c = amps_[b];
        if (c == Complex{}) {
            continue;
        }
        for (std::uint64_t j = 1; j < target.size(); ++j) {
            amps_[b | (j << shift)] = c * target[j];
        }
        amps_[b] = c * target[0];
    }
}

void QuantumState::initialize_register(int first, int count, std::span<const double> target) {
    std::vector<Complex> c(target.begin(), target.end());
    initialize_register(first, count, std::span<const Complex>(c));
}

void QuantumState::h(int qubit) {
    check_qubit(qubit, "hadamard");
    const std::uint64_t m = qubit_mask(qubit);
    for_each_with_bits(num_qubits_, m, 0, [&](std::uint64_t i0) {
        const std::uint64_t i1 = i0 | m;
        const Complex a = amps_[i0];
        const Complex b = amps_[i1];
        amps_[i0] = (a + b) * kInvSqrt2;
        amps_[i1] = (a - b) * kInvSqrt2;
    });
}

void QuantumState::x(int qubit) {
    check_qubit(qubit, "x");
    const std::uint64_t m = qubit_mask(qubit);
    for_each_with_bits(num_qubits_, m, 0, [&](std::uint64_t i0) { std::swap(amps_[i0], amps_[i0 | m]); });
}

void QuantumState::mcx(std::span<const int> controls, std::span<const int> pattern, int target) {
    if (pattern.size() != controls.size()) {
        throw DimensionError("control pattern length " + std::to_string(pattern.size()) +
                             " does not match control count " + std::to_string(controls.size()));
    }
    check_qubit(target, "mcx target");
    std::uint64_t fixed_mask = qubit_mask(target);
    std::uint64_t fixed_value = 0;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        check_qubit(controls[i], "mcx control");
        const std::uint64_t m = qubit_mask(controls[i]);
        if ((fixed_mask & m) != 0) {
            throw IndexError("mcx qubits must be distinct");
        }
        fixed_mask |= m;
        if (pattern[i] != 0) {
            fixed_value |= m;
        }
    }
    const std::uint64_t tm = qubit_mask(target);
    for_each_with_bits(num_qubits_, fixed_mask, fixed_value, [&](std::uint64_t i0) {
        std::swap(amps_[i0], amps_[i0 | tm]);
    });
}

void QuantumState::ch(int control, int target) {
    check_qubit(control, "ch control");
    check_qubit(target, "ch target");
    if (control == target) {
        throw IndexError("ch qubits must be distinct");
    }
    const std::uint64_t cm = qubit_mask(control);
    const std::uint64_t tm = qubit_mask(target);
    for_each_with_bits(num_qubits_, cm | tm, cm, [&](std::uint64_t i0) {
        const std::uint64_t i1 = i0 | tm;
        const Complex a = amps_[i0];
        const Complex b = amps_[i1];
        amps_[i0] = (a + b) * kInvSqrt2;
        amps_[i1] = (a - b) * kInvSqrt2;
    });
}

void QuantumState::fredkin(int control, int a, int b) {
    check_qubit(control, "fredkin control");
    check_qubit(a, "fredkin");
    check_qubit(b, "fredkin");
    if (control == a || control == b || a == b) {
        throw IndexError("fredkin qubits must be distinct");
    }
    const std::uint64_t cm = qubit_mask(control);
    const std::uint64_t am = qubit_mask(a);
    const std::uint64_t bm = qubit_mask(b);
    // control = 1, a = 1, b = 0 enumerates each swapped pair once
    for_each_with_bits(num_qubits_, cm | am | bm, cm | am, [&](std::uint64_t i) {
        std::swap(amps_[i], amps_[(i ^ am) | bm]);
    });
}

std::vector<double> QuantumState::marginals(std::span<const int> qubits) const {
    std::uint64_t seen = 0;
    for (int q : qubits) {
        check_qubit(q, "marginal");
        const std::uint64_t m = qubit_mask(q);
        if (seen & m) {
            throw IndexError("marginal qubits must be distinct");
        }
        seen |= m;
    }
    const std::size_t m = qubits.size();
    std::vector<double> probs(std::size_t{1} << m, 0.0);
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        const double p = std::norm(amps_[b]);
        if (p == 0.0) {
            continue;
        }
        std::uint64_t key = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (b & qubit_mask(qubits[j])) {
                key |= std::uint64_t{1} << (m - 1 - j);
            }
        }
        probs[key] += p;
    }
    return probs;
}

MeasurementCounts QuantumState::sample(std::span<const int> qubits, std::uint64_t shots, RngStream& rng) const {
    if (shots < 1) {
        throw ParameterError("shots must be >= 1");
    }
    const std::vector<double> probs = marginals(qubits);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    MeasurementCounts mc;
    mc.measured_qubits.assign(qubits.begin(), qubits.end());
    mc.counts.assign(probs.size(), 0);
    mc.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t o = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), probs.size() - 1);
        ++mc.counts[o];
    }
    return mc;
}

double fidelity(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw DimensionError("fidelity operands differ in length: " + std::to_string(u.size()) + " vs " +
                             std::to_string(v.size()));
    }
    double nu = 0.0;
    double nv = 0.0;
    Complex inner{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        nu += std::norm(u[i]);
        nv += std::norm(v[i]);
        inner += std::conj(u[i]) * v[i];
    }
    if (std::abs(nu - 1.0) > kNormTolerance || std::abs(nv - 1.0) > kNormTolerance) {
        throw NormalizationError("fidelity operands must be unit vectors");
    }
    return std::norm(inner);
}

double fidelity(std::span<const double> u, std::span<const double> v) {
    std::vector<Complex> cu(u.begin(), u.end());
    std::vector<Complex> cv(v.begin(), v.end());
    return fidelity(std::span<const Complex>(cu), std::span<const Complex>(cv));
}

void apply_swap_test(QuantumState& state, int ancilla, int reg_a, int reg_b, int reg_size) {
    state.h(ancilla);
    for (int j = 0; j < reg_size; ++j) {
        state.fredkin(ancilla, reg_a + j, reg_b + j);
    }
    state.h(ancilla);
}

std::map<std::string, double> marginals_as_map(const QuantumState& state, std::span<const int> qubits) {
    const std::vector<double> probs = state.marginals(qubits);
    const std::size_t m = qubits.size();
    std::map<std::string, double> out;
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        if (probs[o] == 0.0) {
            continue;
        }
        std::string s(m, '0');
        for (std::size_t j = 0; j < m; ++j) {
            if (o & (std::uint64_t{1} << (m - 1 - j))) {
                s[j] = '1';
            }
        }
        out[s] = probs[o];
    }
    return out;
}

int qubits_for(std::uint64_t n) {
    int m = 0;
    while ((std::uint64_t{1} << m) < n) {
        ++m;
    }
    return m;
}

}  // namespace qpipe

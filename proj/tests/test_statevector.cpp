#include <doctest.h>

#include <cmath>
#include <vector>

#include "qpipe/statevector.hpp"

using namespace qpipe;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

QuantumState random_state(int n, RngStream& rng) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<Complex> amps(dim);
    double n2 = 0.0;
    for (auto& a : amps) {
        a = Complex(rng.gaussian(), rng.gaussian());
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps) {
        a *= inv;
    }
    QuantumState s = QuantumState::zero(n);
    s.initialize_register(0, n, std::span<const Complex>(amps));
    return s;
}

double max_amp_diff(const QuantumState& a, const QuantumState& b) {
    double m = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amplitude(i) - b.amplitude(i)));
    }
    return m;
}

}  // namespace

TEST_CASE("zero_state basics") {
    const QuantumState s1 = QuantumState::zero(1);
    CHECK(s1.dim() == 2);
    CHECK(s1.amplitude(0) == Complex(1.0, 0.0));
    CHECK(s1.amplitude(1) == Complex(0.0, 0.0));

    const QuantumState s2 = QuantumState::zero(2);
    CHECK(s2.dim() == 4);
    CHECK(s2.amplitude(0) == Complex(1.0, 0.0));
    for (std::uint64_t i = 1; i < 4; ++i) {
        CHECK(s2.amplitude(i) == Complex(0.0, 0.0));
    }

    CHECK_THROWS_AS(QuantumState::zero(33), CapacityError);
    CHECK_THROWS_AS(QuantumState::zero(0), CapacityError);
}

TEST_CASE("hadamard on basis states") {
    QuantumState s = QuantumState::zero(1);
    s.h(0);
    CHECK(std::abs(s.amplitude(0) - Complex(kInvSqrt2)) < 1e-15);
    CHECK(std::abs(s.amplitude(1) - Complex(kInvSqrt2)) < 1e-15);

    QuantumState t = QuantumState::zero(1);
    t.x(0);
    t.h(0);
    CHECK(std::abs(t.amplitude(0) - Complex(kInvSqrt2)) < 1e-15);
    CHECK(std::abs(t.amplitude(1) + Complex(kInvSqrt2)) < 1e-15);

    CHECK_THROWS_AS(s.h(1), IndexError);
}

TEST_CASE("gate involutions on random states") {
    RngStream rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        QuantumState s = random_state(4, rng);
        const QuantumState original = s;

        s.h(2);
        s.h(2);
        CHECK(max_amp_diff(s, original) < 1e-12);

        s.x(1);
        s.x(1);
        CHECK(max_amp_diff(s, original) < 1e-12);

        s.fredkin(0, 1, 3);
        s.fredkin(0, 1, 3);
        CHECK(max_amp_diff(s, original) < 1e-12);

        const std::vector<int> c{0};
        const std::vector<int> p{1};
        s.mcx(c, p, 2);
        s.mcx(c, p, 2);
        CHECK(max_amp_diff(s, original) < 1e-12);
    }
}

TEST_CASE("norm preserved by every gate") {
    RngStream rng(12);
    QuantumState s = random_state(5, rng);
    s.h(0);
    s.x(3);
    s.ch(1, 4);
    s.fredkin(0, 2, 3);
    const std::vector<int> c{0, 1};
    const std::vector<int> p{1, 0};
    s.mcx(c, p, 4);
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("controlled gates fire only on matching patterns") {
    // |10> with control q0=1 flips target q1
    QuantumState s = QuantumState::zero(2);
    s.x(0);
    const std::vector<int> c{0};
    const std::vector<int> p{1};
    s.mcx(c, p, 1);
    CHECK(std::abs(s.amplitude(0b11) - Complex(1.0)) < 1e-15);

    // control 0, pattern wants 1: |01> untouched
    QuantumState t = QuantumState::zero(2);
    t.x(1);
    t.mcx(c, p, 1);
    CHECK(std::abs(t.amplitude(0b01) - Complex(1.0)) < 1e-15);

    // pattern on zero: fires when control is 0
    QuantumState u = QuantumState::zero(2);
    const std::vector<int> p0{0};
    u.mcx(c, p0, 1);
    CHECK(std::abs(u.amplitude(0b01) - Complex(1.0)) < 1e-15);

    CHECK_THROWS_AS(s.mcx(c, p, 0), IndexError);  // target duplicates control
    const std::vector<int> short_p{};
    CHECK_THROWS_AS(s.mcx(c, short_p, 1), DimensionError);
}

TEST_CASE("controlled hadamard acts on the control-1 branch only") {
    QuantumState s = QuantumState::zero(2);
    s.x(0);  // |10>
    s.ch(0, 1);
    CHECK(std::abs(s.amplitude(0b10) - Complex(kInvSqrt2)) < 1e-15);
    CHECK(std::abs(s.amplitude(0b11) - Complex(kInvSqrt2)) < 1e-15);

    QuantumState t = QuantumState::zero(2);  // control 0: identity
    t.ch(0, 1);
    CHECK(std::abs(t.amplitude(0b00) - Complex(1.0)) < 1e-15);
}

TEST_CASE("fredkin swaps the targets iff control is set") {
    // |101>: control=1 -> |110>
    QuantumState s = QuantumState::zero(3);
    s.x(0);
    s.x(2);
    s.fredkin(0, 1, 2);
    CHECK(std::abs(s.amplitude(0b110) - Complex(1.0)) < 1e-15);

    // |001>: control=0 -> unchanged
    QuantumState t = QuantumState::zero(3);
    t.x(2);
    t.fredkin(0, 1, 2);
    CHECK(std::abs(t.amplitude(0b001) - Complex(1.0)) < 1e-15);

    CHECK_THROWS_AS(s.fredkin(0, 0, 1), IndexError);
}

TEST_CASE("initialize_register places amplitudes with qubit 0 as msb") {
    QuantumState s = QuantumState::zero(3);
    const std::vector<Complex> reg{0.0, 1.0};  // |1> on qubit 1
    s.initialize_register(1, 1, std::span<const Complex>(reg));
    CHECK(std::abs(s.amplitude(0b010) - Complex(1.0)) < 1e-15);

    // uniform two-qubit register on qubits 1..2
    QuantumState u = QuantumState::zero(3);
    const std::vector<Complex> uni(4, Complex(0.5));
    u.initialize_register(1, 2, std::span<const Complex>(uni));
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(std::abs(u.amplitude(i) - Complex(0.5)) < 1e-15);
    }

    const std::vector<Complex> bad{0.6, 0.8001};
    QuantumState v = QuantumState::zero(2);
    CHECK_THROWS_AS(v.initialize_register(0, 1, std::span<const Complex>(bad)), NormalizationError);

    // initializing after a gate on the same qubits is an ordering violation
    QuantumState w = QuantumState::zero(2);
    w.h(0);
    const std::vector<Complex> plus{kInvSqrt2, kInvSqrt2};
    CHECK_THROWS_AS(w.initialize_register(0, 1, std::span<const Complex>(plus)), InitializationOrderError);
}

TEST_CASE("marginals follow the born rule") {
    QuantumState s = QuantumState::zero(1);
    s.h(0);
    const std::vector<int> q0{0};
    const std::vector<double> m = s.marginals(q0);
    CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-12));

    // bell state: correlated outcomes only
    QuantumState bell = QuantumState::zero(2);
    bell.h(0);
    const std::vector<int> c{0};
    const std::vector<int> p{1};
    bell.mcx(c, p, 1);
    const std::vector<int> both{0, 1};
    const std::vector<double> mb = bell.marginals(both);
    CHECK(mb[0b00] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mb[0b01] == doctest::Approx(0.0));
    CHECK(mb[0b10] == doctest::Approx(0.0));
    CHECK(mb[0b11] == doctest::Approx(0.5).epsilon(1e-12));

    // empty qubit list: single outcome with probability 1
    const std::vector<int> none{};
    const std::vector<double> me = bell.marginals(none);
    REQUIRE(me.size() == 1);
    CHECK(me[0] == doctest::Approx(1.0).epsilon(1e-12));
    const auto as_map = marginals_as_map(bell, none);
    CHECK(as_map.at("") == doctest::Approx(1.0));

    double total = 0.0;
    for (double v : mb) {
        total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sampling is deterministic and concentrates correctly") {
    QuantumState zero = QuantumState::zero(1);
    RngStream rng_a(42);
    const std::vector<int> q{0};
    const MeasurementCounts mc = zero.sample(q, 1024, rng_a);
    CHECK(mc.counts[0] == 1024);
    CHECK(mc.counts[1] == 0);
    CHECK(mc.total() == mc.shots);
    CHECK(mc.bitstring(1) == "1");
    CHECK(mc.to_map().at("0") == 1024);

    QuantumState plus = QuantumState::zero(1);
    plus.h(0);
    RngStream rng_b(7);
    const MeasurementCounts mp = plus.sample(q, 1024, rng_b);
    // 3 sigma window around 512 with sigma = sqrt(1024 * 0.25) = 16
    CHECK(mp.counts[0] >= 512 - 48);
    CHECK(mp.counts[0] <= 512 + 48);

    RngStream rng_c(7);
    const MeasurementCounts mq = plus.sample(q, 1024, rng_c);
    CHECK(mq.counts == mp.counts);

    RngStream rng_d(7);
    CHECK_THROWS_AS(plus.sample(q, 0, rng_d), ParameterError);
}

TEST_CASE("sampling frequencies track the marginal distribution") {
    RngStream state_rng(100);
    const QuantumState s = random_state(3, state_rng);
    const std::vector<int> qubits{0, 1, 2};
    const std::vector<double> probs = s.marginals(qubits);

    int violations = 0;
    const int trials = 200;
    const std::uint64_t shots = 2048;
    for (int t = 0; t < trials; ++t) {
        RngStream rng(derive_seed(500, {static_cast<std::uint64_t>(t)}));
        const MeasurementCounts mc = s.sample(qubits, shots, rng);
        for (std::size_t o = 0; o < probs.size(); ++o) {
            const double freq = static_cast<double>(mc.counts[o]) / static_cast<double>(shots);
            const double bound = 4.0 * std::sqrt(probs[o] * (1.0 - probs[o]) / static_cast<double>(shots));
            if (std::abs(freq - probs[o]) > bound && probs[o] > 0.0 && probs[o] < 1.0) {
                ++violations;
            }
        }
    }
    // 4 sigma: expected violation rate well below 1 in 10^4 draws
    CHECK(violations <= 1);
}

TEST_CASE("fidelity of unit vectors") {
    const std::vector<double> e0{1.0, 0.0};
    const std::vector<double> e1{0.0, 1.0};
    const std::vector<double> plus{kInvSqrt2, kInvSqrt2};
    CHECK(fidelity(std::span<const double>(e0), std::span<const double>(e0)) == doctest::Approx(1.0));
    CHECK(fidelity(std::span<const double>(e0), std::span<const double>(e1)) == doctest::Approx(0.0));
    CHECK(fidelity(std::span<const double>(plus), std::span<const double>(e0)) == doctest::Approx(0.5));

    const std::vector<double> three{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(fidelity(std::span<const double>(e0), std::span<const double>(three)), DimensionError);
    const std::vector<double> not_unit{0.5, 0.5};
    CHECK_THROWS_AS(fidelity(std::span<const double>(not_unit), std::span<const double>(e0)),
                    NormalizationError);
}

TEST_CASE("swap test reproduces (1 + fidelity) / 2 on the ancilla") {
    RngStream rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_below(3));
        const std::uint64_t dim = std::uint64_t{1} << n;

        auto random_unit = [&](std::uint64_t d) {
            std::vector<Complex> v(d);
            double n2 = 0.0;
            for (auto& a : v) {
                a = Complex(rng.gaussian(), rng.gaussian());
                n2 += std::norm(a);
            }
            const double inv = 1.0 / std::sqrt(n2);
            for (auto& a : v) {
                a *= inv;
            }
            return v;
        };
        const std::vector<Complex> psi = random_unit(dim);
        const std::vector<Complex> phi = random_unit(dim);

        QuantumState s = QuantumState::zero(1 + 2 * n);
        s.initialize_register(1, n, std::span<const Complex>(psi));
        s.initialize_register(1 + n, n, std::span<const Complex>(phi));
        apply_swap_test(s, 0, 1, 1 + n, n);

        const std::vector<int> anc{0};
        const double p0 = s.marginals(anc)[0];
        const double f = fidelity(std::span<const Complex>(psi), std::span<const Complex>(phi));
        CHECK(p0 == doctest::Approx(0.5 * (1.0 + f)).epsilon(1e-9));
    }
}

TEST_CASE("halving the estimate error costs four times the shots") {
    // |+> vs |0>: P(0) = 0.75 on the swap-test ancilla
    const std::vector<double> plus{kInvSqrt2, kInvSqrt2};
    const std::vector<double> zero{1.0, 0.0};
    QuantumState s = QuantumState::zero(3);
    s.initialize_register(1, 1, std::span<const double>(plus));
    s.initialize_register(2, 1, std::span<const double>(zero));
    apply_swap_test(s, 0, 1, 2, 1);
    const std::vector<int> anc{0};

    auto empirical_std = [&](std::uint64_t shots) {
        const int seeds = 600;
        double sum = 0.0;
        double sum2 = 0.0;
        for (int t = 0; t < seeds; ++t) {
            RngStream rng(derive_seed(4040, {shots, static_cast<std::uint64_t>(t)}));
            const MeasurementCounts mc = s.sample(anc, shots, rng);
            const double est = static_cast<double>(mc.counts[0]) / static_cast<double>(shots);
            sum += est;
            sum2 += est * est;
        }
        return std::sqrt(sum2 / seeds - (sum / seeds) * (sum / seeds));
    };

    const double se_base = empirical_std(512);
    const double se_quad = empirical_std(2048);
    CHECK(se_base / se_quad == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("qubits_for matches ceil(log2)") {
    CHECK(qubits_for(1) == 0);
    CHECK(qubits_for(2) == 1);
    CHECK(qubits_for(3) == 2);
    CHECK(qubits_for(100) == 7);
    CHECK(qubits_for(168) == 8);
    CHECK(qubits_for(1024) == 10);
}

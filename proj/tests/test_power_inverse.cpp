#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "mpinv/oracle.hpp"
#include "mpinv/power_inverse.hpp"

using namespace mpinv;

namespace {

Nat random_odd(std::mt19937_64& rng, std::size_t limbs) {
    std::vector<limb> v(limbs);
    for (auto& w : v) w = rng();
    v[0] |= 1;
    return Nat::from_limbs(std::move(v));
}

// Random a in [1, n^k) with gcd(a, n) = 1.
Nat random_coprime(std::mt19937_64& rng, limb n, std::size_t k) {
    const Nat m = pow_of_radix(Radix::small(n), k);
    for (;;) {
        Nat a = mod_pow_of_radix(Nat::from_limbs({rng(), rng()}), Radix::small(n), k);
        const auto low = divmod_radix(a, Radix::small(n)).remainder;
        if (!a.is_zero() && std::gcd(low, n) == 1) return a;
    }
}

SNat snat(long long v) {
    return SNat(Nat::from_limb(v < 0 ? -(unsigned long long)v : v), v < 0);
}

}  // namespace

TEST_CASE("worked example: 12^-1 mod 5^5 via the carry-form loop") {
    const InverseRequest req{Nat::from_limb(12), Radix::small(5), 5};
    const InverseResult res = radix_inverse(req, true);
    CHECK(res.value == Nat::from_limb(1823));
    REQUIRE(res.trace.has_value());
    CHECK(res.trace->algorithm == InverseAlgorithm::radix_general);
    CHECK(res.trace->digits == std::vector<Digit>{3, 4, 2, 4, 2});
    REQUIRE(res.trace->intermediates.size() == 5);
    const long long expected_t[] = {1, 7, 11, 7, 11};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(res.trace->intermediates[i] == snat(expected_t[i]));
    }
}

TEST_CASE("worked example: 12^-1 mod 5^5 via the b-sequence loop") {
    const InverseRequest req{Nat::from_limb(12), Radix::small(5), 5};
    const InverseResult res = koc_inverse(req, true);
    CHECK(res.value == Nat::from_limb(1823));
    REQUIRE(res.trace.has_value());
    CHECK(res.trace->algorithm == InverseAlgorithm::koc);
    CHECK(res.trace->digits == std::vector<Digit>{3, 4, 2, 4, 2});
    REQUIRE(res.trace->intermediates.size() == 6);
    const long long expected_b[] = {1, -7, -11, -7, -11, -7};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(res.trace->intermediates[i] == snat(expected_b[i]));
    }
}

TEST_CASE("worked example: 7^-1 mod 2^4 everywhere") {
    const InverseRequest req{Nat::from_limb(7), Radix::small(2), 4};
    CHECK(radix_inverse(req).value == Nat::from_limb(7));
    CHECK(radix_inverse(req, true).value == Nat::from_limb(7));
    CHECK(koc_inverse(req).value == Nat::from_limb(7));
    CHECK(radix_inverse_pow2_bitwise(Nat::from_limb(7), 4) == Nat::from_limb(7));
    CHECK(koc_inverse_pow2_bitwise(Nat::from_limb(7), 4) == Nat::from_limb(7));

    const InverseResult res = koc_inverse(req, true);
    REQUIRE(res.trace.has_value());
    CHECK(res.trace->algorithm == InverseAlgorithm::koc_pow2);
    const long long expected_b[] = {1, -3, -5, -6, -3};
    REQUIRE(res.trace->intermediates.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(res.trace->intermediates[i] == snat(expected_b[i]));
    }
}

TEST_CASE("identity and negative-one inputs") {
    for (limb n : {2, 3, 5, 12}) {
        for (std::size_t k : {1, 2, 5}) {
            const InverseRequest req{Nat::from_limb(1), Radix::small(n), k};
            CHECK(radix_inverse(req).value == Nat::from_limb(1));
            const InverseResult res = koc_inverse(req, true);
            CHECK(res.value == Nat::from_limb(1));
            for (std::size_t i = 1; i < res.trace->intermediates.size(); ++i) {
                CHECK(res.trace->intermediates[i].is_zero());  // b_i = 0 for i >= 1
            }
        }
    }
    // a = n^k - 1 is its own inverse.
    const Nat a = sub(pow_of_radix(Radix::small(7), 3), Nat::from_limb(1));
    CHECK(radix_inverse({a, Radix::small(7), 3}).value == a);
    CHECK(koc_inverse({a, Radix::small(7), 3}).value == a);
}

TEST_CASE("inputs at or above n^k are reduced first") {
    const Nat big = add(Nat::from_limb(12), mul_limb(Nat::from_limb(3125), 9));
    CHECK(radix_inverse({big, Radix::small(5), 5}).value == Nat::from_limb(1823));
    CHECK(koc_inverse({big, Radix::small(5), 5}).value == Nat::from_limb(1823));
    CHECK(radix_inverse_pow2_bitwise(Nat::from_limb(7 + 16), 4) ==
          radix_inverse_pow2_bitwise(Nat::from_limb(7), 4));
}

TEST_CASE("error contract") {
    CHECK_THROWS_AS(radix_inverse({Nat::from_limb(4), Radix::small(6), 2}),
                    NotInvertibleError);
    try {
        radix_inverse({Nat::from_limb(4), Radix::small(6), 2});
    } catch (const NotInvertibleError& e) {
        CHECK(e.gcd() == Nat::from_limb(2));
    }
    CHECK_THROWS_AS(koc_inverse({Nat::from_limb(10), Radix::small(5), 3}),
                    NotInvertibleError);
    CHECK_THROWS_AS(radix_inverse({Nat::from_limb(3), Radix::small(5), 0}),
                    InvalidModulusError);
    CHECK_THROWS_AS(koc_inverse({Nat::from_limb(3), Radix::small(5), 0}),
                    InvalidModulusError);
    CHECK_THROWS_AS(radix_inverse_pow2_bitwise(Nat::from_limb(6), 8),
                    NotInvertibleError);
    CHECK_THROWS_AS(koc_inverse_pow2_bitwise(Nat::from_limb(6), 8),
                    NotInvertibleError);
    CHECK_THROWS_AS(radix_inverse_pow2_bitwise(Nat::from_limb(7), 0),
                    InvalidModulusError);
}

TEST_CASE("all loops agree with the oracle on random small bases") {
    std::mt19937_64 rng(21);
    const limb bases[] = {2, 3, 4, 5, 7, 9, 11, 16, 255, 257, 1000003};
    for (limb n : bases) {
        for (int iter = 0; iter < 30; ++iter) {
            const std::size_t k = 1 + rng() % 8;
            const Nat a = random_coprime(rng, n, k);
            const Nat m = pow_of_radix(Radix::small(n), k);
            const Nat expect = oracle::oracle_inverse(a, m);
            const InverseRequest req{a, Radix::small(n), k};
            CHECK(radix_inverse(req).value == expect);
            CHECK(radix_inverse(req, true).value == expect);
            CHECK(koc_inverse(req).value == expect);
            if (n == 2) {
                CHECK(radix_inverse_pow2_bitwise(a, k) == expect);
                CHECK(koc_inverse_pow2_bitwise(a, k) == expect);
            }
        }
    }
}

TEST_CASE("limb-base fast path agrees with the digit loop and the oracle") {
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t k = 1 + rng() % 8;
        const Nat a = random_odd(rng, k);
        const InverseRequest req{a, Radix::limb_base(), k};
        const Nat fast = radix_inverse(req).value;          // fused limb kernel
        const Nat traced = radix_inverse(req, true).value;  // generic digit loop
        const Nat koc = koc_inverse(req).value;
        CHECK(fast == traced);
        CHECK(fast == koc);
        CHECK(mod_pow_of_radix(mul(a, fast), Radix::limb_base(), k).is_one());
        if (iter % 8 == 0) {
            CHECK(fast == oracle::oracle_inverse(a, pow_of_radix(Radix::limb_base(), k)));
        }
    }
}

TEST_CASE("bitwise loops agree with each other and the digit loops mod 2^k") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 25; ++iter) {
        const std::size_t bits = 1 + rng() % 300;
        const Nat a = random_odd(rng, (bits + 63) / 64);
        const Nat r4 = radix_inverse_pow2_bitwise(a, bits);
        const Nat r2 = koc_inverse_pow2_bitwise(a, bits);
        const Nat r3 = radix_inverse({a, Radix::small(2), bits}, true).value;
        const Nat r1 = koc_inverse({a, Radix::small(2), bits}).value;
        CHECK(r4 == r2);
        CHECK(r4 == r3);
        CHECK(r4 == r1);
        CHECK(mod_pow_of_radix(mul(a, r4), Radix::small(2), bits).is_one());
    }
}

TEST_CASE("prefix inverses invert a modulo every n^s") {
    const InverseResult res =
        radix_inverse({Nat::from_limb(12), Radix::small(5), 5}, true);
    const std::vector<Nat> prefixes = prefix_inverses(*res.trace);
    REQUIRE(prefixes.size() == 5);
    const limb expected[] = {3, 23, 73, 573, 1823};
    for (std::size_t s = 0; s < 5; ++s) {
        CHECK(prefixes[s] == Nat::from_limb(expected[s]));
    }

    std::mt19937_64 rng(24);
    const limb bases[] = {2, 3, 10, 12, 64};
    for (limb n : bases) {
        const std::size_t k = 1 + rng() % 6;
        const Nat a = random_coprime(rng, n, k);
        for (bool use_koc : {false, true}) {
            const InverseRequest req{a, Radix::small(n), k};
            const InverseResult r = use_koc ? koc_inverse(req, true)
                                            : radix_inverse(req, true);
            const auto pre = prefix_inverses(*r.trace);
            REQUIRE(pre.size() == k);
            for (std::size_t s = 1; s <= k; ++s) {
                CHECK(mod_pow_of_radix(mul(a, pre[s - 1]), Radix::small(n), s)
                          .is_one());
            }
        }
    }
}

TEST_CASE("prefixes of a trace for a = 1 are all 1") {
    const InverseResult res =
        radix_inverse({Nat::from_limb(1), Radix::small(9), 4}, true);
    for (const Nat& p : prefix_inverses(*res.trace)) {
        CHECK(p == Nat::from_limb(1));
    }
}

TEST_CASE("reciprocal of n^s mod a read off the b-sequence") {
    const InverseResult res =
        koc_inverse({Nat::from_limb(7), Radix::small(2), 4}, true);
    const limb expected[] = {4, 2, 1, 4};  // (2^s)^-1 mod 7 for s = 1..4
    for (std::size_t s = 1; s <= 4; ++s) {
        CHECK(reciprocal_power_mod_a(*res.trace, s, Nat::from_limb(7)) ==
              Nat::from_limb(expected[s - 1]));
    }

    const InverseResult r3 =
        koc_inverse({Nat::from_limb(3), Radix::small(2), 2}, true);
    CHECK(reciprocal_power_mod_a(*r3.trace, 1, Nat::from_limb(3)) ==
          Nat::from_limb(2));
}

TEST_CASE("reciprocal identity holds on random prime-base runs") {
    std::mt19937_64 rng(25);
    const limb primes[] = {2, 3, 5, 7, 11};
    for (limb p : primes) {
        for (int iter = 0; iter < 20; ++iter) {
            const std::size_t k = 1 + rng() % 6;
            const Nat a = random_coprime(rng, p, k);
            if (cmp(a, Nat::from_limb(1)) <= 0) continue;
            const auto res = koc_inverse({a, Radix::small(p), k}, true);
            for (std::size_t s = 1; s <= k; ++s) {
                const Nat r = reciprocal_power_mod_a(*res.trace, s, a);
                const Nat prod = mul(r, pow_of_radix(Radix::small(p), s));
                CHECK(divmod_limb(prod, a.to_limb()).remainder == 1);
            }
        }
    }
}

TEST_CASE("reciprocal error contract") {
    const auto koc = koc_inverse({Nat::from_limb(7), Radix::small(2), 4}, true);
    CHECK_THROWS_AS(reciprocal_power_mod_a(*koc.trace, 1, Nat::from_limb(1)),
                    std::domain_error);
    CHECK_THROWS_AS(reciprocal_power_mod_a(*koc.trace, 0, Nat::from_limb(7)),
                    std::out_of_range);
    CHECK_THROWS_AS(reciprocal_power_mod_a(*koc.trace, 5, Nat::from_limb(7)),
                    std::out_of_range);
    const auto radix = radix_inverse({Nat::from_limb(7), Radix::small(5), 3}, true);
    CHECK_THROWS_AS(reciprocal_power_mod_a(*radix.trace, 1, Nat::from_limb(7)),
                    std::invalid_argument);
    // Trace generated from 7, queried with a different a: |b_1| = 3 >= 3.
    CHECK_THROWS_AS(reciprocal_power_mod_a(*koc.trace, 1, Nat::from_limb(3)),
                    std::invalid_argument);
}

TEST_CASE("telescoped closure: n^k * b_k = 1 - a*x") {
    std::mt19937_64 rng(26);
    const limb bases[] = {2, 3, 5, 7, 11, 13};
    for (limb p : bases) {
        const std::size_t k = 1 + rng() % 6;
        const Nat a = random_coprime(rng, p, k);
        const auto res = koc_inverse({a, Radix::small(p), k}, true);
        const SNat bk = res.trace->intermediates.at(k);
        const SNat lhs = mul(SNat::from_nat(pow_of_radix(Radix::small(p), k)), bk);
        const SNat rhs = sub(SNat::from_nat(Nat::from_limb(1)),
                             SNat::from_nat(mul(a, res.value)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("the two loops walk the same numbers with opposite signs") {
    std::mt19937_64 rng(27);
    const limb bases[] = {2, 5, 10, 12};
    for (limb n : bases) {
        const std::size_t k = 2 + rng() % 5;
        const Nat a = random_coprime(rng, n, k);
        const InverseRequest req{a, Radix::small(n), k};
        const auto radix = radix_inverse(req, true);
        const auto koc = koc_inverse(req, true);
        CHECK(radix.trace->digits == koc.trace->digits);
        for (std::size_t i = 1; i < k; ++i) {  // T_i = -b_i for 1 <= i <= k-1
            CHECK(radix.trace->intermediates[i] ==
                  koc.trace->intermediates[i].negated());
        }
    }
}

TEST_CASE("loop trip counters: k-1 carry-form trips versus k b-sequence trips") {
    const InverseRequest req{Nat::from_limb(12), Radix::small(5), 5};
    const auto before = op_counters();
    (void)radix_inverse(req);
    const auto after_radix = op_counters();
    CHECK(after_radix.radix_loop_iterations - before.radix_loop_iterations == 4);
    CHECK(after_radix.koc_loop_iterations == before.koc_loop_iterations);
    (void)koc_inverse(req);
    const auto after_koc = op_counters();
    CHECK(after_koc.koc_loop_iterations - after_radix.koc_loop_iterations == 5);
    CHECK(after_koc.radix_loop_iterations == after_radix.radix_loop_iterations);
}

TEST_CASE("loop trip counters on the specialized kernels") {
    std::mt19937_64 rng(28);
    const Nat a = random_odd(rng, 16);

    auto before = op_counters();
    (void)radix_inverse({a, Radix::limb_base(), 16});
    CHECK(op_counters().radix_loop_iterations - before.radix_loop_iterations == 15);

    before = op_counters();
    (void)radix_inverse_pow2_bitwise(a, 130);
    CHECK(op_counters().radix_loop_iterations - before.radix_loop_iterations == 129);

    before = op_counters();
    (void)koc_inverse_pow2_bitwise(a, 130);
    CHECK(op_counters().koc_loop_iterations - before.koc_loop_iterations == 130);
}

TEST_CASE("trace allocations are counted and absent by default") {
    const InverseRequest req{Nat::from_limb(12), Radix::small(5), 5};
    const auto before = op_counters().trace_allocations;
    (void)radix_inverse(req);
    (void)koc_inverse(req);
    (void)radix_inverse_pow2_bitwise(Nat::from_limb(7), 8);
    CHECK(op_counters().trace_allocations == before);
    (void)radix_inverse(req, true);
    CHECK(op_counters().trace_allocations == before + 1);
    (void)koc_inverse(req, true);
    CHECK(op_counters().trace_allocations == before + 2);
}

TEST_CASE("trace algorithm tags") {
    CHECK(radix_inverse({Nat::from_limb(3), Radix::small(5), 2}, true)
              .trace->algorithm == InverseAlgorithm::radix_general);
    CHECK(radix_inverse({Nat::from_limb(3), Radix::small(2), 2}, true)
              .trace->algorithm == InverseAlgorithm::radix_pow2);
    CHECK(koc_inverse({Nat::from_limb(3), Radix::small(5), 2}, true)
              .trace->algorithm == InverseAlgorithm::koc);
    CHECK(koc_inverse({Nat::from_limb(3), Radix::small(2), 2}, true)
              .trace->algorithm == InverseAlgorithm::koc_pow2);
    CHECK(radix_inverse({Nat::from_limb(3), Radix::limb_base(), 2}, true)
              .trace->algorithm == InverseAlgorithm::radix_general);
}

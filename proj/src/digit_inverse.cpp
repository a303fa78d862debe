#include "mpinv/digit_inverse.hpp"

#include "mpinv/checks.hpp"

namespace mpinv {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// The radix as a 128-bit value (2^64 for the limb base).
u128 radix_value_128(const Radix& n) {
    if (n.is_limb_base()) return (u128)1 << 64;
    return n.value();
}

}  // namespace

limb word_inverse_xgcd(limb a, const Radix& n) {
    const u128 mod = radix_value_128(n);
    u128 r0 = mod, r1 = (u128)a % mod;
    i128 s0 = 0, s1 = 1;  // s_i tracks the coefficient of a: r_i = s_i*a mod n
    while (r1 != 0) {
        u128 q = r0 / r1;
        u128 r2 = r0 - q * r1;
        i128 s2 = s0 - (i128)q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) {
        Nat g = (r0 >> 64) ? Nat::from_limbs({(limb)r0, (limb)(r0 >> 64)})
                           : Nat::from_limb((limb)r0);
        throw NotInvertibleError("word has no inverse: gcd(" +
                                     std::to_string(a) + ", " + n.str() +
                                     ") > 1",
                                 std::move(g));
    }
    if (s0 < 0) s0 += (i128)mod;
    MPINV_ASSERT((u128)s0 * a % mod == 1, "xgcd postcondition");
    return (limb)s0;
}

limb word_inverse_pow2_hensel(limb a) {
    if ((a & 1) == 0) {
        throw NotInvertibleError("even word has no inverse mod 2^64",
                                 Nat::from_limb(2));
    }
    // Seed correct to 5 bits, then four quadratically convergent steps:
    // 5 -> 10 -> 20 -> 40 -> 80 >= 64 correct bits.
    limb x = (a * 3) ^ 2;
    for (int step = 1; step <= 4; ++step) {
        x *= 2 - a * x;
#if MPINV_CHECKS_ENABLED
        unsigned bits = 5u << step;
        limb mask = bits >= 64 ? ~(limb)0 : ((limb)1 << bits) - 1;
        MPINV_ASSERT(((a * x) & mask) == 1, "Newton step lost precision");
#endif
    }
    return x;
}

limb word_inverse(limb a, const Radix& n) {
    if (n.is_limb_base()) return word_inverse_pow2_hensel(a);
    return word_inverse_xgcd(a, n);
}

}  // namespace mpinv

#pragma once
// limbops.hpp - kernels on raw little-endian limb arrays.
//
// These back both the Nat value type and the digit-serial inversion loops.
// All lengths are in limbs; buffers may alias only where a kernel says so.

#include <cstddef>
#include <cstdint>

#include "mpinv/checks.hpp"

namespace mpinv::limbops {

using limb = std::uint64_t;
using dlimb = unsigned __int128;
inline constexpr unsigned limb_bits = 64;

// Number of significant limbs once high zeros are stripped.
inline std::size_t normalized_size(const limb* p, std::size_t n) {
    while (n > 0 && p[n - 1] == 0) --n;
    return n;
}

// Compare equal-length arrays. Returns -1, 0 or 1.
inline int cmp_n(const limb* a, const limb* b, std::size_t n) {
    for (std::size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

// rp[0..n) = ap[0..n) + bp[0..n), returns carry. rp may alias either input.
inline limb add_n(limb* rp, const limb* ap, const limb* bp, std::size_t n) {
    limb carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dlimb s = (dlimb)ap[i] + bp[i] + carry;
        rp[i] = (limb)s;
        carry = (limb)(s >> limb_bits);
    }
    return carry;
}

// rp[0..n) = ap[0..n) - bp[0..n), returns borrow. rp may alias either input.
inline limb sub_n(limb* rp, const limb* ap, const limb* bp, std::size_t n) {
    limb borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dlimb d = (dlimb)ap[i] - bp[i] - borrow;
        rp[i] = (limb)d;
        borrow = (limb)((d >> limb_bits) & 1);
    }
    return borrow;
}

// rp[0..n) = ap[0..n) + b, returns carry.
inline limb add_1(limb* rp, const limb* ap, std::size_t n, limb b) {
    limb carry = b;
    for (std::size_t i = 0; i < n; ++i) {
        dlimb s = (dlimb)ap[i] + carry;
        rp[i] = (limb)s;
        carry = (limb)(s >> limb_bits);
    }
    return carry;
}

// rp[0..n) = ap[0..n) * b, returns carry limb.
inline limb mul_1(limb* rp, const limb* ap, std::size_t n, limb b) {
    limb carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dlimb p = (dlimb)ap[i] * b + carry;
        rp[i] = (limb)p;
        carry = (limb)(p >> limb_bits);
    }
    return carry;
}

// rp[0..n) += ap[0..n) * b, returns carry limb.
inline limb addmul_1(limb* rp, const limb* ap, std::size_t n, limb b) {
    limb carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dlimb p = (dlimb)ap[i] * b + rp[i] + carry;
        rp[i] = (limb)p;
        carry = (limb)(p >> limb_bits);
    }
    return carry;
}

// Short division: qp[0..n) = ap[0..n) / d, returns remainder. qp may alias ap.
inline limb divrem_1(limb* qp, const limb* ap, std::size_t n, limb d) {
    MPINV_ASSERT(d > 0, "division by zero");
    limb rem = 0;
    for (std::size_t i = n; i-- > 0;) {
        dlimb cur = ((dlimb)rem << limb_bits) | ap[i];
        qp[i] = (limb)(cur / d);
        rem = (limb)(cur % d);
    }
    return rem;
}

// In-place m[0..n) >>= 1, returns the bit shifted out.
inline limb rshift1(limb* m, std::size_t n) {
    if (n == 0) return 0;
    limb out = m[0] & 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m[i] = (m[i] >> 1) | (m[i + 1] << 63);
    }
    m[n - 1] >>= 1;
    return out;
}

// In-place m = (m + a) >> 1 over n limbs, returns the bit shifted out.
// Requires m + a < 2^(64n+1); the sum's top bit is folded back in.
inline limb add_rshift1(limb* m, const limb* a, std::size_t n) {
    MPINV_ASSERT(n > 0, "empty operand");
    dlimb s = (dlimb)m[0] + a[0];
    limb out = (limb)s & 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dlimb s2 = (dlimb)m[i + 1] + a[i + 1] + (limb)(s >> limb_bits);
        m[i] = ((limb)s >> 1) | ((limb)s2 << 63);
        s = s2;
    }
    m[n - 1] = ((limb)s >> 1) | ((limb)(s >> limb_bits) << 63);
    return out;
}

// rp[0..rn) = (a * b) mod 2^(64*rn). rp must not alias the inputs.
inline void mul_low(limb* rp, const limb* ap, std::size_t an, const limb* bp,
                    std::size_t bn, std::size_t rn) {
    for (std::size_t i = 0; i < rn; ++i) rp[i] = 0;
    if (an > rn) an = rn;
    for (std::size_t i = 0; i < an; ++i) {
        std::size_t cols = rn - i < bn ? rn - i : bn;
        limb carry = addmul_1(rp + i, bp, cols, ap[i]);
        if (i + cols < rn) add_1(rp + i + cols, rp + i + cols, rn - i - cols, carry);
    }
}

}  // namespace mpinv::limbops

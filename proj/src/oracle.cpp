#include "mpinv/oracle.hpp"

#include <stdexcept>

#include "mpinv/checks.hpp"

namespace mpinv::oracle {

namespace {

// x << bits, built limb-wise; oracle-grade, clarity over speed.
Nat shl(const Nat& x, std::size_t bits) {
    if (x.is_zero()) return Nat();
    std::size_t limb_shift = bits / limb_bits;
    unsigned bit_shift = bits % limb_bits;
    std::vector<limb> r(x.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        limb v = x.limb_at(i);
        r[i + limb_shift] |= bit_shift ? v << bit_shift : v;
        if (bit_shift) r[i + limb_shift + 1] |= v >> (limb_bits - bit_shift);
    }
    return Nat::from_limbs(std::move(r));
}

struct Divmod {
    Nat q;
    Nat r;
};

// Shift-and-subtract long division: align d under the leading bit of the
// running remainder and subtract whenever it fits.
Divmod divmod(const Nat& a, const Nat& d) {
    MPINV_ASSERT(!d.is_zero(), "division by zero");
    Nat r = a;
    Nat q;
    while (cmp(r, d) >= 0) {
        std::size_t shift = r.bit_count() - d.bit_count();
        Nat t = shl(d, shift);
        if (cmp(t, r) > 0) {
            --shift;
            t = shl(d, shift);
        }
        r = sub(r, t);
        q = add(q, shl(Nat::from_limb(1), shift));
    }
    return {std::move(q), std::move(r)};
}

}  // namespace

XgcdResult xgcd(const Nat& x, const Nat& y) {
    if (x.is_zero() && y.is_zero()) {
        throw std::domain_error("gcd(0, 0) is undefined");
    }
    // Invariants: r0 = u0*x + v0*y and r1 = u1*x + v1*y.
    Nat r0 = x, r1 = y;
    SNat u0 = SNat::from_nat(Nat::from_limb(1)), u1;
    SNat v0, v1 = SNat::from_nat(Nat::from_limb(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        SNat qs = SNat::from_nat(q);
        SNat u2 = sub(u0, mul(qs, u1));
        SNat v2 = sub(v0, mul(qs, v1));
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    MPINV_ASSERT(add(mul(u0, SNat::from_nat(x)), mul(v0, SNat::from_nat(y))) ==
                     SNat::from_nat(r0),
                 "Bezout identity");
    return {std::move(r0), std::move(u0), std::move(v0)};
}

Nat oracle_inverse(const Nat& a, const Nat& m) {
    if (cmp(m, Nat::from_limb(2)) < 0) {
        throw std::domain_error("modulus must be at least 2");
    }
    XgcdResult res = xgcd(a, m);
    if (!res.g.is_one()) {
        throw NotInvertibleError("no inverse: gcd(a, m) = " + res.g.to_decimal(),
                                 std::move(res.g));
    }
    // Normalize the a-coefficient into [0, m). |u| < m already holds for the
    // final Euclid coefficients, so one correction suffices.
    Nat inv = res.u.negative() ? sub(m, res.u.magnitude()) : res.u.magnitude();
    if (cmp(inv, m) >= 0) inv = divmod(inv, m).r;
    MPINV_ASSERT(divmod(mul(a, inv), m).r.is_one(), "inverse postcondition");
    return inv;
}

std::optional<limb> brute_force_inverse(limb a, limb m) {
    if (m == 0 || m > (1u << 20)) {
        throw std::domain_error("brute force modulus out of range");
    }
    limb prod = 0;       // a*x mod m, updated incrementally
    limb step = a % m;
    for (limb x = 1; x < m; ++x) {
        prod += step;
        if (prod >= m) prod -= m;
        if (prod == 1) return x;
    }
    return std::nullopt;
}

}  // namespace mpinv::oracle

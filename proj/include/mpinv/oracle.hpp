#pragma once
// oracle.hpp - slow, independent reference implementations.
//
// Everything here exists to validate the digit-serial algorithms, so none of
// it shares code with them: division is textbook shift-and-subtract, the gcd
// is a plain Euclid loop, and brute_force_inverse is a linear scan. Built
// first, trusted most, never optimized.

#include <optional>

#include "mpinv/nat.hpp"

namespace mpinv::oracle {

struct XgcdResult {
    Nat g;   // gcd(x, y)
    SNat u;  // u*x + v*y = g
    SNat v;
};

// Extended Euclid. Throws std::domain_error if both inputs are zero.
XgcdResult xgcd(const Nat& x, const Nat& y);

// a^-1 mod m for m >= 2, normalized into [0, m).
// Throws NotInvertibleError (carrying the gcd) if gcd(a, m) > 1.
Nat oracle_inverse(const Nat& a, const Nat& m);

// Linear scan for x in [1, m) with a*x mod m = 1; nullopt if none exists.
// Guarded to m <= 2^20 so a full-grid sweep stays cheap.
std::optional<limb> brute_force_inverse(limb a, limb m);

}  // namespace mpinv::oracle

#pragma once
// digit_inverse.hpp - inverses of a single word modulo the radix.
//
// The digit-serial loops in power_inverse.hpp consume one modular inverse of
// the low digit of the operand: c = a0^-1 mod n. These routines compute that
// word-level inverse. Two independent methods are provided so each can check
// the other: extended gcd (any base) and Hensel lifting by Newton iteration
// (base 2^64 only, branch-free).

#include "mpinv/nat.hpp"

namespace mpinv {

// a^-1 mod n by the extended Euclidean algorithm. a is reduced mod n first.
// Works for every radix including the limb base 2^64 (intermediates are
// 128-bit). Throws NotInvertibleError if gcd(a, n) > 1.
limb word_inverse_xgcd(limb a, const Radix& n);

// a^-1 mod 2^64 for odd a, via a 5-bit seed refined by four Newton steps
// x <- x * (2 - a * x), each doubling the number of correct low bits.
// Throws NotInvertibleError if a is even.
limb word_inverse_pow2_hensel(limb a);

// Preferred word inverse for a radix: Hensel lifting for the limb base,
// extended gcd otherwise.
limb word_inverse(limb a, const Radix& n);

}  // namespace mpinv

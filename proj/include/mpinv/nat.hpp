#pragma once
// nat.hpp - multiprecision natural numbers and the radix abstraction.
//
// Nat is an arbitrary-precision unsigned integer stored as little-endian
// 64-bit limbs with no leading zero limb (zero is the empty vector). SNat
// adds a sign for the few places that need signed intermediates (extended
// gcd, the b-sequence of the digit-serial loops). Radix models the base n
// the inversion routines work in: either a small base 2 <= n < 2^64 or the
// full limb base 2^64 itself, which gets dedicated fast paths.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpinv {

using limb = std::uint64_t;
using dlimb = unsigned __int128;
inline constexpr unsigned limb_bits = 64;

// A digit in base n. Digits always fit a limb: for the limb base the digit
// range [0, 2^64) is exactly the limb range.
using Digit = limb;

// Malformed textual input (bad character, empty string, trailing junk).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A radix outside [2, 2^64].
class InvalidModulusError : public std::invalid_argument {
public:
    explicit InvalidModulusError(const std::string& what)
        : std::invalid_argument(what) {}
};

class Nat;

// Requested an inverse of a value not coprime to the modulus. Carries the
// offending gcd so callers can report it.
class NotInvertibleError;

class Nat {
public:
    Nat() = default;

    static Nat from_limb(limb v);
    // Little-endian limbs; high zeros are stripped.
    static Nat from_limbs(std::vector<limb> limbs);
    static Nat from_hex(std::string_view s);      // optional 0x prefix
    static Nat from_decimal(std::string_view s);
    // Dispatches on prefix: "0x"/"0X" -> hex, otherwise decimal.
    static Nat parse(std::string_view s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }

    std::size_t size() const { return limbs_.size(); }
    const limb* data() const { return limbs_.data(); }
    limb* data() { return limbs_.data(); }
    const std::vector<limb>& limbs() const { return limbs_; }

    // Limb i, or 0 beyond the stored length.
    limb limb_at(std::size_t i) const {
        return i < limbs_.size() ? limbs_[i] : 0;
    }

    // Value as a single limb; requires the value to fit.
    limb to_limb() const;

    // Position of the highest set bit plus one; 0 for zero.
    std::size_t bit_count() const;
    bool bit(std::size_t i) const {
        std::size_t w = i / limb_bits;
        return w < limbs_.size() && ((limbs_[w] >> (i % limb_bits)) & 1);
    }

    // Lowercase hex with 0x prefix, e.g. "0x71f".
    std::string to_hex() const;
    std::string to_decimal() const;

    friend bool operator==(const Nat& a, const Nat& b) {
        return a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const Nat& a, const Nat& b) { return !(a == b); }

    // Used by the arithmetic free functions below.
    static Nat take(std::vector<limb> limbs) { return from_limbs(std::move(limbs)); }

private:
    std::vector<limb> limbs_;  // little-endian, no leading zero limb
};

class NotInvertibleError : public std::domain_error {
public:
    NotInvertibleError(const std::string& what, Nat gcd)
        : std::domain_error(what), gcd_(std::move(gcd)) {}
    const Nat& gcd() const { return gcd_; }

private:
    Nat gcd_;
};

// Three-way comparison: -1, 0 or 1.
int cmp(const Nat& a, const Nat& b);
inline bool operator<(const Nat& a, const Nat& b) { return cmp(a, b) < 0; }
inline bool operator>(const Nat& a, const Nat& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Nat& a, const Nat& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Nat& a, const Nat& b) { return cmp(a, b) >= 0; }

Nat add(const Nat& a, const Nat& b);
// Requires a >= b.
Nat sub(const Nat& a, const Nat& b);
// Schoolbook product; fine for tests and oracles, not a performance path.
Nat mul(const Nat& a, const Nat& b);
Nat mul_limb(const Nat& a, limb b);
Nat add_limb(const Nat& a, limb b);

struct DivmodLimb {
    Nat quotient;
    limb remainder;
};
// Short division by a single limb d >= 1.
DivmodLimb divmod_limb(const Nat& a, limb d);

// The base the digit-serial routines run in.
class Radix {
public:
    // Base n with 2 <= n < 2^64.
    static Radix small(limb n) {
        if (n < 2) throw InvalidModulusError("radix must be at least 2");
        return Radix(n, false);
    }
    // The limb base n = 2^64.
    static Radix limb_base() { return Radix(0, true); }

    bool is_limb_base() const { return limb_base_; }
    bool is_two() const { return !limb_base_ && n_ == 2; }
    bool is_power_of_two() const {
        return limb_base_ || (n_ & (n_ - 1)) == 0;
    }
    // The base as a limb; only valid for small radixes.
    limb value() const;
    // The base as a Nat (2^64 takes two limbs).
    Nat to_nat() const;
    std::string str() const;

    friend bool operator==(const Radix& a, const Radix& b) {
        return a.limb_base_ == b.limb_base_ && a.n_ == b.n_;
    }
    friend bool operator!=(const Radix& a, const Radix& b) { return !(a == b); }

private:
    Radix(limb n, bool lb) : n_(n), limb_base_(lb) {}
    limb n_;
    bool limb_base_;
};

struct DivmodRadix {
    Nat quotient;
    Digit remainder;
};
// Quotient and least-significant digit of a in base n.
DivmodRadix divmod_radix(const Nat& a, const Radix& n);

// n^k as a Nat.
Nat pow_of_radix(const Radix& n, std::size_t k);
// a mod n^k.
Nat mod_pow_of_radix(const Nat& a, const Radix& n, std::size_t k);

// The k low-order digits of x in base n, least significant first.
// Throws std::out_of_range if x >= n^k (the value would not round-trip).
std::vector<Digit> to_digits(const Nat& x, const Radix& n, std::size_t k);
// Value of a little-endian digit string; every digit must be < n.
Nat from_digits(const std::vector<Digit>& digits, const Radix& n);

// Signed multiprecision value for xgcd-style bookkeeping. Zero is
// canonically non-negative.
class SNat {
public:
    SNat() = default;
    SNat(Nat magnitude, bool negative)
        : mag_(std::move(magnitude)), neg_(negative && !mag_.is_zero()) {}
    static SNat from_nat(Nat v) { return SNat(std::move(v), false); }

    const Nat& magnitude() const { return mag_; }
    bool negative() const { return neg_; }
    bool is_zero() const { return mag_.is_zero(); }
    SNat negated() const { return SNat(mag_, !neg_); }
    std::string str() const {
        return (neg_ ? "-" : "") + mag_.to_decimal();
    }

    friend bool operator==(const SNat& a, const SNat& b) {
        return a.neg_ == b.neg_ && a.mag_ == b.mag_;
    }

private:
    Nat mag_;
    bool neg_ = false;
};

SNat add(const SNat& a, const SNat& b);
SNat sub(const SNat& a, const SNat& b);
SNat mul(const SNat& a, const SNat& b);

}  // namespace mpinv

#pragma once
// power_inverse.hpp - digit-serial inversion modulo n^k.
//
// Four routines compute x = a^-1 mod n^k one base-n digit per step, given
// only the word inverse c = a^-1 mod n as a seed:
//
//   koc_inverse                digit loop over b_i: X_i = c*b_i mod n,
//                              b_{i+1} = (b_i - a*X_i)/n; runs k steps.
//   koc_inverse_pow2_bitwise   the same loop specialized to n = 2.
//   radix_inverse              carry form over T_i: T_i = (T_{i-1} +
//                              X_{i-1}*a)/n, X_i = -c*T_i mod n; the seed
//                              step absorbs one iteration, so the loop runs
//                              k-1 steps and saves one digit product.
//   radix_inverse_pow2_bitwise the carry form specialized to n = 2.
//
// The two loop shapes walk the same numbers with opposite signs: T_i = -b_i
// for 1 <= i <= k-1, both bounded by |value| < a. All divisions by n are
// exact except the carry form's first one, whose remainder is exactly
// T_0 + 1 and is discarded (floor division); checked builds assert both
// facts at every step.
//
// For the limb base n = 2^64 the digit loop degrades to one fused
// multiply-accumulate-and-shift pass over the limbs of a per digit, which is
// the fast path the benchmarks measure.

#include <cstdint>
#include <optional>
#include <vector>

#include "mpinv/nat.hpp"

namespace mpinv {

// Per-thread instrumentation. Tests snapshot, run, and diff; the counters
// are cheap enough to leave enabled in release builds.
struct OpCounters {
    std::uint64_t koc_loop_iterations = 0;
    std::uint64_t radix_loop_iterations = 0;
    std::uint64_t trace_allocations = 0;
};
OpCounters& op_counters();
void reset_op_counters();

enum class InverseAlgorithm { koc, koc_pow2, radix_general, radix_pow2 };

// Step-by-step record of one inversion, for tests and the explain command.
struct InverseTrace {
    Radix radix;
    std::size_t k = 0;
    InverseAlgorithm algorithm = InverseAlgorithm::radix_general;
    std::vector<Digit> digits;       // X_0 .. X_{k-1}, least significant first
    std::vector<SNat> intermediates; // b_0 .. b_k (koc) or T_0 .. T_{k-1} (radix)
};

struct InverseRequest {
    Nat a;
    Radix radix;
    std::size_t k = 1;
};

struct InverseResult {
    Nat value;
    std::optional<InverseTrace> trace;
};

// x = a^-1 mod n^k via the carry-form digit loop (k-1 iterations after the
// seed). a is reduced mod n^k first. Requests with n = 2 and no trace are
// routed to the bitwise loop; the limb base takes the fused limb kernel.
// Throws NotInvertibleError if gcd(a, n) > 1, InvalidModulusError if k < 1.
InverseResult radix_inverse(const InverseRequest& req, bool keep_trace = false);

// x = a^-1 mod 2^k for odd a; the carry-form loop on single bits.
Nat radix_inverse_pow2_bitwise(const Nat& a, std::size_t k);

// x = a^-1 mod n^k via the b-sequence loop (k iterations). Intended for
// prime n - correctness only needs gcd(a, n) = 1, which is checked;
// primality is not. The trace carries b_0..b_k including the final b_k.
InverseResult koc_inverse(const InverseRequest& req, bool keep_trace = false);

// x = a^-1 mod 2^k for odd a; the b-sequence loop on single bits.
Nat koc_inverse_pow2_bitwise(const Nat& a, std::size_t k);

// For s = 1..k, the value (X_{s-1}...X_0)_n, i.e. the low s digits of the
// traced inverse. Each entry is a^-1 mod n^s for the generating a.
std::vector<Nat> prefix_inverses(const InverseTrace& trace);

// (n^s)^-1 mod a for 1 <= s <= k, read off a b-sequence trace as a + b_s.
// a must be the value the trace was generated from (in particular a < n^k,
// since larger inputs are reduced before the loop runs). Requires a > 1
// (std::domain_error), a trace from koc_inverse, and |b_s| < a
// (std::invalid_argument otherwise).
Nat reciprocal_power_mod_a(const InverseTrace& trace, std::size_t s, const Nat& a);

namespace detail {

// Fused limb-base kernel: x[0..k) = a[0..k)^-1 mod 2^(64k) for odd a.
// t is scratch of k limbs. No allocation; one MAC pass per output limb.
void radix_inverse_limb_base(limb* x, limb* t, const limb* a, std::size_t k);

// Bit-serial kernels mod 2^bits. a must be odd and already reduced to
// nl = ceil(bits/64) limbs; x and the scratch m are nl limbs, zeroed here.
void radix_inverse_pow2_kernel(limb* x, limb* m, const limb* a, std::size_t bits);
void koc_inverse_pow2_kernel(limb* x, limb* m, const limb* a, std::size_t bits);

}  // namespace detail

}  // namespace mpinv

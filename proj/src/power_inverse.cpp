#include "mpinv/power_inverse.hpp"

#include <stdexcept>

#include "mpinv/checks.hpp"
#include "mpinv/digit_inverse.hpp"
#include "mpinv/limbops.hpp"

namespace mpinv {

namespace lo = limbops;

OpCounters& op_counters() {
    thread_local OpCounters counters;
    return counters;
}

void reset_op_counters() { op_counters() = OpCounters{}; }

namespace {

// Digit arithmetic in a fixed base, specialized once per run: power-of-two
// bases (including the limb base, stored as shift 64) split on shifts,
// everything else divides.
struct DigitBase {
    limb n = 0;          // 0 stands in for 2^64
    unsigned shift = 0;  // log2(n) when pow2
    limb mask = 0;       // n - 1 when pow2
    bool pow2 = false;

    explicit DigitBase(const Radix& r) {
        if (r.is_limb_base()) {
            pow2 = true;
            shift = 64;
            mask = ~(limb)0;
        } else {
            n = r.value();
            if ((n & (n - 1)) == 0) {
                pow2 = true;
                mask = n - 1;
                while (((limb)1 << shift) != n) ++shift;
            }
        }
    }

    limb div(dlimb v) const { return pow2 ? (limb)(v >> shift) : (limb)(v / n); }
    limb mod(dlimb v) const { return pow2 ? (limb)v & mask : (limb)(v % n); }
    limb mulmod(limb x, limb y) const { return mod((dlimb)x * y); }
    // (-d) mod n.
    limb neg(limb d) const {
        if (d == 0) return 0;
        return shift == 64 ? (limb)0 - d : n - d;
    }
};

#if MPINV_CHECKS_ENABLED
bool digits_less(const std::vector<Digit>& x, const std::vector<Digit>& y) {
    MPINV_ASSERT(x.size() == y.size(), "digit compare needs equal lengths");
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] < y[i];
    }
    return false;
}
#endif

// One digit step of either loop: writes floor((t + x*ad) / n) back into t
// (all k digits, base n) and returns (t + x*ad) mod n. Dividing a base-n
// digit string by n is a one-position shift, so the quotient costs nothing
// beyond the multiply-accumulate pass itself.
limb mac_shift(std::vector<Digit>& t, limb x, const std::vector<Digit>& ad,
               const DigitBase& base) {
    const std::size_t k = ad.size();
    dlimb acc = (dlimb)t[0] + (dlimb)x * ad[0];
    const limb rem = base.mod(acc);
    limb carry = base.div(acc);
    for (std::size_t j = 1; j < k; ++j) {
        acc = (dlimb)t[j] + (dlimb)x * ad[j] + carry;
        t[j - 1] = base.mod(acc);
        carry = base.div(acc);
    }
    t[k - 1] = carry;
    return rem;
}

// Carry-form digit loop for any base; also serves trace-keeping runs on the
// bases that otherwise take a specialized kernel, since the numbers it walks
// are identical.
InverseResult radix_inverse_digits(const Nat& a_red, const Radix& radix,
                                   std::size_t k, bool keep_trace) {
    const DigitBase base(radix);
    const std::vector<Digit> ad = to_digits(a_red, radix, k);
    const limb c = word_inverse(ad[0], radix);

    std::vector<Digit> x(k, 0);
    x[0] = c;
    // c*a_0 = 1 + n*T_0, so T_0 falls out of the seed product.
    const limb t0 = base.div((dlimb)c * ad[0] - 1);
    std::vector<Digit> t(k, 0);
    t[0] = t0;

    InverseResult out;
    InverseTrace* trace = nullptr;
    if (keep_trace) {
        ++op_counters().trace_allocations;
        out.trace = InverseTrace{radix, k,
                                 radix.is_two() ? InverseAlgorithm::radix_pow2
                                                : InverseAlgorithm::radix_general,
                                 {}, {}};
        trace = &*out.trace;
        trace->intermediates.reserve(k);
        trace->intermediates.push_back(SNat::from_nat(Nat::from_limb(t0)));
    }

    auto& ctr = op_counters();
    for (std::size_t i = 1; i < k; ++i) {
        ++ctr.radix_loop_iterations;
        const limb rem = mac_shift(t, x[i - 1], ad, base);
        // The first division floors away T_0 + 1; every later one is exact.
        MPINV_ASSERT(rem == (i == 1 ? t0 + 1 : 0), "carry division remainder");
        MPINV_ASSERT(digits_less(t, ad), "T_i must stay below a");
        (void)rem;
        x[i] = base.neg(base.mulmod(c, t[0]));
        if (trace) {
            trace->intermediates.push_back(SNat::from_nat(from_digits(t, radix)));
        }
    }

    out.value = from_digits(x, radix);
    if (trace) trace->digits = std::move(x);
    return out;
}

// b-sequence digit loop for any base. The b_i are nonpositive after b_0, so
// the loop tracks the magnitude m = -b_i.
InverseResult koc_inverse_digits(const Nat& a_red, const Radix& radix,
                                 std::size_t k, bool keep_trace) {
    const DigitBase base(radix);
    const std::vector<Digit> ad = to_digits(a_red, radix, k);
    const limb c = word_inverse(ad[0], radix);

    std::vector<Digit> x(k, 0);
    x[0] = c;  // X_0 = c*b_0 mod n with b_0 = 1
    std::vector<Digit> m(k, 0);

    InverseResult out;
    InverseTrace* trace = nullptr;
    if (keep_trace) {
        ++op_counters().trace_allocations;
        out.trace = InverseTrace{radix, k,
                                 radix.is_two() ? InverseAlgorithm::koc_pow2
                                                : InverseAlgorithm::koc,
                                 {}, {}};
        trace = &*out.trace;
        trace->intermediates.reserve(k + 1);
        trace->intermediates.push_back(SNat::from_nat(Nat::from_limb(1)));  // b_0
    }

    auto& ctr = op_counters();
    // Step i = 0: b_1 = (b_0 - a*X_0)/n. The pass computes c*a, whose low
    // digit is c*a_0 mod n = 1 - dropping it subtracts the b_0 and divides.
    ++ctr.koc_loop_iterations;
    {
        const limb rem = mac_shift(m, c, ad, base);
        MPINV_ASSERT(rem == 1, "seed step must shed exactly the unit digit");
        MPINV_ASSERT(digits_less(m, ad), "|b_i| must stay below a");
        (void)rem;
        if (trace) trace->intermediates.push_back(SNat(from_digits(m, radix), true));
    }

    for (std::size_t i = 1; i < k; ++i) {
        ++ctr.koc_loop_iterations;
        x[i] = base.mulmod(c, base.neg(m[0]));  // c * (b_i mod n) mod n
        const limb rem = mac_shift(m, x[i], ad, base);
        MPINV_ASSERT(rem == 0, "b-sequence division must be exact");
        MPINV_ASSERT(digits_less(m, ad), "|b_i| must stay below a");
        (void)rem;
        if (trace) trace->intermediates.push_back(SNat(from_digits(m, radix), true));
    }

    out.value = from_digits(x, radix);
    if (trace) trace->digits = std::move(x);
    return out;
}

// Low `bits` bits of a as a masked limb vector; rejects even values.
std::vector<limb> reduce_pow2(const Nat& a, std::size_t bits) {
    if (bits < 1) throw InvalidModulusError("k must be at least 1");
    if (!a.is_odd()) {
        throw NotInvertibleError("even value has no inverse modulo a power of 2",
                                 Nat::from_limb(2));
    }
    const std::size_t nl = (bits + 63) / 64;
    std::vector<limb> av(nl, 0);
    for (std::size_t j = 0; j < nl && j < a.size(); ++j) av[j] = a.limb_at(j);
    if (bits % 64) av[nl - 1] &= (((limb)1 << (bits % 64)) - 1);
    return av;
}

}  // namespace

namespace detail {

void radix_inverse_limb_base(limb* x, limb* t, const limb* a, std::size_t k) {
    const limb c = word_inverse_pow2_hensel(a[0]);
    x[0] = c;
    const limb t0 = (limb)(((dlimb)c * a[0]) >> 64);  // (c*a_0 - 1) / 2^64
    t[0] = t0;
    for (std::size_t j = 1; j < k; ++j) t[j] = 0;
    (void)t0;

    auto& ctr = op_counters();
    for (std::size_t i = 1; i < k; ++i) {
        ++ctr.radix_loop_iterations;
        const limb xprev = x[i - 1];
        // One fused pass: t <- (t + xprev*a) shifted down a limb.
        dlimb acc = (dlimb)t[0] + (dlimb)xprev * a[0];
        MPINV_ASSERT((limb)acc == (i == 1 ? t0 + 1 : 0), "carry division remainder");
        limb carry = (limb)(acc >> 64);
        for (std::size_t j = 1; j < k; ++j) {
            acc = (dlimb)t[j] + (dlimb)xprev * a[j] + carry;
            t[j - 1] = (limb)acc;
            carry = (limb)(acc >> 64);
        }
        t[k - 1] = carry;
        x[i] = (limb)0 - c * t[0];  // -c*T_i mod 2^64
    }
}

void radix_inverse_pow2_kernel(limb* x, limb* m, const limb* a, std::size_t bits) {
    const std::size_t nl = (bits + 63) / 64;
    for (std::size_t j = 0; j < nl; ++j) x[j] = m[j] = 0;
    x[0] = 1;  // X_0 = 1, T_0 = 0
    limb prev = 1;
    auto& ctr = op_counters();
    for (std::size_t i = 1; i < bits; ++i) {
        ++ctr.radix_loop_iterations;
        const limb out = prev ? lo::add_rshift1(m, a, nl) : lo::rshift1(m, nl);
        MPINV_ASSERT(out == (i == 1 ? 1 : 0), "bit carry division remainder");
        (void)out;
        prev = m[0] & 1;
        if (prev) x[i / 64] |= (limb)1 << (i % 64);
    }
}

void koc_inverse_pow2_kernel(limb* x, limb* m, const limb* a, std::size_t bits) {
    const std::size_t nl = (bits + 63) / 64;
    for (std::size_t j = 0; j < nl; ++j) {
        x[j] = 0;
        m[j] = a[j];
    }
    auto& ctr = op_counters();
    // Step i = 0: X_0 = b_0 mod 2 = 1; b_1 = (1 - a)/2, magnitude (a - 1)/2.
    ++ctr.koc_loop_iterations;
    x[0] = 1;
    const limb seed_out = lo::rshift1(m, nl);
    MPINV_ASSERT(seed_out == 1, "seed step must shed exactly the unit bit");
    (void)seed_out;
    for (std::size_t i = 1; i < bits; ++i) {
        ++ctr.koc_loop_iterations;
        limb out;
        if (m[0] & 1) {  // X_i = b_i mod 2 = m mod 2
            x[i / 64] |= (limb)1 << (i % 64);
            out = lo::add_rshift1(m, a, nl);
        } else {
            out = lo::rshift1(m, nl);
        }
        MPINV_ASSERT(out == 0, "b-sequence bit division must be exact");
        (void)out;
    }
}

}  // namespace detail

InverseResult radix_inverse(const InverseRequest& req, bool keep_trace) {
    if (req.k < 1) throw InvalidModulusError("k must be at least 1");
    const Radix& n = req.radix;
    const Nat a_red = mod_pow_of_radix(req.a, n, req.k);
    if (keep_trace) return radix_inverse_digits(a_red, n, req.k, true);
    if (n.is_limb_base()) {
        std::vector<limb> av(req.k, 0);
        for (std::size_t j = 0; j < a_red.size(); ++j) av[j] = a_red.limb_at(j);
        std::vector<limb> x(req.k), t(req.k);
        detail::radix_inverse_limb_base(x.data(), t.data(), av.data(), req.k);
        return {Nat::from_limbs(std::move(x)), std::nullopt};
    }
    if (n.is_two()) {
        return {radix_inverse_pow2_bitwise(a_red, req.k), std::nullopt};
    }
    return radix_inverse_digits(a_red, n, req.k, false);
}

Nat radix_inverse_pow2_bitwise(const Nat& a, std::size_t k) {
    const std::vector<limb> av = reduce_pow2(a, k);
    std::vector<limb> x(av.size()), m(av.size());
    detail::radix_inverse_pow2_kernel(x.data(), m.data(), av.data(), k);
    return Nat::from_limbs(std::move(x));
}

InverseResult koc_inverse(const InverseRequest& req, bool keep_trace) {
    if (req.k < 1) throw InvalidModulusError("k must be at least 1");
    const Nat a_red = mod_pow_of_radix(req.a, req.radix, req.k);
    return koc_inverse_digits(a_red, req.radix, req.k, keep_trace);
}

Nat koc_inverse_pow2_bitwise(const Nat& a, std::size_t k) {
    const std::vector<limb> av = reduce_pow2(a, k);
    std::vector<limb> x(av.size()), m(av.size());
    detail::koc_inverse_pow2_kernel(x.data(), m.data(), av.data(), k);
    return Nat::from_limbs(std::move(x));
}

std::vector<Nat> prefix_inverses(const InverseTrace& trace) {
    MPINV_ASSERT(trace.digits.size() == trace.k, "trace digit count");
    std::vector<Nat> out;
    out.reserve(trace.k);
    std::vector<Digit> prefix;
    prefix.reserve(trace.k);
    for (std::size_t s = 1; s <= trace.k; ++s) {
        prefix.push_back(trace.digits[s - 1]);
        out.push_back(from_digits(prefix, trace.radix));
    }
    return out;
}

Nat reciprocal_power_mod_a(const InverseTrace& trace, std::size_t s, const Nat& a) {
    if (trace.algorithm != InverseAlgorithm::koc &&
        trace.algorithm != InverseAlgorithm::koc_pow2) {
        throw std::invalid_argument("trace does not carry a b-sequence");
    }
    if (cmp(a, Nat::from_limb(1)) <= 0) {
        throw std::domain_error("modulus a must exceed 1");
    }
    if (s < 1 || s > trace.k) {
        throw std::out_of_range("s must lie in [1, k]");
    }
    const SNat& bs = trace.intermediates.at(s);
    MPINV_ASSERT(bs.negative() || bs.is_zero(), "b_s must be nonpositive");
    // A run on a keeps |b_s| < a, so this only fires when the trace was
    // generated from some other value than the a handed in here.
    if (cmp(bs.magnitude(), a) >= 0) {
        throw std::invalid_argument("trace was not generated from this a");
    }
    return sub(a, bs.magnitude());  // a + b_s
}

}  // namespace mpinv

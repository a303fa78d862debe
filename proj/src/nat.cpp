#include "mpinv/nat.hpp"

#include <algorithm>
#include <cctype>

#include "mpinv/checks.hpp"
#include "mpinv/limbops.hpp"

namespace mpinv {

namespace lo = limbops;

namespace {

void strip(std::vector<limb>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Nat Nat::from_limb(limb v) {
    Nat r;
    if (v) r.limbs_.push_back(v);
    return r;
}

Nat Nat::from_limbs(std::vector<limb> limbs) {
    Nat r;
    r.limbs_ = std::move(limbs);
    strip(r.limbs_);
    return r;
}

Nat Nat::from_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        s.remove_prefix(2);
    }
    if (s.empty()) throw ParseError("empty hex literal");
    Nat r;
    std::size_t nlimbs = (s.size() + 15) / 16;
    r.limbs_.assign(nlimbs, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        int d = hex_digit(s[s.size() - 1 - i]);
        if (d < 0) {
            throw ParseError("invalid hex digit '" + std::string(1, s[s.size() - 1 - i]) + "'");
        }
        r.limbs_[i / 16] |= (limb)d << (4 * (i % 16));
    }
    strip(r.limbs_);
    return r;
}

Nat Nat::from_decimal(std::string_view s) {
    if (s.empty()) throw ParseError("empty decimal literal");
    Nat r;
    for (char c : s) {
        if (c < '0' || c > '9') {
            throw ParseError("invalid decimal digit '" + std::string(1, c) + "'");
        }
        limb carry = lo::mul_1(r.limbs_.data(), r.limbs_.data(), r.limbs_.size(), 10);
        if (carry) r.limbs_.push_back(carry);
        carry = lo::add_1(r.limbs_.data(), r.limbs_.data(), r.limbs_.size(), (limb)(c - '0'));
        if (carry) r.limbs_.push_back(carry);
    }
    return r;
}

Nat Nat::parse(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        return from_hex(s);
    }
    return from_decimal(s);
}

limb Nat::to_limb() const {
    MPINV_ASSERT(limbs_.size() <= 1, "value does not fit a limb");
    return limbs_.empty() ? 0 : limbs_[0];
}

std::size_t Nat::bit_count() const {
    if (limbs_.empty()) return 0;
    limb top = limbs_.back();
    std::size_t bits = (limbs_.size() - 1) * limb_bits;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

std::string Nat::to_hex() const {
    if (limbs_.empty()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            int d = (int)((limbs_[i] >> shift) & 0xf);
            if (out.empty() && d == 0) continue;
            out.push_back(digits[d]);
        }
    }
    return "0x" + out;
}

std::string Nat::to_decimal() const {
    if (limbs_.empty()) return "0";
    std::vector<limb> work = limbs_;
    std::string out;
    while (!work.empty()) {
        limb rem = lo::divrem_1(work.data(), work.data(), work.size(), 10);
        strip(work);
        out.push_back((char)('0' + rem));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

int cmp(const Nat& a, const Nat& b) {
    if (a.size() != b.size()) return a.size() > b.size() ? 1 : -1;
    return lo::cmp_n(a.data(), b.data(), a.size());
}

Nat add(const Nat& a, const Nat& b) {
    const Nat& lo_ = a.size() >= b.size() ? b : a;
    const Nat& hi = a.size() >= b.size() ? a : b;
    std::vector<limb> r(hi.limbs());
    limb carry = lo::add_n(r.data(), r.data(), lo_.data(), lo_.size());
    if (carry) {
        carry = lo::add_1(r.data() + lo_.size(), r.data() + lo_.size(),
                          r.size() - lo_.size(), carry);
        if (carry) r.push_back(carry);
    }
    return Nat::take(std::move(r));
}

Nat sub(const Nat& a, const Nat& b) {
    MPINV_ASSERT(cmp(a, b) >= 0, "subtraction would go negative");
    std::vector<limb> r(a.limbs());
    limb borrow = lo::sub_n(r.data(), r.data(), b.data(), b.size());
    if (borrow) {
        for (std::size_t i = b.size(); borrow && i < r.size(); ++i) {
            borrow = r[i] == 0;
            r[i] -= 1;
        }
        MPINV_ASSERT(borrow == 0, "subtraction underflow");
    }
    return Nat::take(std::move(r));
}

Nat mul(const Nat& a, const Nat& b) {
    if (a.is_zero() || b.is_zero()) return Nat();
    std::vector<limb> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i + b.size()] = lo::addmul_1(r.data() + i, b.data(), b.size(), a.limb_at(i));
    }
    return Nat::take(std::move(r));
}

Nat mul_limb(const Nat& a, limb b) {
    if (a.is_zero() || b == 0) return Nat();
    std::vector<limb> r(a.limbs());
    limb carry = lo::mul_1(r.data(), r.data(), r.size(), b);
    if (carry) r.push_back(carry);
    return Nat::take(std::move(r));
}

Nat add_limb(const Nat& a, limb b) {
    std::vector<limb> r(a.limbs());
    limb carry = lo::add_1(r.data(), r.data(), r.size(), b);
    if (carry) r.push_back(carry);
    return Nat::take(std::move(r));
}

DivmodLimb divmod_limb(const Nat& a, limb d) {
    if (d == 0) throw std::domain_error("division by zero");
    if (a.is_zero()) return {Nat(), 0};
    std::vector<limb> q(a.limbs());
    limb rem = lo::divrem_1(q.data(), q.data(), q.size(), d);
    return {Nat::take(std::move(q)), rem};
}

limb Radix::value() const {
    MPINV_ASSERT(!limb_base_, "limb base exceeds the limb range");
    return n_;
}

Nat Radix::to_nat() const {
    if (limb_base_) return Nat::from_limbs({0, 1});
    return Nat::from_limb(n_);
}

std::string Radix::str() const {
    if (limb_base_) return "18446744073709551616";  // 2^64
    return std::to_string(n_);
}

DivmodRadix divmod_radix(const Nat& a, const Radix& n) {
    if (n.is_limb_base()) {
        // Base 2^64: the low limb is the digit, the rest is the quotient.
        if (a.is_zero()) return {Nat(), 0};
        std::vector<limb> q(a.limbs().begin() + 1, a.limbs().end());
        return {Nat::take(std::move(q)), a.limb_at(0)};
    }
    auto [q, r] = divmod_limb(a, n.value());
    return {std::move(q), r};
}

Nat pow_of_radix(const Radix& n, std::size_t k) {
    if (n.is_limb_base()) {
        std::vector<limb> r(k + 1, 0);
        r[k] = 1;
        return Nat::take(std::move(r));
    }
    Nat r = Nat::from_limb(1);
    for (std::size_t i = 0; i < k; ++i) r = mul_limb(r, n.value());
    return r;
}

Nat mod_pow_of_radix(const Nat& a, const Radix& n, std::size_t k) {
    if (n.is_limb_base()) {
        if (a.size() <= k) return a;
        std::vector<limb> r(a.limbs().begin(), a.limbs().begin() + k);
        return Nat::take(std::move(r));
    }
    Nat cur = a;
    std::vector<Digit> digits;
    digits.reserve(k);
    for (std::size_t i = 0; i < k && !cur.is_zero(); ++i) {
        auto [q, d] = divmod_radix(cur, n);
        digits.push_back(d);
        cur = std::move(q);
    }
    return from_digits(digits, n);
}

std::vector<Digit> to_digits(const Nat& x, const Radix& n, std::size_t k) {
    std::vector<Digit> digits;
    digits.reserve(k);
    Nat cur = x;
    for (std::size_t i = 0; i < k; ++i) {
        auto [q, d] = divmod_radix(cur, n);
        digits.push_back(d);
        cur = std::move(q);
    }
    if (!cur.is_zero()) {
        throw std::out_of_range("value does not fit in " + std::to_string(k) +
                                " digits of base " + n.str());
    }
    return digits;
}

Nat from_digits(const std::vector<Digit>& digits, const Radix& n) {
    if (n.is_limb_base()) {
        return Nat::from_limbs(digits);
    }
    Nat r;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= n.value()) {
            throw std::out_of_range("digit " + std::to_string(digits[i]) +
                                    " out of range for base " + n.str());
        }
        r = add_limb(mul_limb(r, n.value()), digits[i]);
    }
    return r;
}

SNat add(const SNat& a, const SNat& b) {
    if (a.negative() == b.negative()) {
        return SNat(add(a.magnitude(), b.magnitude()), a.negative());
    }
    int c = cmp(a.magnitude(), b.magnitude());
    if (c == 0) return SNat();
    if (c > 0) return SNat(sub(a.magnitude(), b.magnitude()), a.negative());
    return SNat(sub(b.magnitude(), a.magnitude()), b.negative());
}

SNat sub(const SNat& a, const SNat& b) { return add(a, b.negated()); }

SNat mul(const SNat& a, const SNat& b) {
    return SNat(mul(a.magnitude(), b.magnitude()), a.negative() != b.negative());
}

}  // namespace mpinv

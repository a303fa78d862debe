#include "mpinv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mpinv/checks.hpp"
#include "mpinv/digit_inverse.hpp"
#include "mpinv/limbops.hpp"
#include "mpinv/power_inverse.hpp"

namespace mpinv::bench {

namespace lo = limbops;

const char* name(BenchAlgorithm algorithm) {
    switch (algorithm) {
        case BenchAlgorithm::radix_limb_base: return "radix_limb_base";
        case BenchAlgorithm::bitwise_koc: return "bitwise_koc";
        case BenchAlgorithm::bitwise_radix: return "bitwise_radix";
        case BenchAlgorithm::hensel_fullwidth_newton: return "hensel_fullwidth_newton";
    }
    return "unknown";
}

namespace detail {

void newton_inverse_pow2(limb* x, limb* t, limb* u, const limb* a, std::size_t k) {
    x[0] = word_inverse_pow2_hensel(a[0]);
    for (std::size_t j = 1; j < k; ++j) x[j] = 0;
    for (std::size_t m = 1; m < k;) {
        const std::size_t m2 = std::min(2 * m, k);
        lo::mul_low(t, a, m2, x, m, m2);  // t = a*x mod 2^(64*m2)
        // u = 2 - t over m2 limbs.
        dlimb d = (dlimb)2 - t[0];
        u[0] = (limb)d;
        limb borrow = (limb)((d >> 64) & 1);
        for (std::size_t j = 1; j < m2; ++j) {
            d = (dlimb)0 - t[j] - borrow;
            u[j] = (limb)d;
            borrow = (limb)((d >> 64) & 1);
        }
        lo::mul_low(t, x, m, u, m2, m2);  // x <- x*(2 - a*x)
        for (std::size_t j = 0; j < m2; ++j) x[j] = t[j];
        m = m2;
    }
}

}  // namespace detail

namespace {

using clock_type = std::chrono::steady_clock;

// Inputs per size; every algorithm walks the same pool round-robin.
constexpr std::size_t kPoolSize = 16;
// Calibration grows the batch until one batch costs at least this much,
// keeping clock-read overhead well under a percent.
constexpr double kTargetBatchNs = 4000.0;

void validate(const BenchConfig& cfg) {
    for (unsigned bits : cfg.sizes) {
        if (bits == 0 || bits % 64 != 0) {
            throw std::invalid_argument(
                "bench sizes must be positive multiples of the 64-bit limb width");
        }
    }
    if (cfg.reps < 1) throw std::invalid_argument("reps must be at least 1");
}

std::vector<unsigned> sorted_sizes(const BenchConfig& cfg) {
    std::vector<unsigned> sizes = cfg.sizes;
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::vector<limb>> generate_inputs(unsigned bits, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * bits));
    const std::size_t nl = bits / 64;
    std::vector<std::vector<limb>> pool(kPoolSize);
    for (auto& v : pool) {
        v.resize(nl);
        for (auto& w : v) w = rng();
        v[0] |= 1;                   // odd, hence invertible mod 2^bits
        v[nl - 1] |= (limb)1 << 63;  // full bit-length
    }
    return pool;
}

template <class F>
double batch_ns(F&& f, std::size_t inner, std::size_t& idx) {
    const auto start = clock_type::now();
    for (std::size_t i = 0; i < inner; ++i) {
        f(idx);
        if (++idx == kPoolSize) idx = 0;
    }
    const auto stop = clock_type::now();
    return std::chrono::duration<double, std::nano>(stop - start).count();
}

template <class F>
BenchRecord measure(BenchAlgorithm algorithm, unsigned bits,
                    const BenchConfig& cfg, F&& f) {
    std::size_t idx = 0;
    std::size_t inner = 1;
    while (batch_ns(f, inner, idx) < kTargetBatchNs && inner < (1u << 20)) {
        inner *= 2;
    }
    for (std::size_t s = 0; s < cfg.warmup; ++s) (void)batch_ns(f, inner, idx);
    std::vector<double> samples(cfg.reps);
    for (double& s : samples) s = batch_ns(f, inner, idx) / (double)inner;

    const double mean =
        std::accumulate(samples.begin(), samples.end(), 0.0) / (double)samples.size();
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    const double median = samples.size() % 2
                              ? samples[mid]
                              : (samples[mid - 1] + samples[mid]) / 2.0;
    return {algorithm, bits, cfg.reps, median, mean};
}

void check_result(const std::vector<limb>& a, const std::vector<limb>& x,
                  unsigned bits, BenchAlgorithm algorithm, std::size_t index) {
    const Nat prod = mul(Nat::from_limbs(a), Nat::from_limbs(x));
    if (!mod_pow_of_radix(prod, Radix::limb_base(), bits / 64).is_one()) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "bench correctness check failed: %s at %u bits, input %zu",
                      name(algorithm), bits, index);
        throw std::runtime_error(msg);
    }
}

std::string cpu_model() {
    std::ifstream f("/proc/cpuinfo");
    std::string line;
    while (std::getline(f, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto pos = line.find(':');
            if (pos != std::string::npos) {
                auto start = line.find_first_not_of(" \t", pos + 1);
                if (start != std::string::npos) return line.substr(start);
            }
        }
    }
    return "unknown";
}

}  // namespace

std::vector<BenchRecord> run_suite(const BenchConfig& cfg) {
    validate(cfg);
#if MPINV_CHECKS_ENABLED
    const std::uint64_t traces_before = op_counters().trace_allocations;
#endif
    std::vector<BenchRecord> records;
    for (unsigned bits : sorted_sizes(cfg)) {
        const std::size_t nl = bits / 64;
        const auto pool = generate_inputs(bits, cfg.seed);
        std::vector<limb> x(nl), t(nl), u(nl);

        const auto limb_serial = [&](std::size_t i) {
            mpinv::detail::radix_inverse_limb_base(x.data(), t.data(),
                                                   pool[i].data(), nl);
        };
        const auto bit_koc = [&](std::size_t i) {
            mpinv::detail::koc_inverse_pow2_kernel(x.data(), t.data(),
                                                   pool[i].data(), bits);
        };
        const auto bit_radix = [&](std::size_t i) {
            mpinv::detail::radix_inverse_pow2_kernel(x.data(), t.data(),
                                                     pool[i].data(), bits);
        };
        const auto newton = [&](std::size_t i) {
            detail::newton_inverse_pow2(x.data(), t.data(), u.data(),
                                        pool[i].data(), nl);
        };

        const auto timed = [&](BenchAlgorithm algorithm, const auto& f) {
            for (std::size_t i = 0; i < pool.size(); ++i) {
                f(i);
                check_result(pool[i], x, bits, algorithm, i);
            }
            records.push_back(measure(algorithm, bits, cfg, f));
        };

        timed(BenchAlgorithm::radix_limb_base, limb_serial);
        timed(BenchAlgorithm::bitwise_koc, bit_koc);
        timed(BenchAlgorithm::bitwise_radix, bit_radix);
        timed(BenchAlgorithm::hensel_fullwidth_newton, newton);
    }
    std::sort(records.begin(), records.end(),
              [](const BenchRecord& a, const BenchRecord& b) {
                  if (a.modulus_bits != b.modulus_bits) {
                      return a.modulus_bits < b.modulus_bits;
                  }
                  return (int)a.algorithm < (int)b.algorithm;
              });
#if MPINV_CHECKS_ENABLED
    MPINV_ASSERT(op_counters().trace_allocations == traces_before,
                 "timed runs must not allocate traces");
#endif
    return records;
}

std::string emit(const std::vector<BenchRecord>& records, BenchFormat format) {
    std::string out;
    char line[192];
    if (format == BenchFormat::csv) {
        out += "algorithm,modulus_bits,reps,median_ns,mean_ns\n";
        for (const auto& r : records) {
            std::snprintf(line, sizeof line, "%s,%u,%zu,%.2f,%.2f\n",
                          name(r.algorithm), r.modulus_bits, r.reps, r.median_ns,
                          r.mean_ns);
            out += line;
        }
        return out;
    }

    // Markdown: one row per size, one median column per algorithm.
    static constexpr BenchAlgorithm columns[] = {
        BenchAlgorithm::radix_limb_base,
        BenchAlgorithm::hensel_fullwidth_newton,
        BenchAlgorithm::bitwise_koc,
        BenchAlgorithm::bitwise_radix,
    };
    out += "| modulus bits |";
    for (BenchAlgorithm c : columns) {
        out += " ";
        out += name(c);
        out += " (median ns) |";
    }
    out += "\n|---:|";
    for (std::size_t i = 0; i < std::size(columns); ++i) out += "---:|";
    out += "\n";

    std::vector<unsigned> sizes;
    for (const auto& r : records) sizes.push_back(r.modulus_bits);
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    for (unsigned bits : sizes) {
        std::snprintf(line, sizeof line, "| %u |", bits);
        out += line;
        for (BenchAlgorithm c : columns) {
            const BenchRecord* found = nullptr;
            for (const auto& r : records) {
                if (r.modulus_bits == bits && r.algorithm == c) {
                    found = &r;
                    break;
                }
            }
            if (found) {
                std::snprintf(line, sizeof line, " %.2f |", found->median_ns);
                out += line;
            } else {
                out += " - |";
            }
        }
        out += "\n";
    }
    return out;
}

std::string host_metadata() {
    std::string out = "# compiler: ";
#if defined(__VERSION__)
    out += __VERSION__;
#else
    out += "unknown";
#endif
    out += "\n# cpu: " + cpu_model() + "\n";
    return out;
}

std::uint64_t input_digest(const BenchConfig& cfg) {
    validate(cfg);
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a over the input limbs
    for (unsigned bits : sorted_sizes(cfg)) {
        for (const auto& v : generate_inputs(bits, cfg.seed)) {
            for (limb w : v) {
                h ^= w;
                h *= 1099511628211ull;
            }
        }
    }
    return h;
}

}  // namespace mpinv::bench

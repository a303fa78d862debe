#pragma once
// bench.hpp - timing harness for the inversion kernels mod 2^bits.
//
// Compares the limb-serial carry-form loop against full-width Newton lifting
// and the two bit-serial loops on identical seeded inputs, reporting per-call
// median and mean nanoseconds. Short calls are measured in batches sized by a
// calibration pass so the clock overhead stays in the noise.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mpinv/nat.hpp"

namespace mpinv::bench {

enum class BenchAlgorithm {
    radix_limb_base,          // carry-form loop, one limb digit per step
    bitwise_koc,              // b-sequence loop, one bit per step
    bitwise_radix,            // carry-form loop, one bit per step
    hensel_fullwidth_newton,  // Newton doubling over the full modulus width
};

const char* name(BenchAlgorithm algorithm);

struct BenchRecord {
    BenchAlgorithm algorithm;
    unsigned modulus_bits;
    std::size_t reps;
    double median_ns;
    double mean_ns;
};

struct BenchConfig {
    std::vector<unsigned> sizes{128, 256, 512, 1024, 2048, 3072, 4096};
    std::size_t reps = 1000;    // post-warmup samples per record
    std::size_t warmup = 100;   // discarded leading samples
    std::uint64_t seed = 1;     // drives the input generator
};

enum class BenchFormat { csv, markdown };

// Times every algorithm at every configured size on identical inputs.
// Each algorithm's output is verified against a full multiprecision product
// check before its timings are accepted; a wrong result aborts the suite
// (std::runtime_error). Sizes must be positive multiples of 64
// (std::invalid_argument otherwise). Records come back sorted by
// (modulus_bits, algorithm).
std::vector<BenchRecord> run_suite(const BenchConfig& cfg);

// CSV: "algorithm,modulus_bits,reps,median_ns,mean_ns" plus one row per
// record. Markdown: one row per size, one median column per algorithm.
std::string emit(const std::vector<BenchRecord>& records, BenchFormat format);

// '#'-prefixed free-text lines describing compiler and CPU, for prepending
// to emitted results (absolute timings are not comparable across hosts).
std::string host_metadata();

// Digest of the exact input values the seeded generator produces for cfg;
// two runs that print the same digest timed identical numbers.
std::uint64_t input_digest(const BenchConfig& cfg);

namespace detail {

// x[0..k) = a[0..k)^-1 mod 2^(64k) for odd a, by Newton steps
// x <- x*(2 - a*x) from a one-limb seed, doubling the trusted width each
// step. t and u are k-limb scratch buffers.
void newton_inverse_pow2(limb* x, limb* t, limb* u, const limb* a, std::size_t k);

}  // namespace detail

}  // namespace mpinv::bench

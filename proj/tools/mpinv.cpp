// mpinv - digit-serial modular inverses modulo n^k from the command line.
//
// Exit codes: 0 success, 1 bad input/usage, 2 value not invertible,
// 3 verification mismatch.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpinv/bench.hpp"
#include "mpinv/nat.hpp"
#include "mpinv/power_inverse.hpp"

namespace {

using namespace mpinv;

Radix parse_radix(const std::string& text) {
    if (text == "limb") return Radix::limb_base();
    const Nat v = Nat::parse(text);
    if (v == Nat::from_limbs({0, 1})) return Radix::limb_base();
    if (v.size() > 1) {
        throw InvalidModulusError("radix must fit 64 bits (use \"limb\" for 2^64)");
    }
    return Radix::small(v.to_limb());
}

void print_trace_table(const InverseTrace& trace, bool koc) {
    std::printf("  i  X_i  %s\n", koc ? "b_i" : "T_i");
    for (std::size_t i = 0; i < trace.k; ++i) {
        std::printf("  %zu  %llu  %s\n", i,
                    (unsigned long long)trace.digits[i],
                    trace.intermediates[i].str().c_str());
    }
    if (koc) {
        std::printf("  final b_%zu = %s\n", trace.k,
                    trace.intermediates[trace.k].str().c_str());
    }
}

void print_digits_msf(const InverseTrace& trace) {
    std::printf("digits (most significant first), base %s:",
                trace.radix.str().c_str());
    for (std::size_t i = trace.k; i-- > 0;) {
        std::printf(" %llu", (unsigned long long)trace.digits[i]);
    }
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digit-serial modular inverses modulo n^k"};
    app.require_subcommand(1);
    int rc = 0;

    // invert
    std::string inv_a, inv_radix, inv_algorithm = "auto";
    std::size_t inv_k = 1;
    auto* invert = app.add_subcommand("invert", "compute a^-1 mod n^k");
    invert->add_option("a", inv_a, "value to invert, decimal or 0x hex")->required();
    invert->add_option("--radix", inv_radix, "base n in [2, 2^64), or \"limb\" for n = 2^64")->required();
    invert->add_option("--k", inv_k, "exponent: the modulus is n^k")->required();
    invert
        ->add_option("--algorithm", inv_algorithm,
                     "auto: bit loop for n=2, fused limb loop for n=limb, digit "
                     "loop otherwise; radix: force the digit-serial carry loop; "
                     "koc: b-sequence loop; bitwise: bit loop (n = 2 only)")
        ->check(CLI::IsMember({"auto", "koc", "radix", "bitwise"}));
    invert->callback([&] {
        const Nat a = Nat::parse(inv_a);
        const Radix n = parse_radix(inv_radix);
        const InverseRequest req{a, n, inv_k};
        Nat x;
        if (inv_algorithm == "koc") {
            x = koc_inverse(req).value;
        } else if (inv_algorithm == "radix") {
            x = radix_inverse(req, /*keep_trace=*/true).value;
        } else if (inv_algorithm == "bitwise") {
            if (!n.is_two()) {
                throw std::invalid_argument("--algorithm bitwise requires --radix 2");
            }
            x = radix_inverse_pow2_bitwise(a, inv_k);
        } else {
            x = radix_inverse(req).value;
        }
        std::printf("%s\n", x.to_hex().c_str());
    });

    // verify
    std::string ver_a, ver_x, ver_radix;
    std::size_t ver_k = 1;
    auto* verify = app.add_subcommand("verify", "check that a*x = 1 mod n^k");
    verify->add_option("a", ver_a, "original value")->required();
    verify->add_option("x", ver_x, "claimed inverse")->required();
    verify->add_option("--radix", ver_radix, "base n or \"limb\"")->required();
    verify->add_option("--k", ver_k, "exponent")->required();
    verify->callback([&] {
        const Nat a = Nat::parse(ver_a);
        const Nat x = Nat::parse(ver_x);
        const Radix n = parse_radix(ver_radix);
        const Nat prod = mod_pow_of_radix(mul(a, x), n, ver_k);
        if (prod.is_one()) {
            std::printf("OK\n");
        } else {
            std::printf("FAIL\n");
            rc = 3;
        }
    });

    // explain
    std::string exp_a, exp_radix;
    std::size_t exp_k = 1;
    bool exp_koc = false;
    auto* explain = app.add_subcommand(
        "explain", "print the digit steps, prefix inverses and related values");
    explain->add_option("a", exp_a, "value to invert")->required();
    explain->add_option("--radix", exp_radix, "base n or \"limb\"")->required();
    explain->add_option("--k", exp_k, "exponent (at most 64 here)")->required();
    explain->add_flag("--koc", exp_koc,
                      "walk the b-sequence loop and print (n^s)^-1 mod a");
    explain->callback([&] {
        if (exp_k < 1 || exp_k > 64) {
            throw std::invalid_argument("explain supports 1 <= k <= 64");
        }
        const Nat a = Nat::parse(exp_a);
        const Radix n = parse_radix(exp_radix);
        const InverseRequest req{a, n, exp_k};
        const InverseResult res =
            exp_koc ? koc_inverse(req, true) : radix_inverse(req, true);
        const InverseTrace& trace = *res.trace;
        const Nat a_red = mod_pow_of_radix(a, n, exp_k);

        std::printf("inverse of %s modulo %s^%zu\n", a_red.to_decimal().c_str(),
                    n.str().c_str(), exp_k);
        print_trace_table(trace, exp_koc);
        print_digits_msf(trace);
        std::printf("inverse = %s\n", res.value.to_hex().c_str());

        std::printf("prefix inverses a^-1 mod n^s:\n");
        const std::vector<Nat> prefixes = prefix_inverses(trace);
        for (std::size_t s = 1; s <= trace.k; ++s) {
            std::printf("  s=%zu: %s\n", s, prefixes[s - 1].to_hex().c_str());
        }

        if (exp_koc) {
            if (cmp(a_red, Nat::from_limb(1)) > 0) {
                std::printf("reciprocals (n^s)^-1 mod a = a + b_s:\n");
                for (std::size_t s = 1; s <= trace.k; ++s) {
                    std::printf("  s=%zu: %s\n", s,
                                reciprocal_power_mod_a(trace, s, a_red)
                                    .to_decimal()
                                    .c_str());
                }
            } else {
                std::printf("reciprocals skipped: need a > 1\n");
            }
        }
    });

    // bench
    bench::BenchConfig cfg;
    std::string bench_format = "csv", bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "time the inversion kernels");
    bench_cmd->add_option("--sizes", cfg.sizes,
                          "modulus bit sizes, multiples of 64");
    bench_cmd->add_option("--reps", cfg.reps, "timed samples per record");
    bench_cmd->add_option("--warmup", cfg.warmup, "discarded leading samples");
    bench_cmd->add_option("--seed", cfg.seed, "input generator seed");
    bench_cmd->add_option("--format", bench_format, "output format")
        ->check(CLI::IsMember({"csv", "markdown"}));
    bench_cmd->add_option("--out", bench_out, "write results to a file instead of stdout");
    bench_cmd->callback([&] {
        const auto records = bench::run_suite(cfg);
        std::string text = bench::host_metadata();
        char line[64];
        std::snprintf(line, sizeof line, "# seed: %llu\n",
                      (unsigned long long)cfg.seed);
        text += line;
        std::snprintf(line, sizeof line, "# input_digest: 0x%016llx\n",
                      (unsigned long long)bench::input_digest(cfg));
        text += line;
        text += bench::emit(records, bench_format == "csv"
                                         ? bench::BenchFormat::csv
                                         : bench::BenchFormat::markdown);
        if (bench_out.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            std::ofstream f(bench_out);
            if (!f) throw std::runtime_error("cannot open " + bench_out);
            f << text;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NotInvertibleError& e) {
        std::fprintf(stderr, "not invertible: gcd=%s\n",
                     e.gcd().to_decimal().c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}

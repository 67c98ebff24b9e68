#include "wrtkit/noise.hpp"

#include <cmath>

namespace wrtkit {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = (std::uint64_t)a * b;
    hi = (std::uint32_t)(p >> 32);
    lo = (std::uint32_t)p;
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t key, std::uint64_t ctr_hi,
                                               std::uint64_t ctr_lo) {
    std::uint32_t c0 = (std::uint32_t)ctr_lo, c1 = (std::uint32_t)(ctr_lo >> 32);
    std::uint32_t c2 = (std::uint32_t)ctr_hi, c3 = (std::uint32_t)(ctr_hi >> 32);
    std::uint32_t k0 = (std::uint32_t)key, k1 = (std::uint32_t)(key >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        c0 = n0;
        c1 = lo1;
        c2 = n2;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

std::uint64_t poisson_sample(double lambda, CounterRng& rng) {
    if (lambda <= 0.0) return 0;
    if (lambda < 10.0) {
        // multiply uniforms until the product drops below exp(-lambda)
        double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double prod = rng.next_double();
        while (prod > limit) {
            ++k;
            prod *= rng.next_double();
        }
        return k;
    }
    // PTRS transformed rejection (Hormann 1993)
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        double us = 0.5 - std::abs(u);
        double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return (std::uint64_t)kf;
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * loglam - lambda - std::lgamma(kf + 1.0))
            return (std::uint64_t)kf;
    }
}

double calibrate(const RaySinogram& sino, double n_level) {
    if (n_level <= 0) throw DataError("calibrate: n_level must be positive");
    double mx = 0.0;
    for (double v : sino.values) mx = std::max(mx, v);
    if (mx <= 0.0) throw NumericalError("calibrate: sinogram has no positive entries");
    return n_level / mx;
}

CountSinogram sample_counts(const RaySinogram& sino, double c_n, std::uint64_t seed) {
    if (c_n <= 0) throw DataError("sample_counts: C_n must be positive");
    for (double v : sino.values)
        if (v < 0.0) throw DataError("sample_counts: negative sinogram entry");
    CountSinogram counts(sino.grid);
    counts.c_n = c_n;
    counts.seed = seed;
    const std::size_t total = sino.values.size();
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < (long long)total; ++idx) {
        CounterRng rng(seed, (std::uint64_t)idx);
        counts.values[idx] = (std::uint32_t)poisson_sample(c_n * sino.values[idx], rng);
    }
    return counts;
}

RaySinogram normalize_counts(const CountSinogram& counts, double c_n) {
    if (c_n <= 0) throw DataError("normalize_counts: C_n must be positive");
    RaySinogram out(counts.grid);
    for (std::size_t i = 0; i < counts.values.size(); ++i)
        out.values[i] = counts.values[i] / c_n;
    return out;
}

}  // namespace wrtkit

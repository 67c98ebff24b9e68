#pragma once

#include <cstdint>

#include "wrtkit/sinogram.hpp"

namespace wrtkit {

// Philox4x32-10 block cipher; the whole stream is a pure function of
// (key, counter), so draws can be generated in any order on any number of
// threads with identical results.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo);
};

// One independent stream, keyed by (seed, stream id). Used per sinogram cell.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(seed), hi_(stream) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }
    // uniform double in (0, 1)
    double next_double() {
        std::uint64_t a = next_u32(), b = next_u32();
        std::uint64_t bits = (a << 32) | b;
        return ((bits >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    void refill() {
        buf_ = Philox4x32::block(key_, hi_, lo_++);
        pos_ = 0;
    }
    std::uint64_t key_, hi_, lo_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

// One Poisson(lambda) draw: inversion by search for small lambda, Hormann's
// transformed rejection (PTRS) otherwise.
std::uint64_t poisson_sample(double lambda, CounterRng& rng);

// C_n with C_n * max(sino) = n_level. Rejects non-positive data maxima.
double calibrate(const RaySinogram& sino, double n_level);

// Independent Poisson counts with intensity C_n * value per cell, keyed by
// (seed, cell index); identical output for identical inputs regardless of the
// parallel schedule.
CountSinogram sample_counts(const RaySinogram& sino, double c_n, std::uint64_t seed);

// Elementwise counts / C_n, the estimate of the noiseless data.
RaySinogram normalize_counts(const CountSinogram& counts, double c_n);
inline RaySinogram normalize_counts(const CountSinogram& counts) {
    return normalize_counts(counts, counts.c_n);
}

}  // namespace wrtkit

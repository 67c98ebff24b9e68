#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wrtkit/volume.hpp"

namespace wrtkit {

// One cell of the noise-impact comparison: reconstruction method x activity
// phantom x attenuation level x photon budget x seed.
struct ErrorRecord {
    std::string activity;
    std::string attenuation;
    double n_level = 0.0;
    std::string method;
    std::uint64_t seed = 0;
    double eps = 0.0;
};

// || noisy - reference ||_F / || reference ||_F of two equally shaped images.
double rel_error(const std::vector<double>& noisy, const std::vector<double>& reference);

// z = const section of a volume (x fastest).
std::vector<double> volume_slice_z(const VolumeGrid& vol, int iz);

// Aligned text table (methods x cells) and flat delimited rows.
std::string render_table(const std::vector<ErrorRecord>& records);
std::string render_rows(const std::vector<ErrorRecord>& records);

}  // namespace wrtkit

#pragma once

#include <map>
#include <string>

#include "wrtkit/phantoms.hpp"
#include "wrtkit/sinogram.hpp"
#include "wrtkit/volume.hpp"

namespace wrtkit {

// On-disk container: a UTF-8 `key = value` header at <path> plus a raw
// little-endian payload at <path>.bin (x/s fastest, C order). Write-then-read
// round trips are bit identical.
struct Container {
    std::string kind;       // volume | raysino | planesino | counts | slice
    std::string dtype;      // f64 | u32
    std::vector<int> dims;  // slowest first, e.g. volume: nz ny nx
    double r = 1.0;
    std::map<std::string, std::string> extra;
    std::vector<double> f64;
    std::vector<std::uint32_t> u32;
};

void write_container(const std::string& path, const Container& c);
Container read_container(const std::string& path);

Container to_container(const VolumeGrid& vol);
Container to_container(const RaySinogram& sino);
Container to_container(const PlaneSinogram& sino);
Container to_container(const CountSinogram& counts);
Container to_container(const SliceImage& img);

VolumeGrid volume_from(const Container& c);
RaySinogram raysino_from(const Container& c);
PlaneSinogram planesino_from(const Container& c);
CountSinogram counts_from(const Container& c);
SliceImage slice_from(const Container& c);

// 16-bit binary PGM (big-endian samples per the format), linear min-max
// window.
void write_pgm16(const std::string& path, const double* data, int width, int height);

// Phantom spec text form: `scale_cm_per_unit = `, `attenuation = `, then one
// `ellipsoid cx cy cz ax ay az rot_deg value` or
// `shell cx cy cz r_inner r_outer value` line per primitive.
std::string dump_phantom(const PhantomSpec& spec);
PhantomSpec parse_phantom(const std::string& text);
PhantomSpec load_phantom_arg(const std::string& name_or_path);

}  // namespace wrtkit

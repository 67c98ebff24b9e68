#include "wrtkit/chang.hpp"

#include <string>

namespace wrtkit {

SliceImage w0_2d(const WeightEvaluator& w, double z, const CartesianGrid& grid, int nphi) {
    SliceImage out(grid);
    const int n = grid.n;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Vec3 x = {grid.coord(i), grid.coord(j), z};
            double acc = 0.0;
            for (int k = 0; k < nphi; ++k)
                acc += w(x, direction(2.0 * kPi * k / nphi, kPi / 2.0));
            out.at(i, j) = acc / nphi;
        }
    return out;
}

VolumeGrid w0_3d_direct(const WeightEvaluator& w, const CartesianGrid& grid, const PlaneGrid& pg) {
    VolumeGrid out(grid);
    const int n = grid.n;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.at(i, j, k) = reduced_w0_sphere(w, grid.node(i, j, k), pg);
    return out;
}

namespace {

void divide_masked_slice(double* img, const double* w0, const CartesianGrid& g, double disk_r2,
                         const std::string& where) {
    const int n = g.n;
    for (int j = 0; j < n; ++j) {
        double y = g.coord(j);
        for (int i = 0; i < n; ++i) {
            double x = g.coord(i);
            std::size_t idx = (std::size_t)i + (std::size_t)n * j;
            if (x * x + y * y <= disk_r2) {
                if (w0[idx] <= kW0Epsilon)
                    throw NumericalError(where + ": w0 <= " + std::to_string(kW0Epsilon) +
                                         " at voxel (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") inside the mask");
                img[idx] /= w0[idx];
            } else {
                img[idx] = 0.0;
            }
        }
    }
}

}  // namespace

SliceImage chang2d(const SliceSinogram& sino, const SliceImage& w0, double mask_radius) {
    SliceImage img = radon2d_inverse(sino, w0.grid);
    divide_masked_slice(img.values.data(), w0.values.data(), w0.grid, mask_radius * mask_radius,
                        "chang2d");
    return img;
}

VolumeGrid chang3d(const PlaneSinogram& sino, const WeightFields& wf, double mask_radius,
                   const Radon3dOptions& opt) {
    VolumeGrid vol = radon3d_inverse(sino, wf.grid, opt);
    const int n = wf.grid.n;
#pragma omp parallel for schedule(static)
    for (int iz = 0; iz < n; ++iz) {
        double z = wf.grid.coord(iz);
        divide_masked_slice(vol.values.data() + wf.slice_offset(iz), wf.w0.data() + wf.slice_offset(iz),
                            wf.grid, mask_disk_radius2(mask_radius, z), "chang3d");
    }
    return vol;
}

VolumeGrid slice_stack(const RaySinogram& rays, const WeightFields& wf, double mask_radius) {
    const CartesianGrid& g = wf.grid;
    if (rays.grid.nz != g.n || rays.grid.r != g.r)
        throw DataError("slice_stack: sinogram z-levels must match the volume grid");
    VolumeGrid out(g);
    const int nz = rays.grid.nz;
#pragma omp parallel for schedule(dynamic)
    for (int iz = 0; iz < nz; ++iz) {
        SliceSinogram slice(rays.grid.ns, rays.grid.nphi, rays.grid.r);
        const double* src = rays.slice(iz);
        std::copy(src, src + slice.values.size(), slice.values.begin());
        SliceImage img = radon2d_inverse(slice, g);
        double z = g.coord(iz);
        divide_masked_slice(img.values.data(), wf.w0.data() + wf.slice_offset(iz), g,
                            mask_disk_radius2(mask_radius, z), "slice_stack");
        std::copy(img.values.begin(), img.values.end(), out.values.begin() + wf.slice_offset(iz));
    }
    return out;
}

}  // namespace wrtkit

#pragma once

#include "wrtkit/sinogram.hpp"

namespace wrtkit {

// Bilinear sample of a 2D image; 0 outside the node square and the disk of
// radius r.
double sample_slice(const SliceImage& img, double x, double y);

// Classical 2D Radon transform (W = 1) of an image: trapezoid along each
// line with step <= `step` (default: the image grid spacing).
SliceSinogram radon2d_forward(const SliceImage& img, int ns, int nphi, double step = 0.0);

// Filtered backprojection: per-angle ramp filter via a DFT padded to 4x the
// profile length (filter built from the band-limited spatial kernel, so the
// low frequencies carry no bias), then backprojection with linear
// interpolation in s. No apodization window.
SliceImage radon2d_inverse(const SliceSinogram& sino, const CartesianGrid& grid);

}  // namespace wrtkit

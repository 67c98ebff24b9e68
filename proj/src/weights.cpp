#include "wrtkit/weights.hpp"

#include <vector>

namespace wrtkit {

namespace {

// suffix trapezoid sums of attenuation samples on a grid rotated so the
// second axis runs along the integration direction
struct RotatedSweep {
    int nu = 0, nv = 0;
    double l = 0, h = 0;
    std::vector<double> suffix;  // [a * nv + b]

    void build(const VolumeGrid& atten, double z, double cphi, double sphi) {
        h = atten.grid.dx();
        l = atten.grid.r + h;
        nu = nv = (int)std::lround(2.0 * l / h) + 1;
        suffix.assign((std::size_t)nu * nv, 0.0);
        // e_u = (cphi, sphi), e_v = d = (-sphi, cphi)
        for (int a = 0; a < nu; ++a) {
            double u = -l + a * h;
            double* row = suffix.data() + (std::size_t)a * nv;
            double prev_sample = 0.0, acc = 0.0;
            // march from the far end (v = +l) backwards
            for (int b = nv - 1; b >= 0; --b) {
                double v = -l + b * h;
                double sample = sample_volume(atten, {u * cphi - v * sphi, u * sphi + v * cphi, z});
                if (b < nv - 1) acc += 0.5 * (sample + prev_sample) * h;
                row[b] = acc;
                prev_sample = sample;
            }
        }
    }

    double da(double u, double v) const {
        double fu = (u + l) / h, fv = (v + l) / h;
        if (fu < 0 || fv < 0 || fu > nu - 1 || fv > nv - 1) return 0.0;
        int a = (int)fu, b = (int)fv;
        if (a >= nu - 1) a = nu - 2;
        if (b >= nv - 1) b = nv - 2;
        double xa = fu - a, xb = fv - b;
        const double* r0 = suffix.data() + (std::size_t)a * nv + b;
        const double* r1 = r0 + nv;
        return (r0[0] * (1 - xb) + r0[1] * xb) * (1 - xa) + (r1[0] * (1 - xb) + r1[1] * xb) * xa;
    }
};

}  // namespace

std::vector<double> slice_weight_table(const VolumeGrid& atten, int iz, int nphi) {
    const CartesianGrid& g = atten.grid;
    const int n = g.n;
    const double z = g.coord(iz), r = g.r;
    std::vector<double> table((std::size_t)nphi * n * n, 1.0);
    RotatedSweep sweep;
    for (int j = 0; j < nphi; ++j) {
        double phi = 2.0 * kPi * j / nphi;
        double cphi = std::cos(phi), sphi = std::sin(phi);
        sweep.build(atten, z, cphi, sphi);
        double* dst = table.data() + (std::size_t)j * n * n;
        for (int jy = 0; jy < n; ++jy) {
            double y = g.coord(jy);
            for (int ix = 0; ix < n; ++ix) {
                double x = g.coord(ix);
                if (x * x + y * y + z * z > r * r) continue;  // outside support: keep W = 1
                double u = x * cphi + y * sphi;
                double v = -x * sphi + y * cphi;
                dst[(std::size_t)ix + (std::size_t)n * jy] = std::exp(-sweep.da(u, v));
            }
        }
    }
    return table;
}

WeightFields attenuation_weight_fields(const VolumeGrid& atten, int nphi, int kmax) {
    const CartesianGrid& g = atten.grid;
    WeightFields wf;
    wf.grid = g;
    wf.nphi = nphi;
    wf.kmax = kmax;
    wf.w0.assign(g.size(), 0.0);
    wf.ck.assign(kmax, std::vector<cdouble>(g.size(), cdouble(0.0)));

    std::vector<cdouble> phase((std::size_t)nphi * kmax);
    for (int j = 0; j < nphi; ++j)
        for (int k = 1; k <= kmax; ++k)
            phase[(std::size_t)j * kmax + (k - 1)] = std::polar(1.0 / nphi, -k * 2.0 * kPi * j / nphi);

    const int n = g.n;
#pragma omp parallel for schedule(dynamic)
    for (int iz = 0; iz < n; ++iz) {
        std::vector<double> table = slice_weight_table(atten, iz, nphi);
        std::size_t off = wf.slice_offset(iz);
        for (int j = 0; j < nphi; ++j) {
            const double* w = table.data() + (std::size_t)j * n * n;
            for (std::size_t v = 0; v < (std::size_t)n * n; ++v) {
                wf.w0[off + v] += w[v] / nphi;
                for (int k = 1; k <= kmax; ++k)
                    wf.ck[k - 1][off + v] += w[v] * phase[(std::size_t)j * kmax + (k - 1)];
            }
        }
    }
    return wf;
}

WeightFields uniform_weight_fields(const CartesianGrid& grid, int nphi, int kmax) {
    WeightFields wf;
    wf.grid = grid;
    wf.nphi = nphi;
    wf.kmax = kmax;
    wf.w0.assign(grid.size(), 1.0);
    wf.ck.assign(kmax, std::vector<cdouble>(grid.size(), cdouble(0.0)));
    return wf;
}

std::vector<cdouble> fourier_coefficients(const double* samples, int nphi, int kmax) {
    std::vector<cdouble> c(kmax + 1, cdouble(0.0));
    for (int j = 0; j < nphi; ++j) {
        double phi = 2.0 * kPi * j / nphi;
        for (int k = 0; k <= kmax; ++k) c[k] += samples[j] * std::polar(1.0 / nphi, -k * phi);
    }
    return c;
}

double normalized_assoc_legendre(int j, int l, double t) {
    // seed: N_ll P_l^l, then upward recurrence in degree
    double pmm = std::sqrt(1.0 / (4.0 * kPi));
    double somx2 = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int m = 1; m <= l; ++m) pmm *= somx2 * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    if (j == l) return pmm;
    double pmmp1 = t * std::sqrt(2.0 * l + 3.0) * pmm;
    if (j == l + 1) return pmmp1;
    double pjl = 0.0;
    for (int jj = l + 2; jj <= j; ++jj) {
        double a = std::sqrt((4.0 * jj * jj - 1.0) / ((double)jj * jj - (double)l * l));
        double b = std::sqrt(((2.0 * jj + 1.0) * ((jj - 1.0) * (jj - 1.0) - l * l)) /
                             ((2.0 * jj - 3.0) * ((double)jj * jj - (double)l * l)));
        pjl = a * t * pmmp1 - b * pmm;
        pmm = pmmp1;
        pmmp1 = pjl;
    }
    return pjl;
}

SphericalCoefficients spherical_coefficients(const std::vector<double>& samples, const PlaneGrid& pg,
                                             int jmax) {
    if (pg.nphi < 2 * jmax + 2 || pg.npsi < jmax + 1)
        throw DataError("spherical_coefficients: direction grid too coarse for requested order");
    if (samples.size() != (std::size_t)pg.nphi * pg.npsi)
        throw DataError("spherical_coefficients: sample layout must be [phi][psi]");

    SphericalCoefficients out;
    out.jmax = jmax;
    out.f.assign((std::size_t)(jmax + 1) * (jmax + 1), cdouble(0.0));

    // Fourier analysis in phi first: A_l(k) = dphi * sum_j W e^{-il phi_j}
    std::vector<cdouble> al((std::size_t)(2 * jmax + 1) * pg.npsi, cdouble(0.0));
    for (int k = 0; k < pg.npsi; ++k)
        for (int j = 0; j < pg.nphi; ++j) {
            double w = samples[(std::size_t)j + (std::size_t)pg.nphi * k];
            for (int l = -jmax; l <= jmax; ++l)
                al[(std::size_t)(l + jmax) * pg.npsi + k] += w * std::polar(pg.dphi(), -l * pg.phi(j));
        }

    const double inv_sqrt4pi = 1.0 / std::sqrt(4.0 * kPi);
    for (int j = 0; j <= jmax; ++j)
        for (int l = -j; l <= j; ++l) {
            cdouble acc(0.0);
            for (int k = 0; k < pg.npsi; ++k)
                acc += al[(std::size_t)(l + jmax) * pg.npsi + k] * pg.lambda[k] *
                       normalized_assoc_legendre(j, std::abs(l), pg.t[k]);
            out.f[(std::size_t)j * (j + 1) + l] = acc * inv_sqrt4pi;
        }
    return out;
}

}  // namespace wrtkit

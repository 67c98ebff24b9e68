#include "wrtkit/radon2d.hpp"

#include <vector>

#include "wrtkit/fft.hpp"

namespace wrtkit {

double sample_slice(const SliceImage& img, double x, double y) {
    const CartesianGrid& g = img.grid;
    double r = g.r;
    if (x * x + y * y > r * r) return 0.0;
    double inv = 1.0 / g.dx();
    double fx = (x + r) * inv, fy = (y + r) * inv;
    if (fx < 0 || fy < 0) return 0.0;
    int i = (int)fx, j = (int)fy;
    if (i >= g.n - 1) {
        if (fx > g.n - 1) return 0.0;
        i = g.n - 2;
    }
    if (j >= g.n - 1) {
        if (fy > g.n - 1) return 0.0;
        j = g.n - 2;
    }
    double ax = fx - i, ay = fy - j;
    std::size_t n = (std::size_t)g.n, base = i + n * j;
    const double* v = img.values.data();
    double c0 = v[base] * (1 - ax) + v[base + 1] * ax;
    double c1 = v[base + n] * (1 - ax) + v[base + n + 1] * ax;
    return c0 * (1 - ay) + c1 * ay;
}

SliceSinogram radon2d_forward(const SliceImage& img, int ns, int nphi, double step) {
    SliceSinogram sino(ns, nphi, img.grid.r);
    if (step <= 0) step = img.grid.dx();
    double r = img.grid.r;
#pragma omp parallel for schedule(static)
    for (int iphi = 0; iphi < nphi; ++iphi) {
        double phi = sino.phi(iphi);
        double c = std::cos(phi), sn = std::sin(phi);
        for (int is = 0; is < ns; ++is) {
            double s = sino.s(is);
            double t2 = r * r - s * s;
            if (t2 <= 0) continue;
            double half = std::sqrt(t2);
            int nseg = std::max(1, (int)std::ceil(2.0 * half / step * (1.0 - 1e-12)));
            double dt = 2.0 * half / nseg;
            double acc = 0.0;
            for (int q = 0; q <= nseg; ++q) {
                double t = -half + q * dt;
                acc += sample_slice(img, s * c - t * sn, s * sn + t * c) *
                       ((q == 0 || q == nseg) ? 0.5 : 1.0);
            }
            sino.at(is, iphi) = acc * dt;
        }
    }
    return sino;
}

namespace {

// DFT of the band-limited ramp kernel h[j] (h[0] = 1/(4 ds^2),
// h[odd j] = -1/(pi^2 j^2 ds^2), h[even j] = 0) on a length-L circle.
std::vector<double> ramp_filter_dft(int len, double ds) {
    std::vector<cdouble> h(len, 0.0);
    h[0] = 1.0 / (4.0 * ds * ds);
    for (int j = 1; j < len / 2 + 1; ++j) {
        if (j % 2 == 0) continue;
        double v = -1.0 / (kPi * kPi * j * j * ds * ds);
        h[j] += v;
        h[(len - j) % len] += v;
    }
    fft_1d(h.data(), len, false);
    std::vector<double> H(len);
    for (int q = 0; q < len; ++q) H[q] = h[q].real();
    return H;
}

}  // namespace

SliceImage radon2d_inverse(const SliceSinogram& sino, const CartesianGrid& grid) {
    const int ns = sino.ns, nphi = sino.nphi;
    const double ds = sino.ds(), r = sino.r;
    const int len = next_fast_len(4 * ns);
    const std::vector<double> H = ramp_filter_dft(len, ds);

    // ramp-filtered profiles q(s_i, phi_k), padded convolution
    std::vector<double> filt((std::size_t)ns * nphi);
#pragma omp parallel
    {
        std::vector<cdouble> buf(len);
#pragma omp for schedule(static)
        for (int iphi = 0; iphi < nphi; ++iphi) {
            for (int i = 0; i < len; ++i) buf[i] = 0.0;
            for (int is = 0; is < ns; ++is) buf[is] = sino.at(is, iphi);
            fft_1d(buf.data(), len, false);
            for (int q = 0; q < len; ++q) buf[q] *= H[q];
            fft_1d(buf.data(), len, true);
            double scale = ds / len;
            for (int is = 0; is < ns; ++is) filt[(std::size_t)is + (std::size_t)ns * iphi] = buf[is].real() * scale;
        }
    }

    // backprojection: f(x) = dphi/(4 pi) * sum_phi q(x . alpha(phi))
    SliceImage img(grid);
    const int n = grid.n;
    const double bp_scale = sino.dphi() / (4.0 * kPi);
    std::vector<double> cs(nphi), sn(nphi);
    for (int k = 0; k < nphi; ++k) {
        cs[k] = std::cos(sino.phi(k));
        sn[k] = std::sin(sino.phi(k));
    }
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        double y = grid.coord(j);
        for (int i = 0; i < n; ++i) {
            double x = grid.coord(i);
            double acc = 0.0;
            for (int k = 0; k < nphi; ++k) {
                double s = x * cs[k] + y * sn[k];
                double fs = (s + r) / ds;
                if (fs < 0 || fs > ns - 1) continue;
                int i0 = (int)fs;
                if (i0 >= ns - 1) i0 = ns - 2;
                double a = fs - i0;
                const double* col = filt.data() + (std::size_t)ns * k;
                acc += col[i0] * (1 - a) + col[i0 + 1] * a;
            }
            img.at(i, j) = acc * bp_scale;
        }
    }
    return img;
}

}  // namespace wrtkit

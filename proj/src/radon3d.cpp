#include "wrtkit/radon3d.hpp"

#include <algorithm>
#include <vector>

namespace wrtkit {

namespace {

// series I0, adequate over the beta range used here
double bessel_i0(double x) {
    double term = 1.0, sum = 1.0, x2 = x * x / 4.0;
    for (int k = 1; k < 200; ++k) {
        term *= x2 / (k * (double)k);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// Kaiser-Bessel profile I0(beta sqrt(1-u^2)) on |u| <= 1, tabulated once per
// transform call.
struct KbKernel {
    int w = 3;
    double beta = 0.0;
    std::vector<double> lut;  // over u in [0, 1]

    KbKernel(int half_width, double alpha) : w(half_width) {
        double wf = 2.0 * w;
        beta = kPi * std::sqrt(sqr(wf / alpha) * sqr(alpha - 0.5) - 0.8);
        lut.resize(4097);
        for (int i = 0; i <= 4096; ++i) {
            double u = i / 4096.0;
            lut[i] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - u * u)));
        }
    }
    double operator()(double u) const {
        double a = std::abs(u) * 4096.0;
        if (a >= 4096.0) return 0.0;
        int i = (int)a;
        double f = a - i;
        return lut[i] * (1 - f) + lut[i + 1] * f;
    }
    // 1D Fourier transform of the profile scaled to half-width w*dxi
    double image_response(double dxi, double x) const {
        double v = w * dxi * x;
        double t = beta * beta - v * v;
        double phi;
        if (t > 1e-10) {
            double s = std::sqrt(t);
            phi = 2.0 * std::sinh(s) / s;
        } else if (t < -1e-10) {
            double s = std::sqrt(-t);
            phi = 2.0 * std::sin(s) / s;
        } else {
            phi = 2.0 * (1.0 + t / 6.0);
        }
        return w * dxi * phi;
    }
};

struct GridSetup {
    int g = 0;          // lattice size per axis
    double dxi = 0.0;   // lattice spacing in frequency
    int m = 0;          // radial DFT length
    double dsig = 0.0;  // radial frequency step
    KbKernel kernel;

    GridSetup(const CartesianGrid& vg, int ns, double ds, const Radon3dOptions& opt)
        : kernel(opt.kernel_half_width,
                 (double)pick_lattice(vg.n, opt) / vg.n) {
        g = pick_lattice(vg.n, opt);
        dxi = 2.0 * kPi / (g * vg.dx());
        m = opt.radial_len > 0 ? opt.radial_len : next_fast_len(4 * ns);
        dsig = 2.0 * kPi / (m * ds);
    }
    static int pick_lattice(int n, const Radon3dOptions& opt) {
        int want = (int)std::ceil(opt.oversample * n);
        return next_fast_len(std::max(want, n + 2 * opt.kernel_half_width + 2));
    }
};

inline int wrap(int i, int g) {
    int r = i % g;
    return r < 0 ? r + g : r;
}

// 1D kernel taps around continuous lattice coordinate c.
struct Taps {
    int first = 0, count = 0;
    double val[16];
};

inline void make_taps(const KbKernel& k, double c, int g, Taps& t) {
    int lo = (int)std::ceil(c - k.w);
    int hi = (int)std::floor(c + k.w);
    t.first = lo;
    t.count = hi - lo + 1;
    for (int n = lo; n <= hi; ++n) t.val[n - lo] = k((c - n) / k.w);
    (void)g;
}

// forward DFT of every s-profile: out[q + m*(j + nphi*k)] = ghat(sigma_q),
// with ghat(sigma) = ds * sum_i g(s_i) exp(-i sigma s_i).
template <typename T>
std::vector<cdouble> profile_ffts(const T* values, const PlaneGrid& pg, int m) {
    const int ns = pg.ns, nphi = pg.nphi, npsi = pg.npsi;
    const double ds = pg.ds(), r = pg.r, dsig = 2.0 * kPi / (m * ds);
    std::vector<cdouble> out((std::size_t)m * nphi * npsi);
#pragma omp parallel
    {
        std::vector<cdouble> buf(m);
#pragma omp for collapse(2) schedule(static)
        for (int k = 0; k < npsi; ++k)
            for (int j = 0; j < nphi; ++j) {
                const std::size_t src = (std::size_t)ns * ((std::size_t)j + (std::size_t)nphi * k);
                for (int i = 0; i < m; ++i) buf[i] = 0.0;
                for (int i = 0; i < ns; ++i) buf[i] = values[src + i];
                fft_1d(buf.data(), m, false);
                cdouble* dst = out.data() + (std::size_t)m * ((std::size_t)j + (std::size_t)nphi * k);
                for (int slot = 0; slot < m; ++slot) {
                    int q = slot <= m / 2 ? slot : slot - m;
                    double sig = q * dsig;
                    dst[slot] = buf[slot] * ds * std::polar(1.0, sig * r);
                }
            }
    }
    return out;
}

}  // namespace

VolumeGrid radon3d_inverse(const PlaneSinogram& sino, const CartesianGrid& grid,
                           const Radon3dOptions& opt) {
    const PlaneGrid& pg = sino.grid;
    GridSetup su(grid, pg.ns, pg.ds(), opt);
    const int g = su.g, m = su.m, w = su.kernel.w;
    const int nphi = pg.nphi, npsi = pg.npsi;
    const double dxi = su.dxi, dsig = su.dsig;
    const double sig_max = kPi / grid.dx();  // volume Nyquist clip

    std::vector<cdouble> prof = profile_ffts(sino.values.data(), pg, m);

    // per-direction trig and per-(q,k) z coordinates
    std::vector<double> cphi(nphi), sphi(nphi), spsi(npsi);
    for (int j = 0; j < nphi; ++j) {
        cphi[j] = std::cos(pg.phi(j));
        sphi[j] = std::sin(pg.phi(j));
    }
    for (int k = 0; k < npsi; ++k) spsi[k] = std::sqrt(std::max(0.0, 1.0 - pg.t[k] * pg.t[k]));

    const double dens_base = dsig * pg.dphi() / (2.0 * std::pow(2.0 * kPi, 3));

    std::vector<cdouble> lattice((std::size_t)g * g * g, cdouble(0.0));

    // deterministic scatter: fixed z-slab decomposition, each (q,k) pair is
    // processed by every slab its kernel support touches, writes stay inside
    // the slab.
    const int n_slabs = 64;
    const int slab_h = (g + n_slabs - 1) / n_slabs;
    struct Pair {
        int q, k;
    };
    std::vector<std::vector<Pair>> slab_pairs(n_slabs);
    for (int k = 0; k < npsi; ++k)
        for (int slot = 0; slot < m; ++slot) {
            int q = slot <= m / 2 ? slot : slot - m;
            if (q == 0) continue;
            double sig = q * dsig;
            if (std::abs(sig) > sig_max * (1.0 + 1e-12)) continue;
            double cz = sig * pg.t[k] / dxi;
            int lo = (int)std::ceil(cz - w), hi = (int)std::floor(cz + w);
            int prev_slab = -1;
            for (int n = lo; n <= hi; ++n) {
                int slab = wrap(n, g) / slab_h;
                if (slab != prev_slab) {
                    if (slab_pairs[slab].empty() || slab_pairs[slab].back().q != q ||
                        slab_pairs[slab].back().k != k)
                        slab_pairs[slab].push_back({q, k});
                    prev_slab = slab;
                }
            }
        }

#pragma omp parallel for schedule(dynamic, 1)
    for (int slab = 0; slab < n_slabs; ++slab) {
        int z0 = slab * slab_h, z1 = std::min(g, z0 + slab_h);
        if (z0 >= g) continue;
        Taps tx, ty, tz;
        for (const Pair& pr : slab_pairs[slab]) {
            double sig = pr.q * dsig;
            double dens = dens_base * sig * sig * pg.lambda[pr.k];
            double cz = sig * pg.t[pr.k] / dxi;
            make_taps(su.kernel, cz, g, tz);
            const cdouble* prow = prof.data() + (std::size_t)m * (std::size_t)nphi * pr.k;
            for (int j = 0; j < nphi; ++j) {
                cdouble v = prow[(std::size_t)m * j + wrap(pr.q, m)] * dens;
                double cx = sig * spsi[pr.k] * cphi[j] / dxi;
                double cy = sig * spsi[pr.k] * sphi[j] / dxi;
                make_taps(su.kernel, cx, g, tx);
                make_taps(su.kernel, cy, g, ty);
                for (int a = 0; a < tz.count; ++a) {
                    int zz = wrap(tz.first + a, g);
                    if (zz < z0 || zz >= z1) continue;
                    cdouble vz = v * tz.val[a];
                    cdouble* plane = lattice.data() + (std::size_t)g * g * zz;
                    for (int b = 0; b < ty.count; ++b) {
                        cdouble vy = vz * ty.val[b];
                        cdouble* row = plane + (std::size_t)g * wrap(ty.first + b, g);
                        for (int cc = 0; cc < tx.count; ++cc)
                            row[wrap(tx.first + cc, g)] += vy * tx.val[cc];
                    }
                }
            }
        }
    }

    fft_3d(lattice.data(), g, g, g, true);

    // deapodize and crop to the volume nodes
    VolumeGrid out(grid);
    const int n = grid.n, half = (n - 1) / 2;
    std::vector<double> inv_c(n);
    for (int i = 0; i < n; ++i)
        inv_c[i] = 1.0 / su.kernel.image_response(dxi, grid.coord(i));
    const double scale = dxi * dxi * dxi;
#pragma omp parallel for schedule(static)
    for (int kz = 0; kz < n; ++kz) {
        int zz = wrap(kz - half, g);
        for (int jy = 0; jy < n; ++jy) {
            int yy = wrap(jy - half, g);
            const cdouble* row = lattice.data() + (std::size_t)g * ((std::size_t)yy + (std::size_t)g * zz);
            double cyz = scale * inv_c[jy] * inv_c[kz];
            for (int ix = 0; ix < n; ++ix)
                out.at(ix, jy, kz) = row[wrap(ix - half, g)].real() * cyz * inv_c[ix];
        }
    }
    return out;
}

namespace {

std::vector<cdouble> forward_gather(const std::vector<cdouble>& values, const CartesianGrid& vg,
                                    const PlaneGrid& pg, const Radon3dOptions& opt) {
    GridSetup su(vg, pg.ns, pg.ds(), opt);
    const int g = su.g, m = su.m;
    const int n = vg.n, half = (n - 1) / 2;
    const int nphi = pg.nphi, npsi = pg.npsi;
    const double dxi = su.dxi, dsig = su.dsig;
    const double sig_max = kPi / vg.dx();

    // deapodized, zero-padded volume on the oversampled lattice
    std::vector<cdouble> lattice((std::size_t)g * g * g, cdouble(0.0));
    std::vector<double> inv_c(n);
    for (int i = 0; i < n; ++i)
        inv_c[i] = 1.0 / su.kernel.image_response(dxi, vg.coord(i));
    const double pre = vg.dx() * vg.dx() * vg.dx() * dxi * dxi * dxi;
#pragma omp parallel for schedule(static)
    for (int kz = 0; kz < n; ++kz) {
        int zz = wrap(kz - half, g);
        for (int jy = 0; jy < n; ++jy) {
            int yy = wrap(jy - half, g);
            cdouble* row = lattice.data() + (std::size_t)g * ((std::size_t)yy + (std::size_t)g * zz);
            const cdouble* src = values.data() + (std::size_t)n * ((std::size_t)jy + (std::size_t)n * kz);
            double cyz = pre * inv_c[jy] * inv_c[kz];
            for (int ix = 0; ix < n; ++ix)
                row[wrap(ix - half, g)] = src[ix] * (cyz * inv_c[ix]);
        }
    }

    fft_3d(lattice.data(), g, g, g, false);

    std::vector<double> cphi(nphi), sphi(nphi), spsi(npsi);
    for (int j = 0; j < nphi; ++j) {
        cphi[j] = std::cos(pg.phi(j));
        sphi[j] = std::sin(pg.phi(j));
    }
    for (int k = 0; k < npsi; ++k) spsi[k] = std::sqrt(std::max(0.0, 1.0 - pg.t[k] * pg.t[k]));

    std::vector<cdouble> prof((std::size_t)m * nphi * npsi, cdouble(0.0));
#pragma omp parallel
    {
        Taps tx, ty, tz;
#pragma omp for collapse(2) schedule(static)
        for (int k = 0; k < npsi; ++k)
            for (int j = 0; j < nphi; ++j) {
                cdouble* dst = prof.data() + (std::size_t)m * ((std::size_t)j + (std::size_t)nphi * k);
                for (int slot = 0; slot < m; ++slot) {
                    int q = slot <= m / 2 ? slot : slot - m;
                    double sig = q * dsig;
                    if (std::abs(sig) > sig_max * (1.0 + 1e-12)) continue;
                    double cx = sig * spsi[k] * cphi[j] / dxi;
                    double cy = sig * spsi[k] * sphi[j] / dxi;
                    double cz = sig * pg.t[k] / dxi;
                    make_taps(su.kernel, cx, g, tx);
                    make_taps(su.kernel, cy, g, ty);
                    make_taps(su.kernel, cz, g, tz);
                    cdouble acc(0.0);
                    for (int a = 0; a < tz.count; ++a) {
                        const cdouble* plane = lattice.data() + (std::size_t)g * g * wrap(tz.first + a, g);
                        cdouble accy(0.0);
                        for (int b = 0; b < ty.count; ++b) {
                            const cdouble* row = plane + (std::size_t)g * wrap(ty.first + b, g);
                            cdouble accx(0.0);
                            for (int cc = 0; cc < tx.count; ++cc)
                                accx += row[wrap(tx.first + cc, g)] * tx.val[cc];
                            accy += accx * ty.val[b];
                        }
                        acc += accy * tz.val[a];
                    }
                    dst[slot] = acc;
                }
            }
    }
    return prof;
}

}  // namespace

PlaneSinogramC radon3d_forward_complex(const std::vector<cdouble>& values, const CartesianGrid& vg,
                                       const PlaneGrid& pg, const Radon3dOptions& opt) {
    GridSetup su(vg, pg.ns, pg.ds(), opt);
    const int m = su.m;
    std::vector<cdouble> prof = forward_gather(values, vg, pg, opt);

    PlaneSinogramC out(pg);
    const int ns = pg.ns, nphi = pg.nphi, npsi = pg.npsi;
    const double r = pg.r, dsig = su.dsig;
#pragma omp parallel
    {
        std::vector<cdouble> buf(m);
#pragma omp for collapse(2) schedule(static)
        for (int k = 0; k < npsi; ++k)
            for (int j = 0; j < nphi; ++j) {
                const cdouble* src = prof.data() + (std::size_t)m * ((std::size_t)j + (std::size_t)nphi * k);
                for (int slot = 0; slot < m; ++slot) {
                    int q = slot <= m / 2 ? slot : slot - m;
                    buf[slot] = src[slot] * std::polar(1.0, -q * dsig * r);
                }
                fft_1d(buf.data(), m, true);
                const double scale = dsig / (2.0 * kPi);
                for (int i = 0; i < ns; ++i)
                    out.values[out.index(i, j, k)] = buf[i] * scale;
            }
    }
    return out;
}

PlaneSinogram radon3d_forward(const VolumeGrid& vol, const PlaneGrid& grid, const Radon3dOptions& opt) {
    std::vector<cdouble> cvals(vol.values.begin(), vol.values.end());
    PlaneSinogramC c = radon3d_forward_complex(cvals, vol.grid, grid, opt);
    PlaneSinogram out(grid);
    for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] = c.values[i].real();
    return out;
}

VolumeGrid radon3d_inverse_fbp(const PlaneSinogram& sino, const CartesianGrid& grid, int radial_len) {
    const PlaneGrid& pg = sino.grid;
    const int ns = pg.ns, nphi = pg.nphi, npsi = pg.npsi;
    const int m = radial_len > 0 ? radial_len : next_fast_len(4 * ns);
    const double ds = pg.ds(), dsig = 2.0 * kPi / (m * ds);

    // q = second s-derivative with a spectral sigma^2 filter
    std::vector<double> filt((std::size_t)ns * nphi * npsi);
#pragma omp parallel
    {
        std::vector<cdouble> buf(m);
#pragma omp for collapse(2) schedule(static)
        for (int k = 0; k < npsi; ++k)
            for (int j = 0; j < nphi; ++j) {
                for (int i = 0; i < m; ++i) buf[i] = 0.0;
                const std::size_t src = sino.index(0, j, k);
                for (int i = 0; i < ns; ++i) buf[i] = sino.values[src + i];
                fft_1d(buf.data(), m, false);
                for (int slot = 0; slot < m; ++slot) {
                    int q = slot <= m / 2 ? slot : slot - m;
                    double sig = q * dsig;
                    buf[slot] *= sig * sig;
                }
                fft_1d(buf.data(), m, true);
                const double scale = ds * dsig / (2.0 * kPi);
                for (int i = 0; i < ns; ++i)
                    filt[src + i] = buf[i].real() * scale;
            }
    }

    // spherical backprojection u(x) = 1/(8 pi^2) sum dphi lambda_k q(x.theta)
    VolumeGrid out(grid);
    const int n = grid.n;
    const double scale = pg.dphi() / (8.0 * kPi * kPi);
    std::vector<Vec3> dirs((std::size_t)nphi * npsi);
    for (int k = 0; k < npsi; ++k)
        for (int j = 0; j < nphi; ++j)
            dirs[(std::size_t)j + (std::size_t)nphi * k] = direction(pg.phi(j), pg.psi(k));
#pragma omp parallel for schedule(static)
    for (int kz = 0; kz < n; ++kz) {
        double z = grid.coord(kz);
        for (int jy = 0; jy < n; ++jy) {
            double y = grid.coord(jy);
            for (int ix = 0; ix < n; ++ix) {
                Vec3 x = {grid.coord(ix), y, z};
                double acc = 0.0;
                for (int k = 0; k < npsi; ++k) {
                    double lam = pg.lambda[k];
                    for (int j = 0; j < nphi; ++j) {
                        const Vec3& th = dirs[(std::size_t)j + (std::size_t)nphi * k];
                        double s = dot(x, th);
                        double fs = (s + pg.r) / ds;
                        if (fs < 0 || fs > ns - 1) continue;
                        int i0 = (int)fs;
                        if (i0 >= ns - 1) i0 = ns - 2;
                        double a = fs - i0;
                        const double* col = filt.data() + sino.index(0, j, k);
                        acc += lam * (col[i0] * (1 - a) + col[i0 + 1] * a);
                    }
                }
                out.at(ix, jy, kz) = acc * scale;
            }
        }
    }
    return out;
}

}  // namespace wrtkit

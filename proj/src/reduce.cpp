#include "wrtkit/reduce.hpp"

#include <vector>

namespace wrtkit {

namespace {

// Natural cubic spline second derivatives for uniformly spaced samples,
// Thomas solve of the tridiagonal system; M[0] = M[n-1] = 0.
void spline_second_derivatives(const double* g, int n, double h, double* m, double* scratch) {
    m[0] = m[n - 1] = 0.0;
    if (n < 3) return;
    // rows i = 1..n-2: (1/6) m[i-1] + (2/3) m[i] + (1/6) m[i+1] = rhs_i
    double* c = scratch;  // modified upper coefficients
    double rhs = (g[2] - 2.0 * g[1] + g[0]) / (h * h);
    double beta = 2.0 / 3.0;
    m[1] = rhs / beta;
    for (int i = 2; i <= n - 2; ++i) {
        c[i] = (1.0 / 6.0) / beta;
        beta = 2.0 / 3.0 - (1.0 / 6.0) * c[i];
        rhs = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);
        m[i] = (rhs - (1.0 / 6.0) * m[i - 1]) / beta;
    }
    for (int i = n - 3; i >= 1; --i) m[i] -= c[i + 1] * m[i + 1];
}

struct SplineRow {
    const double* g;
    const double* m;
};

inline double spline_eval(const SplineRow& row, int ns, double r, double ds, double sigma) {
    if (sigma < -r || sigma > r) return 0.0;
    double fs = (sigma + r) / ds;
    int i = (int)fs;
    if (i >= ns - 1) i = ns - 2;
    double b = fs - i, a = 1.0 - b;
    double h2 = ds * ds / 6.0;
    return a * row.g[i] + b * row.g[i + 1] +
           ((a * a * a - a) * row.m[i] + (b * b * b - b) * row.m[i + 1]) * h2;
}

inline double linear_eval(const SplineRow& row, int ns, double r, double ds, double sigma) {
    if (sigma < -r || sigma > r) return 0.0;
    double fs = (sigma + r) / ds;
    int i = (int)fs;
    if (i >= ns - 1) i = ns - 2;
    double b = fs - i;
    return row.g[i] * (1.0 - b) + row.g[i + 1] * b;
}

}  // namespace

PlaneSinogram reduce(const RaySinogram& rays, const PlaneGrid& grid, const ReductionConfig& cfg) {
    const RayGrid& rg = rays.grid;
    if (!grid.compatible_with(rg))
        throw DataError("reduce: ray grid and plane grid must share ns, nphi and R");
    if (rg.nz < 3) throw DataError("reduce: need at least 3 z-levels");

    const int nz = rg.nz, ns = rg.ns, nphi = rg.nphi, npsi = grid.npsi;
    const double r = rg.r, ds = rg.ds(), dz = rg.dz();

    // per-(z, phi) spline tables over s
    std::vector<double> m2;
    if (cfg.spline_sigma) {
        m2.resize(rays.values.size());
#pragma omp parallel
        {
            std::vector<double> scratch(ns);
#pragma omp for collapse(2) schedule(static)
            for (int iz = 0; iz < nz; ++iz)
                for (int iphi = 0; iphi < nphi; ++iphi) {
                    std::size_t off = rays.index(iz, 0, iphi);
                    spline_second_derivatives(rays.values.data() + off, ns, ds, m2.data() + off,
                                              scratch.data());
                }
        }
    }

    auto row_value = [&](int iz, int iphi, double sigma) {
        SplineRow row{rays.values.data() + rays.index(iz, 0, iphi),
                      cfg.spline_sigma ? m2.data() + rays.index(iz, 0, iphi) : nullptr};
        return cfg.spline_sigma ? spline_eval(row, ns, r, ds, sigma)
                                : linear_eval(row, ns, r, ds, sigma);
    };

    PlaneSinogram out(grid);
#pragma omp parallel for collapse(2) schedule(static)
    for (int ipsi = 0; ipsi < npsi; ++ipsi)
        for (int iphi = 0; iphi < nphi; ++iphi) {
            const double cpsi = grid.t[ipsi];
            const double spsi = std::sqrt(std::max(0.0, 1.0 - cpsi * cpsi));
            for (int is = 0; is < ns; ++is) {
                const double s = grid.s(is);
                const double t2 = r * r - s * s;
                if (t2 <= 0) continue;
                const double half = std::sqrt(t2);
                const int nseg = std::max(1, (int)std::ceil(2.0 * half / ds * (1.0 - 1e-12)));
                const double dtau = 2.0 * half / nseg;
                double acc = 0.0;
                for (int q = 0; q <= nseg; ++q) {
                    const double tau = -half + q * dtau;
                    const double zv = s * cpsi + tau * spsi;
                    if (zv < -r || zv > r) continue;
                    const double sigma = s * spsi - tau * cpsi;
                    // 3 z-levels around zv, one-sided at the slab ends
                    int izc = (int)std::lround((zv + r) / dz);
                    if (izc < 1) izc = 1;
                    if (izc > nz - 2) izc = nz - 2;
                    const double u = (zv - rg.z(izc)) / dz;
                    const double l0 = 0.5 * u * (u - 1.0), l1 = 1.0 - u * u, l2 = 0.5 * u * (u + 1.0);
                    const double v = l0 * row_value(izc - 1, iphi, sigma) +
                                     l1 * row_value(izc, iphi, sigma) +
                                     l2 * row_value(izc + 1, iphi, sigma);
                    acc += v * ((q == 0 || q == nseg) ? 0.5 : 1.0);
                }
                out.at(is, iphi, ipsi) = acc * dtau;
            }
        }
    return out;
}

double reduce_weight(const WeightEvaluator& w, const Vec3& x, double phi, double psi) {
    (void)psi;  // the reduced weight has no psi dependence
    return w(x, direction(phi + kPi / 2.0, kPi / 2.0));
}

double reduced_w0_sphere(const WeightEvaluator& w, const Vec3& x, const PlaneGrid& pg) {
    double acc = 0.0;
    for (int k = 0; k < pg.npsi; ++k) {
        double row = 0.0;
        for (int j = 0; j < pg.nphi; ++j) row += reduce_weight(w, x, pg.phi(j), pg.psi(k));
        acc += row * pg.lambda[k];
    }
    return acc * pg.dphi() / (4.0 * kPi);
}

double reduced_w0(const WeightEvaluator& w, const Vec3& x, int nphi) {
    double acc = 0.0;
    for (int j = 0; j < nphi; ++j) acc += reduce_weight(w, x, 2.0 * kPi * j / nphi);
    return acc / nphi;
}

}  // namespace wrtkit

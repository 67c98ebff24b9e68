#include "wrtkit/kunyansky.hpp"

#include <algorithm>
#include <string>

namespace wrtkit {

namespace {

// sup over the domain slice of |c_k| / w0
double sup_ratio_slice(const WeightFields& wf, int k, int iz, double disk_r2) {
    const CartesianGrid& g = wf.grid;
    const int n = g.n;
    const double* w0 = wf.w0.data() + wf.slice_offset(iz);
    const cdouble* ck = wf.ck[k - 1].data() + wf.slice_offset(iz);
    double sup = 0.0;
    for (int j = 0; j < n; ++j) {
        double y = g.coord(j);
        for (int i = 0; i < n; ++i) {
            double x = g.coord(i);
            if (x * x + y * y > disk_r2) continue;
            std::size_t idx = (std::size_t)i + (std::size_t)n * j;
            if (w0[idx] <= kW0Epsilon) continue;
            sup = std::max(sup, std::abs(ck[idx]) / w0[idx]);
        }
    }
    return sup;
}

}  // namespace

std::vector<double> psi_truncation_kernel(int l, int J, const std::vector<double>& t_values) {
    // K_{l,J}(t) = sum_{j=|l|..J} 2 pi N_jl^2 (int P_j^l) P_j^l(t); the
    // moments int_{-1}^{1} P~_j^l dt are evaluated with a fine GL rule
    auto [qt, qw] = gauss_legendre(64);
    std::vector<double> mom;
    for (int j = std::abs(l); j <= J; ++j) {
        double m = 0.0;
        for (std::size_t q = 0; q < qt.size(); ++q)
            m += qw[q] * normalized_assoc_legendre(j, std::abs(l), qt[q]);
        mom.push_back(m);
    }
    std::vector<double> out(t_values.size(), 0.0);
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        double acc = 0.0;
        int idx = 0;
        for (int j = std::abs(l); j <= J; ++j, ++idx)
            acc += 2.0 * kPi * mom[idx] * normalized_assoc_legendre(j, std::abs(l), t_values[i]);
        out[i] = acc;
    }
    return out;
}

double sigma_bound_2d(const WeightFields& wf, int iz, double domain_radius, int m) {
    if (2 * m > wf.kmax) throw DataError("sigma_bound_2d: weight harmonics stored only to order " +
                                         std::to_string(wf.kmax));
    double z = wf.grid.coord(iz);
    double disk_r2 = mask_disk_radius2(domain_radius, z);
    double sigma = 0.0;
    for (int k = 2; k <= 2 * m; k += 2) sigma += 2.0 * sup_ratio_slice(wf, k, iz, disk_r2);
    return sigma;
}

double sigma_bound_3d(const WeightFields& wf, double domain_radius, int m) {
    if (2 * m > wf.kmax) throw DataError("sigma_bound_3d: weight harmonics stored only to order " +
                                         std::to_string(wf.kmax));
    // sup_psi |K_{l,2m}| on a fine grid of cos(psi)
    std::vector<double> tfine(2001);
    for (int i = 0; i <= 2000; ++i) tfine[i] = -1.0 + i * 1e-3;
    double sigma = 0.0;
    for (int l = 2; l <= 2 * m; l += 2) {
        std::vector<double> kern = psi_truncation_kernel(l, 2 * m, tfine);
        double kmaxv = 0.0;
        for (double v : kern) kmaxv = std::max(kmaxv, std::abs(v));
        double sup = 0.0;
        const int n = wf.grid.n;
        for (int iz = 0; iz < n; ++iz) {
            double z = wf.grid.coord(iz);
            double disk_r2 = mask_disk_radius2(domain_radius, z);
            if (disk_r2 <= 0) continue;
            sup = std::max(sup, sup_ratio_slice(wf, l, iz, disk_r2));
        }
        sigma += 2.0 * kmaxv * sup;
    }
    return sigma;
}

namespace {

// v / w0 on the domain disk, 0 outside; guard degenerate w0
void masked_divide(std::vector<double>& v, const double* w0, const CartesianGrid& g, double disk_r2,
                   const char* where) {
    const int n = g.n;
    for (int j = 0; j < n; ++j) {
        double y = g.coord(j);
        for (int i = 0; i < n; ++i) {
            double x = g.coord(i);
            std::size_t idx = (std::size_t)i + (std::size_t)n * j;
            if (x * x + y * y <= disk_r2) {
                if (w0[idx] <= kW0Epsilon)
                    throw NumericalError(std::string(where) + ": w0 degenerate inside the domain");
                v[idx] /= w0[idx];
            } else {
                v[idx] = 0.0;
            }
        }
    }
}

void mask_slice(std::vector<double>& v, const CartesianGrid& g, double disk_r2) {
    const int n = g.n;
    for (int j = 0; j < n; ++j) {
        double y = g.coord(j);
        for (int i = 0; i < n; ++i) {
            double x = g.coord(i);
            if (x * x + y * y > disk_r2) v[(std::size_t)i + (std::size_t)n * j] = 0.0;
        }
    }
}

double rms(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s / a.size());
}

double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += sqr(a[i] - b[i]);
    return std::sqrt(s / a.size());
}

}  // namespace

SliceImage apply_q_2d(const SliceImage& v, const WeightFields& wf, int iz, const KunyanskyConfig& cfg,
                      int ns, int nphi) {
    const CartesianGrid& g = wf.grid;
    SliceImage out(g);
    if (cfg.m == 0) return out;
    double z = g.coord(iz);
    double disk_r2 = mask_disk_radius2(cfg.domain_radius, z);
    if (disk_r2 <= 0) return out;

    std::vector<double> u = v.values;
    masked_divide(u, wf.w0.data() + wf.slice_offset(iz), g, disk_r2, "apply_q_2d");

    SliceSinogram sum(ns, nphi, g.r);
    SliceImage part(g);
    for (int k = 2; k <= 2 * cfg.m; k += 2) {
        const cdouble* ck = wf.ck[k - 1].data() + wf.slice_offset(iz);
        // real and imaginary images of c_k * u
        SliceImage re(g), im(g);
        for (std::size_t idx = 0; idx < u.size(); ++idx) {
            re.values[idx] = ck[idx].real() * u[idx];
            im.values[idx] = ck[idx].imag() * u[idx];
        }
        SliceSinogram sa = radon2d_forward(re, ns, nphi);
        SliceSinogram sb = radon2d_forward(im, ns, nphi);
        for (int j = 0; j < nphi; ++j) {
            double ckphi = std::cos(k * sum.phi(j)), skphi = std::sin(k * sum.phi(j));
            for (int i = 0; i < ns; ++i)
                sum.at(i, j) += 2.0 * (sa.at(i, j) * ckphi - sb.at(i, j) * skphi);
        }
    }
    out = radon2d_inverse(sum, g);
    mask_slice(out.values, g, disk_r2);
    return out;
}

VolumeGrid apply_q_3d(const VolumeGrid& v, const WeightFields& wf, const KunyanskyConfig& cfg,
                      const PlaneGrid& pg, const Radon3dOptions& opt) {
    const CartesianGrid& g = wf.grid;
    VolumeGrid out(g);
    if (cfg.m == 0) return out;
    const int n = g.n;

    // u = v / w0 on D
    std::vector<cdouble> work(g.size(), cdouble(0.0));
    {
        std::vector<double> u = v.values;
#pragma omp parallel for schedule(static)
        for (int iz = 0; iz < n; ++iz) {
            double disk_r2 = mask_disk_radius2(cfg.domain_radius, g.coord(iz));
            std::vector<double> slice(u.begin() + wf.slice_offset(iz),
                                      u.begin() + wf.slice_offset(iz) + (std::size_t)n * n);
            if (disk_r2 <= 0)
                std::fill(slice.begin(), slice.end(), 0.0);
            else
                masked_divide(slice, wf.w0.data() + wf.slice_offset(iz), g, disk_r2, "apply_q_3d");
            std::copy(slice.begin(), slice.end(), u.begin() + wf.slice_offset(iz));
        }
        for (std::size_t i = 0; i < u.size(); ++i) work[i] = u[i];
    }

    PlaneSinogram sum(pg);
    std::vector<cdouble> cu(g.size());
    for (int l = 2; l <= 2 * cfg.m; l += 2) {
        const std::vector<cdouble>& cl = wf.ck[l - 1];
        for (std::size_t i = 0; i < cu.size(); ++i) cu[i] = cl[i] * work[i];
        PlaneSinogramC gl = radon3d_forward_complex(cu, g, pg, opt);
        std::vector<double> kern = psi_truncation_kernel(l, 2 * cfg.m, pg.t);
#pragma omp parallel for collapse(2) schedule(static)
        for (int k = 0; k < pg.npsi; ++k)
            for (int j = 0; j < pg.nphi; ++j) {
                cdouble ph = std::polar(2.0 * kern[k], l * pg.phi(j));
                std::size_t base = sum.index(0, j, k);
                for (int i = 0; i < pg.ns; ++i)
                    sum.values[base + i] += (ph * gl.values[base + i]).real();
            }
    }

    out = radon3d_inverse(sum, g, opt);
#pragma omp parallel for schedule(static)
    for (int iz = 0; iz < n; ++iz) {
        double disk_r2 = mask_disk_radius2(cfg.domain_radius, g.coord(iz));
        std::vector<double> slice(out.values.begin() + wf.slice_offset(iz),
                                  out.values.begin() + wf.slice_offset(iz) + (std::size_t)n * n);
        if (disk_r2 <= 0)
            std::fill(slice.begin(), slice.end(), 0.0);
        else
            mask_slice(slice, g, disk_r2);
        std::copy(slice.begin(), slice.end(), out.values.begin() + wf.slice_offset(iz));
    }
    return out;
}

namespace {

void check_sigma(double sigma, const char* where) {
    if (sigma >= 1.0)
        throw NumericalError(std::string(where) + ": successive approximations do not converge, sigma = " +
                             std::to_string(sigma) + " >= 1");
}

template <typename State, typename ApplyQ>
int iterate(State& u, const State& gdata, ApplyQ&& apply, int max_iter, double tol, SolveLog* log) {
    State prev = u;
    int it = 0;
    for (; it < max_iter; ++it) {
        State qu = apply(u);
        double un = rms(u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            prev[i] = u[i];
            u[i] = gdata[i] - qu[i];
        }
        double dn = rms_diff(u, prev);
        if (log) {
            if (!log->update_norms.empty() && log->update_norms.back() > 0)
                log->ratios.push_back(dn / log->update_norms.back());
            log->update_norms.push_back(dn);
        }
        if (un > 0 && dn / un < tol) {
            ++it;
            break;
        }
        if (un == 0 && dn == 0) {
            ++it;
            break;
        }
    }
    if (log) log->iterations = it;
    return it;
}

}  // namespace

SliceImage kunyansky2d(const SliceSinogram& sino, const WeightFields& wf, int iz,
                       const KunyanskyConfig& cfg, SolveLog* log) {
    const CartesianGrid& g = wf.grid;
    double sigma = sigma_bound_2d(wf, iz, cfg.domain_radius, cfg.m);
    if (log) log->sigma = sigma;
    check_sigma(sigma, "kunyansky2d");
    double z = g.coord(iz);
    double disk_r2 = mask_disk_radius2(cfg.domain_radius, z);

    SliceImage gimg = radon2d_inverse(sino, g);
    mask_slice(gimg.values, g, disk_r2);
    std::vector<double> u = gimg.values;
    iterate(
        u, gimg.values,
        [&](const std::vector<double>& cur) {
            SliceImage tmp(g);
            tmp.values = cur;
            return apply_q_2d(tmp, wf, iz, cfg, sino.ns, sino.nphi).values;
        },
        cfg.m == 0 ? 1 : cfg.max_iter, cfg.tol, log);

    SliceImage out(g);
    out.values = std::move(u);
    if (disk_r2 > 0)
        masked_divide(out.values, wf.w0.data() + wf.slice_offset(iz), g, disk_r2, "kunyansky2d");
    else
        std::fill(out.values.begin(), out.values.end(), 0.0);
    return out;
}

VolumeGrid kunyansky3d(const PlaneSinogram& sino, const WeightFields& wf, const KunyanskyConfig& cfg,
                       const Radon3dOptions& data_opt, const Radon3dOptions& q_opt, SolveLog* log) {
    const CartesianGrid& g = wf.grid;
    double sigma = sigma_bound_3d(wf, cfg.domain_radius, cfg.m);
    if (log) log->sigma = sigma;
    check_sigma(sigma, "kunyansky3d");

    VolumeGrid gvol = radon3d_inverse(sino, g, data_opt);
    const int n = g.n;
#pragma omp parallel for schedule(static)
    for (int iz = 0; iz < n; ++iz) {
        double disk_r2 = mask_disk_radius2(cfg.domain_radius, g.coord(iz));
        std::vector<double> slice(gvol.values.begin() + wf.slice_offset(iz),
                                  gvol.values.begin() + wf.slice_offset(iz) + (std::size_t)n * n);
        if (disk_r2 <= 0)
            std::fill(slice.begin(), slice.end(), 0.0);
        else
            mask_slice(slice, g, disk_r2);
        std::copy(slice.begin(), slice.end(), gvol.values.begin() + wf.slice_offset(iz));
    }

    std::vector<double> u = gvol.values;
    iterate(
        u, gvol.values,
        [&](const std::vector<double>& cur) {
            VolumeGrid tmp(g);
            tmp.values = cur;
            return apply_q_3d(tmp, wf, cfg, sino.grid, q_opt).values;
        },
        cfg.m == 0 ? 1 : cfg.max_iter, cfg.tol, log);

    VolumeGrid out(g);
    out.values = std::move(u);
#pragma omp parallel for schedule(static)
    for (int iz = 0; iz < n; ++iz) {
        double disk_r2 = mask_disk_radius2(cfg.domain_radius, g.coord(iz));
        std::vector<double> slice(out.values.begin() + wf.slice_offset(iz),
                                  out.values.begin() + wf.slice_offset(iz) + (std::size_t)n * n);
        if (disk_r2 <= 0)
            std::fill(slice.begin(), slice.end(), 0.0);
        else
            masked_divide(slice, wf.w0.data() + wf.slice_offset(iz), g, disk_r2, "kunyansky3d");
        std::copy(slice.begin(), slice.end(), out.values.begin() + wf.slice_offset(iz));
    }
    return out;
}

VolumeGrid kunyansky_stack(const RaySinogram& rays, const WeightFields& wf, const KunyanskyConfig& cfg,
                           SolveLog* log) {
    const CartesianGrid& g = wf.grid;
    if (rays.grid.nz != g.n || rays.grid.r != g.r)
        throw DataError("kunyansky_stack: sinogram z-levels must match the volume grid");
    VolumeGrid out(g);
    double sigma_max = 0.0;
    long long total_iters = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : sigma_max) reduction(+ : total_iters)
    for (int iz = 0; iz < rays.grid.nz; ++iz) {
        SliceSinogram slice(rays.grid.ns, rays.grid.nphi, rays.grid.r);
        const double* src = rays.slice(iz);
        std::copy(src, src + slice.values.size(), slice.values.begin());
        SolveLog local;
        SliceImage img = kunyansky2d(slice, wf, iz, cfg, &local);
        sigma_max = std::max(sigma_max, local.sigma);
        total_iters += local.iterations;
        std::copy(img.values.begin(), img.values.end(), out.values.begin() + wf.slice_offset(iz));
    }
    if (log) {
        log->sigma = sigma_max;
        log->iterations = (int)total_iters;
    }
    return out;
}

}  // namespace wrtkit

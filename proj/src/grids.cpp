#include "wrtkit/grids.hpp"

#include <tuple>

namespace wrtkit {

namespace {

// Legendre P_n and derivative at x via the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw DataError("gauss_legendre: order must be >= 1");
    std::vector<double> x(n), w(n);
    if (n == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
        return {x, w};
    }
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-type initial guess for the i-th root (descending)
        double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre_pair(n, xi);
            double step = p / dp;
            xi -= step;
            if (std::abs(step) < 1e-15) break;
        }
        auto [p, dp] = legendre_pair(n, xi);
        (void)p;
        double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
        // store ascending
        x[n - 1 - i] = xi;
        w[n - 1 - i] = wi;
        x[i] = -xi;
        w[i] = wi;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return {x, w};
}

PlaneGrid::PlaneGrid(int ns_, int nphi_, int npsi_, double r_) : ns(ns_), nphi(nphi_), npsi(npsi_), r(r_) {
    if (ns < 2) throw DataError("PlaneGrid: ns must be >= 2");
    if (nphi < 1) throw DataError("PlaneGrid: nphi must be >= 1");
    if (npsi < 1) throw DataError("PlaneGrid: npsi must be >= 1");
    if (r <= 0) throw DataError("PlaneGrid: support radius must be positive");
    std::tie(t, lambda) = gauss_legendre(npsi);
}

}  // namespace wrtkit

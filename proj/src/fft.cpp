#include "wrtkit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace wrtkit {

namespace {

// Cached in-place plans on an alignment-representative buffer; executed via
// the new-array interface on per-thread buffers of the same length.
class PlanCache {
  public:
    fftw_plan get(int n, bool inverse) {
        std::scoped_lock lock(mu_);
        auto key = std::make_pair(n, inverse);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_[key] = p;
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void fft_1d(cdouble* data, int n, bool inverse) {
    fftw_plan p = cache().get(n, inverse);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

void fft_3d(cdouble* data, int nx, int ny, int nz, bool inverse) {
    const std::size_t sx = 1, sy = (std::size_t)nx, sz = (std::size_t)nx * ny;
    // pass 1: contiguous x lines
#pragma omp parallel for collapse(2) schedule(static)
    for (int iz = 0; iz < nz; ++iz)
        for (int iy = 0; iy < ny; ++iy) fft_1d(data + sz * iz + sy * iy, nx, inverse);
    // pass 2: y lines, gathered into a contiguous scratch
#pragma omp parallel
    {
        std::vector<cdouble> line((std::size_t)ny);
#pragma omp for collapse(2) schedule(static)
        for (int iz = 0; iz < nz; ++iz)
            for (int ix = 0; ix < nx; ++ix) {
                cdouble* base = data + sz * iz + sx * ix;
                for (int iy = 0; iy < ny; ++iy) line[iy] = base[sy * iy];
                fft_1d(line.data(), ny, inverse);
                for (int iy = 0; iy < ny; ++iy) base[sy * iy] = line[iy];
            }
    }
    // pass 3: z lines
#pragma omp parallel
    {
        std::vector<cdouble> line((std::size_t)nz);
#pragma omp for collapse(2) schedule(static)
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                cdouble* base = data + sy * iy + sx * ix;
                for (int iz = 0; iz < nz; ++iz) line[iz] = base[sz * iz];
                fft_1d(line.data(), nz, inverse);
                for (int iz = 0; iz < nz; ++iz) base[sz * iz] = line[iz];
            }
    }
}

}  // namespace wrtkit

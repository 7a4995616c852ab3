#include "specloc/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace specloc {

namespace {

// FFTW plans are cached per (dims, n, sign); creation is serialized (the
// planner is not thread-safe), execution via fftw_execute_dft is.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dims, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dims, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n);
        if (scratch_.size() < 2 * total) scratch_.resize(2 * total);

        int dims_arr[3] = {n, n, n};
        fftw_plan p = fftw_plan_dft(
            dims, dims_arr,
            reinterpret_cast<fftw_complex*>(scratch_.data()),
            reinterpret_cast<fftw_complex*>(scratch_.data() + total),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("FFTW plan creation failed");
        plans_[key] = p;
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
    std::vector<cplx> scratch_;
};

// Centered storage <-> DFT order is a circular shift by n/2 per axis
// (self-inverse for even n).
std::vector<cplx> half_shift(const GridSpec& spec, const std::vector<cplx>& in) {
    const int n = spec.n;
    std::vector<cplx> out(in.size());
    auto shift = [n](int i) { return (i + n / 2) % n; };
    if (spec.dims == 1) {
        for (int i = 0; i < n; ++i) out[shift(i)] = in[i];
    } else if (spec.dims == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out[static_cast<std::size_t>(shift(i)) * n + shift(j)] =
                    in[static_cast<std::size_t>(i) * n + j];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out[(static_cast<std::size_t>(shift(i)) * n + shift(j)) * n +
                        shift(k)] =
                        in[(static_cast<std::size_t>(i) * n + j) * n + k];
    }
    return out;
}

std::vector<cplx> run_fft(const GridSpec& spec, const std::vector<cplx>& in,
                          int sign, double scale) {
    std::vector<cplx> buf = half_shift(spec, in);
    std::vector<cplx> out(buf.size());
    fftw_plan p = PlanCache::instance().get(spec.dims, spec.n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    out = half_shift(spec, out);
    for (cplx& z : out) z *= scale;
    return out;
}

}  // namespace

SpectralField forward_transform(const SpatialField& f) {
    const GridSpec& spec = f.spec;
    double scale = std::pow(spec.spacing() / std::sqrt(2.0 * kPi), spec.dims);
    return SpectralField(spec, run_fft(spec, f.samples, FFTW_FORWARD, scale));
}

SpatialField inverse_transform(const SpectralField& g) {
    const GridSpec& spec = g.spec;
    double scale = std::pow(spec.freq_step() / std::sqrt(2.0 * kPi), spec.dims);
    return SpatialField(spec, run_fft(spec, g.coeffs, FFTW_BACKWARD, scale));
}

SpectralField direct_transform_reference(const SpatialField& f,
                                         std::size_t max_points) {
    const GridSpec& spec = f.spec;
    const std::size_t total = spec.point_count();
    if (total > max_points)
        throw std::length_error("direct_transform_reference: grid exceeds the oracle cap");

    double scale = std::pow(spec.spacing() / std::sqrt(2.0 * kPi), spec.dims);
    std::vector<cplx> out(total);
    std::vector<double> x(total * spec.dims), xi(total * spec.dims);
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = spec.unflatten(i);
        for (int d = 0; d < spec.dims; ++d) {
            x[i * spec.dims + d] = spec.coord(idx[d]);
            xi[i * spec.dims + d] = spec.freq(idx[d]);
        }
    }
    for (std::size_t k = 0; k < total; ++k) {
        cplx acc = 0;
        for (std::size_t j = 0; j < total; ++j) {
            double phase = 0;
            for (int d = 0; d < spec.dims; ++d)
                phase += x[j * spec.dims + d] * xi[k * spec.dims + d];
            acc += f.samples[j] * std::polar(1.0, -phase);
        }
        out[k] = acc * scale;
    }
    return SpectralField(spec, std::move(out));
}

}  // namespace specloc

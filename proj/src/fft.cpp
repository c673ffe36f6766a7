#include "xcav/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace xcav {
namespace fft {

namespace {

// FFTW plan creation is not thread-safe; executions via fftw_execute_dft on
// distinct arrays are. Plans use FFTW_ESTIMATE so the chosen algorithm is a
// pure function of the transform size (deterministic across runs).
std::mutex plan_mutex;

struct PlanKey {
    std::size_t nx, ny;
    int sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(nx, ny, sign) < std::tie(o.nx, o.ny, o.sign);
    }
};

fftw_plan get_plan(std::size_t nx, std::size_t ny, int sign) {
    static std::map<PlanKey, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(plan_mutex);
    const PlanKey key{nx, ny, sign};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(nx * ny);
    fftw_plan p;
    if (ny == 1)
        p = fftw_plan_dft_1d(static_cast<int>(nx), buf, buf, sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    else
        p = fftw_plan_dft_2d(static_cast<int>(nx), static_cast<int>(ny), buf, buf,
                             sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans.emplace(key, p);
    return p;
}

void run(const cplx* in, cplx* out, std::size_t nx, std::size_t ny, int sign) {
    fftw_plan p = get_plan(nx, ny, sign);
    if (in != out) std::memcpy(out, in, sizeof(cplx) * nx * ny);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace

void backward_1d(const cplx* in, cplx* out, std::size_t n) {
    run(in, out, n, 1, FFTW_BACKWARD);
}

void backward_2d(const cplx* in, cplx* out, std::size_t nx, std::size_t ny) {
    run(in, out, nx, ny, FFTW_BACKWARD);
}

void forward_2d(const cplx* in, cplx* out, std::size_t nx, std::size_t ny) {
    run(in, out, nx, ny, FFTW_FORWARD);
}

} // namespace fft
} // namespace xcav

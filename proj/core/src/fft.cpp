#include "chkp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace chkp::fft {

namespace {

std::mutex planner_mutex;

fftw_plan plan_1d(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard lock(planner_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end())
        return it->second;
    // UNALIGNED lets the cached plan execute on any caller buffer.
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache[{n, sign}] = p;
    return p;
}

fftw_plan plan_2d(int n0, int n1, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard lock(planner_mutex);
    auto it = cache.find({n0, n1, sign});
    if (it != cache.end())
        return it->second;
    fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n0) * n1);
    fftw_plan p = fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache[{n0, n1, sign}] = p;
    return p;
}

} // namespace

void dft_1d(std::complex<double>* data, int n, int sign) {
    fftw_plan p = plan_1d(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void dft_2d(std::complex<double>* data, int n0, int n1, int sign) {
    fftw_plan p = plan_2d(n0, n1, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

} // namespace chkp::fft

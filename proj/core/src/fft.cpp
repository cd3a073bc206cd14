#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace wmsim::detail {

std::vector<double> wavenumbers(int n, double spacing) {
    std::vector<double> k(n);
    const double base = 2.0 * std::numbers::pi / (n * spacing);
    for (int m = 0; m < n; ++m) k[m] = base * (m < (n + 1) / 2 ? m : m - n);
    return k;
}

namespace {

// Plan creation is not thread-safe in FFTW; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(int rank, int n, int sign) {
    static std::map<std::tuple<int, int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const auto key = std::make_tuple(rank, n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // FFTW_UNALIGNED lets the cached plan run on any caller buffer.
    std::vector<std::complex<double>> scratch(rank == 1 ? n : n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = rank == 1
        ? fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, plan);
    return plan;
}

}  // namespace

void dft_1d(std::complex<double>* data, int n, int sign) {
    fftw_plan plan = get_plan(1, n, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

void dft_2d(std::complex<double>* data, int n, int sign) {
    fftw_plan plan = get_plan(2, n, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

}  // namespace wmsim::detail

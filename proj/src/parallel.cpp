#include "santalo/parallel.hpp"

#include <atomic>

#ifdef SANTALO_HAVE_OPENMP
#include <omp.h>
#endif

namespace santalo {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() { return g_threads.load(); }

void set_thread_count(int n) { g_threads.store(n < 0 ? 0 : n); }

int effective_threads() {
#ifdef SANTALO_HAVE_OPENMP
    int req = g_threads.load();
    return req > 0 ? req : omp_get_max_threads();
#else
    return 1;
#endif
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
#ifdef SANTALO_HAVE_OPENMP
    int nt = effective_threads();
    if (nt > 1 && n > 1) {
        #pragma omp parallel for schedule(static) num_threads(nt)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    serial_for(n, body);
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& data) {
    return pairwise_sum(data.data(), data.size());
}

double parallel_map_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    std::vector<double> buf(n);
    parallel_for(n, [&](std::size_t i) { buf[i] = term(i); });
    return pairwise_sum(buf);
}

double serial_map_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    std::vector<double> buf(n);
    serial_for(n, [&](std::size_t i) { buf[i] = term(i); });
    return pairwise_sum(buf);
}

}  // namespace santalo

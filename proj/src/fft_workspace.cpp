#include "fft_workspace.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace fbq::detail {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

// One aligned buffer pair per thread, grown on demand. FFTW plans are created
// against buffers from fftw_malloc and executed via fftw_execute_dft on the
// same thread-local buffers, so alignment always matches the plan.
struct Scratch {
    int n = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;

    ~Scratch() {
        fftw_free(in);
        fftw_free(out);
    }

    void ensure(int want) {
        if (n >= want) return;
        fftw_free(in);
        fftw_free(out);
        in = fftw_alloc_complex(static_cast<size_t>(want) * want);
        out = fftw_alloc_complex(static_cast<size_t>(want) * want);
        n = want;
    }
};

thread_local Scratch scratch;

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Plan against throwaway aligned buffers; execution uses fftw_execute_dft
    // with the thread-local buffers (same fftw_malloc alignment).
    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n) * n);
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(n) * n);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    return cache.emplace(n, p).first->second;
}

} // namespace

std::complex<double>* fft_in(int n) {
    scratch.ensure(n);
    return reinterpret_cast<std::complex<double>*>(scratch.in);
}

std::complex<double>* fft_out(int n) {
    scratch.ensure(n);
    return reinterpret_cast<std::complex<double>*>(scratch.out);
}

void fft_execute_forward(int n) {
    scratch.ensure(n);
    fftw_execute_dft(plans_for(n).fwd, scratch.in, scratch.out);
}

void fft_execute_backward(int n) {
    scratch.ensure(n);
    fftw_execute_dft(plans_for(n).bwd, scratch.in, scratch.out);
}

} // namespace fbq::detail

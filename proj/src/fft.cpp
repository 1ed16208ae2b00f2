#include "dlct/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace dlct::fft {
namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are created once per length under a lock and never destroyed
// before exit.
class PlanCache {
public:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    ~PlanCache() {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
    }

    Plans get(int n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) return it->second;
        std::vector<Complex> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        Plans p;
        p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
        plans_.emplace(n, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void execute(std::span<const Complex> in, std::span<Complex> out, bool fwd) {
    if (in.size() != out.size()) throw Error(Errc::LengthMismatch, "fft input/output sizes differ");
    if (in.empty()) return;
    const int n = static_cast<int>(in.size());
    const auto plans = cache().get(n);
    // Planned out-of-place; copy when the caller aliases input and output.
    std::vector<Complex> scratch;
    const Complex* src = in.data();
    if (src == out.data()) {
        scratch.assign(in.begin(), in.end());
        src = scratch.data();
    }
    fftw_execute_dft(fwd ? plans.fwd : plans.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(src)),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) { execute(in, out, true); }
void backward(std::span<const Complex> in, std::span<Complex> out) { execute(in, out, false); }

std::vector<Complex> forward(std::span<const Complex> in) {
    std::vector<Complex> out(in.size());
    forward(in, out);
    return out;
}

std::vector<Complex> backward(std::span<const Complex> in) {
    std::vector<Complex> out(in.size());
    backward(in, out);
    return out;
}

} // namespace dlct::fft

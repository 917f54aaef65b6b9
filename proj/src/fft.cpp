#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace bolab::detail {
namespace {

// FFTW planning is not thread safe, execution with new-array execute is.
// Plans are created once per size and reused for the process lifetime.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.first);
            fftw_destroy_plan(p.second);
        }
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it == plans_.end()) {
            fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
            const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
            fftw_plan fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
            fftw_plan bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
            fftw_free(buf);
            it = plans_.emplace(n, std::make_pair(fwd, bwd)).first;
        }
        return sign == FFTW_FORWARD ? it->second.first : it->second.second;
    }

private:
    std::mutex mutex_;
    std::map<int, std::pair<fftw_plan, fftw_plan>> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(std::vector<std::complex<double>>& data, int sign) {
    const int n = static_cast<int>(data.size());
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(cache().get(n, sign), p, p);
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) { run(data, FFTW_FORWARD); }
void fft_backward(std::vector<std::complex<double>>& data) { run(data, FFTW_BACKWARD); }

}  // namespace bolab::detail

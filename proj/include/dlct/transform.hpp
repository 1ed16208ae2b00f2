#pragma once

#include <cstddef>
#include <vector>

#include "dlct/signal.hpp"

namespace dlct {

// Grid geometry of the linear chirp transform.
//   resolution  c: chirp-rate step per chirp bin
//   n_freq      N: frequency bins (equals the signal length)
//   n_chirp     L: chirp bins, m in [-L/2, L/2 - 1]
struct DlctParams {
    double resolution = 1.0 / 64.0;
    int n_freq = 256;
    int n_chirp = 64;

    // c = 1/L, which makes m = L/2 sweep the full frequency axis in one frame.
    static DlctParams with_default_resolution(int n_freq, int n_chirp) {
        return DlctParams{1.0 / static_cast<double>(n_chirp), n_freq, n_chirp};
    }

    int min_chirp_bin() const noexcept { return -n_chirp / 2; }
    int max_chirp_bin() const noexcept { return n_chirp / 2 - 1; }
    bool contains_chirp_bin(int m) const noexcept { return m >= min_chirp_bin() && m <= max_chirp_bin(); }

    // beta = c * m
    double chirp_rate(int m) const noexcept { return resolution * static_cast<double>(m); }

    // Throws InvalidParams.
    void validate() const;

    bool operator==(const DlctParams&) const = default;
};

// exp(sign * j 2 pi * rate * n^2 / N) for n = 0..N-1, where rate = c*m.
// The phase is reduced modulo one turn before evaluation.
std::vector<Complex> quadratic_phase(int n_freq, double rate, int sign);

// X(k, m) on the full N x L grid. Columns are stored in DFT-like wraparound
// order m = 0, 1, ..., L/2-1, -L/2, ..., -1; the accessors take signed m.
class DlctSpectrum {
public:
    explicit DlctSpectrum(DlctParams params);
    DlctSpectrum(DlctParams params, std::vector<Complex> grid);

    const DlctParams& params() const noexcept { return params_; }
    int n_freq() const noexcept { return params_.n_freq; }
    int n_chirp() const noexcept { return params_.n_chirp; }

    Complex& at(int k, int m);
    const Complex& at(int k, int m) const;

    std::span<Complex> column(int m);
    std::span<const Complex> column(int m) const;

    // Raw column-major storage (wraparound m order).
    const std::vector<Complex>& grid() const noexcept { return grid_; }

    std::size_t column_index(int m) const;

private:
    DlctParams params_;
    std::vector<Complex> grid_;
};

// X(k,m) = sum_n x(n) exp(-j 2pi/N (c m n^2 + k n)); each slice is one FFT of
// the input demodulated by the conjugate quadratic phase.
DlctSpectrum dlct_forward(const Signal& x, const DlctParams& p);

// x(n) = 1/(L N) sum_m sum_k X(k,m) exp(+j 2pi/N (c m n^2 + k n)).
Signal dlct_inverse(const DlctSpectrum& spectrum);

// Copy of column X(., m). Throws IndexOutOfRange.
std::vector<Complex> dlct_slice(const DlctSpectrum& spectrum, int m);

} // namespace dlct

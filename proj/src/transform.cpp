#include "dlct/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dlct/fft.hpp"

namespace dlct {

void DlctParams::validate() const {
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        throw Error(Errc::InvalidParams, "chirp resolution c must be positive and finite");
    if (n_freq < 1) throw Error(Errc::InvalidParams, "N must be at least 1");
    if (n_chirp < 2 || n_chirp % 2 != 0)
        throw Error(Errc::InvalidParams, "L must be even and at least 2, got " + std::to_string(n_chirp));
}

std::vector<Complex> quadratic_phase(int n_freq, double rate, int sign) {
    std::vector<Complex> out(static_cast<std::size_t>(n_freq));
    const double s = sign < 0 ? -1.0 : 1.0;
    for (int n = 0; n < n_freq; ++n) {
        const double nn = static_cast<double>(n) * static_cast<double>(n);
        double turns = rate * nn / static_cast<double>(n_freq);
        turns -= std::floor(turns);
        const double phase = s * 2.0 * std::numbers::pi * turns;
        out[static_cast<std::size_t>(n)] = Complex(std::cos(phase), std::sin(phase));
    }
    return out;
}

DlctSpectrum::DlctSpectrum(DlctParams params) : params_(params) {
    params_.validate();
    grid_.assign(static_cast<std::size_t>(params_.n_freq) * static_cast<std::size_t>(params_.n_chirp), Complex{});
}

DlctSpectrum::DlctSpectrum(DlctParams params, std::vector<Complex> grid) : params_(params), grid_(std::move(grid)) {
    params_.validate();
    if (grid_.size() != static_cast<std::size_t>(params_.n_freq) * static_cast<std::size_t>(params_.n_chirp))
        throw Error(Errc::InvalidParams, "grid size does not match N x L");
}

std::size_t DlctSpectrum::column_index(int m) const {
    if (!params_.contains_chirp_bin(m))
        throw Error(Errc::IndexOutOfRange, "chirp bin " + std::to_string(m) + " outside [" +
                                               std::to_string(params_.min_chirp_bin()) + ", " +
                                               std::to_string(params_.max_chirp_bin()) + "]");
    return static_cast<std::size_t>(m >= 0 ? m : m + params_.n_chirp);
}

std::span<Complex> DlctSpectrum::column(int m) {
    const auto n = static_cast<std::size_t>(params_.n_freq);
    return std::span<Complex>(grid_).subspan(column_index(m) * n, n);
}

std::span<const Complex> DlctSpectrum::column(int m) const {
    const auto n = static_cast<std::size_t>(params_.n_freq);
    return std::span<const Complex>(grid_).subspan(column_index(m) * n, n);
}

Complex& DlctSpectrum::at(int k, int m) {
    if (k < 0 || k >= params_.n_freq) throw Error(Errc::IndexOutOfRange, "frequency bin " + std::to_string(k));
    return column(m)[static_cast<std::size_t>(k)];
}

const Complex& DlctSpectrum::at(int k, int m) const {
    if (k < 0 || k >= params_.n_freq) throw Error(Errc::IndexOutOfRange, "frequency bin " + std::to_string(k));
    return column(m)[static_cast<std::size_t>(k)];
}

DlctSpectrum dlct_forward(const Signal& x, const DlctParams& p) {
    p.validate();
    x.validate();
    if (x.size() != static_cast<std::size_t>(p.n_freq))
        throw Error(Errc::LengthMismatch, "signal length " + std::to_string(x.size()) + " != N = " +
                                              std::to_string(p.n_freq));
    DlctSpectrum spectrum(p);
    std::vector<Complex> demod(x.size());
    for (int m = p.min_chirp_bin(); m <= p.max_chirp_bin(); ++m) {
        const auto chirp = quadratic_phase(p.n_freq, p.chirp_rate(m), -1);
        for (std::size_t n = 0; n < x.size(); ++n) demod[n] = x[n] * chirp[n];
        fft::forward(demod, spectrum.column(m));
    }
    return spectrum;
}

Signal dlct_inverse(const DlctSpectrum& spectrum) {
    const auto& p = spectrum.params();
    p.validate();
    const auto n_freq = static_cast<std::size_t>(p.n_freq);
    std::vector<Complex> acc(n_freq, Complex{});
    std::vector<Complex> slice(n_freq);
    for (int m = p.min_chirp_bin(); m <= p.max_chirp_bin(); ++m) {
        fft::backward(spectrum.column(m), slice);
        const auto chirp = quadratic_phase(p.n_freq, p.chirp_rate(m), +1);
        for (std::size_t n = 0; n < n_freq; ++n) acc[n] += slice[n] * chirp[n];
    }
    const double scale = 1.0 / (static_cast<double>(p.n_chirp) * static_cast<double>(p.n_freq));
    for (auto& v : acc) v *= scale;
    return Signal(std::move(acc));
}

std::vector<Complex> dlct_slice(const DlctSpectrum& spectrum, int m) {
    const auto col = spectrum.column(m);
    return {col.begin(), col.end()};
}

} // namespace dlct

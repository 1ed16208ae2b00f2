#include "dlct/chirp_analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "dlct/fft.hpp"

namespace dlct {
namespace {

bool precedes(int k, int m, int best_k, int best_m) {
    if (std::abs(m) != std::abs(best_m)) return std::abs(m) < std::abs(best_m);
    if (m != best_m) return m < best_m;
    return k < best_k;
}

void check_extraction_args(const Signal& x, const PeakLocation& peak, const DlctParams& p, int half_width) {
    p.validate();
    x.validate();
    if (x.size() != static_cast<std::size_t>(p.n_freq))
        throw Error(Errc::LengthMismatch, "signal length " + std::to_string(x.size()) + " != N = " +
                                              std::to_string(p.n_freq));
    if (peak.k < 0 || peak.k >= p.n_freq)
        throw Error(Errc::IndexOutOfRange, "peak frequency bin " + std::to_string(peak.k));
    if (!p.contains_chirp_bin(peak.m)) throw Error(Errc::IndexOutOfRange, "peak chirp bin " + std::to_string(peak.m));
    if (half_width < 0 || 2 * half_width >= p.n_freq)
        throw Error(Errc::InvalidParams, "mask half-width must satisfy 0 <= hw < N/2");
}

ChirpComponent make_component(std::vector<Complex> samples, const Signal& source, const PeakLocation& peak,
                              const DlctParams& p) {
    ChirpComponent c;
    c.waveform = Signal(std::move(samples), source.sample_rate);
    c.k = peak.k;
    c.m = peak.m;
    c.beta = p.chirp_rate(peak.m);
    c.energy = c.waveform.energy();
    return c;
}

} // namespace

PeakLocation locate_peak(const DlctSpectrum& spectrum) {
    const auto& p = spectrum.params();
    double total = 0.0;
    PeakLocation best{0, 0, -1.0, 0.0};
    for (int m = p.min_chirp_bin(); m <= p.max_chirp_bin(); ++m) {
        const auto col = spectrum.column(m);
        for (int k = 0; k < p.n_freq; ++k) {
            const double e = std::norm(col[static_cast<std::size_t>(k)]);
            total += e;
            if (e > best.energy || (e == best.energy && precedes(k, m, best.k, best.m))) best = {k, m, e, 0.0};
        }
    }
    if (!(total > 0.0)) throw Error(Errc::EmptySpectrum, "spectrum is identically zero");
    const double mean = total / static_cast<double>(spectrum.grid().size());
    best.dominance = best.energy / mean;
    return best;
}

PeakLocation find_peak(const DlctSpectrum& spectrum, double min_dominance) {
    if (!(min_dominance > 0.0)) throw Error(Errc::InvalidParams, "min_dominance must be positive");
    auto peak = locate_peak(spectrum);
    if (peak.dominance < min_dominance)
        throw Error(Errc::NoSignificantPeak, "peak dominance " + std::to_string(peak.dominance) + " below " +
                                                 std::to_string(min_dominance));
    return peak;
}

ChirpComponent extract_component(const Signal& x, const PeakLocation& peak, const DlctParams& p, int half_width) {
    check_extraction_args(x, peak, p, half_width);
    const int n = p.n_freq;
    const auto size = static_cast<std::size_t>(n);
    const double rate = p.chirp_rate(peak.m);
    const auto down = quadratic_phase(n, rate, -1);
    const auto up = quadratic_phase(n, rate, +1);

    std::vector<Complex> buf(size);
    for (std::size_t i = 0; i < size; ++i) buf[i] = x[i] * down[i];
    auto spec = fft::forward(buf);

    std::vector<Complex> masked(size, Complex{});
    for (int d = -half_width; d <= half_width; ++d) {
        const auto bin = static_cast<std::size_t>(((peak.k + d) % n + n) % n);
        masked[bin] = spec[bin];
    }
    fft::backward(masked, buf);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < size; ++i) buf[i] = buf[i] * inv_n * up[i];
    return make_component(std::move(buf), x, peak, p);
}

ChirpComponent extract_real_component(const Signal& x, const PeakLocation& peak, const DlctParams& p,
                                      int half_width) {
    check_extraction_args(x, peak, p, half_width);
    const int n = p.n_freq;
    const auto size = static_cast<Eigen::Index>(n);
    const int width = 2 * half_width + 1;
    const auto up = quadratic_phase(n, p.chirp_rate(peak.m), +1);

    // Columns: chirp atoms exp(j2pi/N (c m n^2 + k' n)) for k' in the window,
    // followed by their conjugates.
    Eigen::MatrixXcd atoms(size, 2 * width);
    for (int d = -half_width; d <= half_width; ++d) {
        const int bin = ((peak.k + d) % n + n) % n;
        const int col = d + half_width;
        for (Eigen::Index i = 0; i < size; ++i) {
            const auto t = static_cast<long long>(bin) * static_cast<long long>(i) % n;
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
            const Complex atom = up[static_cast<std::size_t>(i)] * Complex(std::cos(phase), std::sin(phase));
            atoms(i, col) = atom;
            atoms(i, col + width) = std::conj(atom);
        }
    }
    Eigen::VectorXcd rhs(size);
    for (Eigen::Index i = 0; i < size; ++i) rhs(i) = x[static_cast<std::size_t>(i)];

    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(atoms);
    const Eigen::VectorXcd coeffs = cod.solve(rhs);
    const Eigen::VectorXcd proj = atoms * coeffs;

    std::vector<Complex> out(static_cast<std::size_t>(n));
    const bool real_input = x.is_real();
    for (Eigen::Index i = 0; i < size; ++i) {
        const Complex v = proj(i);
        out[static_cast<std::size_t>(i)] = real_input ? Complex(v.real(), 0.0) : v;
    }
    return make_component(std::move(out), x, peak, p);
}

} // namespace dlct

#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the FFT path of the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "dlct/signal.hpp"

namespace oracle {

using dlct::Complex;
using dlct::Signal;
using LComplex = std::complex<long double>;

inline LComplex unit_phase(long double turns) {
    turns -= std::floor(turns);
    const long double ph = 2.0L * std::numbers::pi_v<long double> * turns;
    return {std::cos(ph), std::sin(ph)};
}

// Literal double sum X(k,m) = sum_n x(n) exp(-j 2pi/N (c m n^2 + k n)).
inline Complex dlct_entry(const Signal& x, long double c, int k, int m) {
    const auto n_total = static_cast<long double>(x.size());
    LComplex acc = 0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const auto nl = static_cast<long double>(n);
        const long double turns = (c * m * nl * nl + static_cast<long double>(k) * nl) / n_total;
        acc += LComplex(x[n].real(), x[n].imag()) * std::conj(unit_phase(turns));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline std::vector<Complex> dft(const std::vector<Complex>& x) {
    const auto n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        LComplex acc = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const long double turns = static_cast<long double>((k * t) % n) / static_cast<long double>(n);
            acc += LComplex(x[t].real(), x[t].imag()) * std::conj(unit_phase(turns));
        }
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

inline std::vector<Complex> idft(const std::vector<Complex>& x) {
    const auto n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        LComplex acc = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const long double turns = static_cast<long double>((k * t) % n) / static_cast<long double>(n);
            acc += LComplex(x[k].real(), x[k].imag()) * unit_phase(turns);
        }
        out[t] = {static_cast<double>(acc.real() / n), static_cast<double>(acc.imag() / n)};
    }
    return out;
}

// Unitary DFT with both indices centred: sample n sits at n - floor(N/2).
inline Signal centered_dft(const Signal& x) {
    const auto n = x.size();
    const auto f = static_cast<long long>(n / 2);
    Signal y(n);
    for (std::size_t p = 0; p < n; ++p) {
        LComplex acc = 0;
        const long long pc = static_cast<long long>(p) - f;
        for (std::size_t q = 0; q < n; ++q) {
            const long long qc = static_cast<long long>(q) - f;
            const long double turns = static_cast<long double>(pc * qc) / static_cast<long double>(n);
            acc += LComplex(x[q].real(), x[q].imag()) * std::conj(unit_phase(turns));
        }
        acc /= std::sqrt(static_cast<long double>(n));
        y[p] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return y;
}

inline std::vector<Complex> circular_convolution(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const auto n = a.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        LComplex acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& u = a[j];
            const auto& v = b[(k + n - j) % n];
            acc += LComplex(u.real(), u.imag()) * LComplex(v.real(), v.imag());
        }
        out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    return out;
}

// exp(sign j 2pi/N (rate n^2 + k n)) evaluated in long double.
inline Signal chirp(std::size_t n_len, long double rate, long double k, int sign = +1, Complex amp = 1.0) {
    Signal x(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
        const auto nl = static_cast<long double>(n);
        LComplex v = unit_phase((rate * nl * nl + k * nl) / static_cast<long double>(n_len));
        if (sign < 0) v = std::conj(v);
        x[n] = amp * Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
    return x;
}

// Masked projection evaluated with O(N^2) transforms: demodulate, DFT,
// keep the circular window, inverse DFT, remodulate.
inline Signal projection(const Signal& x, long double rate, int k, int half_width) {
    const auto n = x.size();
    const auto down = chirp(n, rate, 0, -1);
    const auto up = chirp(n, rate, 0, +1);
    std::vector<Complex> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = x[i] * down[i];
    auto spec = dft(d);
    std::vector<Complex> masked(n, Complex{});
    const auto nn = static_cast<int>(n);
    for (int o = -half_width; o <= half_width; ++o) {
        const auto b = static_cast<std::size_t>(((k + o) % nn + nn) % nn);
        masked[b] = spec[b];
    }
    auto back = idft(masked);
    Signal y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = back[i] * up[i];
    return y;
}

inline Signal random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Signal x(n);
    for (auto& v : x.samples) v = Complex(g(rng), g(rng));
    return x;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const Signal& a, const Signal& b) { return max_abs_diff(a.samples, b.samples); }

inline double rel_l2(const Signal& estimate, const Signal& reference) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        num += std::norm(estimate[i] - reference[i]);
        den += std::norm(reference[i]);
    }
    return std::sqrt(num / den);
}

inline double correlation(const Signal& a, const Signal& b) {
    Complex ip{};
    for (std::size_t i = 0; i < a.size(); ++i) ip += a[i] * std::conj(b[i]);
    return std::abs(ip) / (a.norm() * b.norm());
}

} // namespace oracle

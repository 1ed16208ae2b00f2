#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dlct/error.hpp"

namespace dlct {

using Complex = std::complex<double>;

// Finite complex sequence x(n), n = 0..N-1. Sample rate is carried along as
// metadata only; every operation works in normalized sample units.
struct Signal {
    std::vector<Complex> samples;
    std::optional<double> sample_rate;

    Signal() = default;
    explicit Signal(std::vector<Complex> s, std::optional<double> rate = std::nullopt)
        : samples(std::move(s)), sample_rate(rate) {}
    explicit Signal(std::size_t n) : samples(n, Complex{}) {}

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }

    Complex& operator[](std::size_t n) { return samples[n]; }
    const Complex& operator[](std::size_t n) const { return samples[n]; }

    std::span<const Complex> view() const noexcept { return samples; }

    double energy() const noexcept {
        double e = 0.0;
        for (const auto& v : samples) e += std::norm(v);
        return e;
    }

    double norm() const noexcept { return std::sqrt(energy()); }

    bool is_real() const noexcept {
        for (const auto& v : samples)
            if (v.imag() != 0.0) return false;
        return true;
    }

    // Throws InvalidSignal when empty or when any sample is NaN/Inf.
    void validate() const {
        if (samples.empty()) throw Error(Errc::InvalidSignal, "signal must contain at least one sample");
        for (const auto& v : samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error(Errc::InvalidSignal, "signal contains a non-finite sample");
    }
};

inline Signal from_real(std::span<const double> values) {
    Signal s(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) s[i] = Complex(values[i], 0.0);
    return s;
}

} // namespace dlct

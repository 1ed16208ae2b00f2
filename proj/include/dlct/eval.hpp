#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dlct/frft.hpp"
#include "dlct/signal.hpp"
#include "dlct/tv_filter.hpp"

namespace dlct {

// x(n) = exp(j (pi/scale) (alpha n^2 + f0 n)), n = 0..n_samples-1.
// The reference test signal is synth_chirp(256, 0.1, 10, 256).
Signal synth_chirp(int n_samples, double alpha, double f0, double scale);

Signal reference_chirp();

// Real, bird-call-like test audio: 80 ms linear down-chirps from 3 kHz to
// 1.5 kHz under a raised-cosine envelope, repeating every 120 ms.
Signal synth_chirp_train(int n_samples, double sample_rate);

enum class NoiseKind { ComplexCircularGaussian, RealGaussian };

struct NoiseSpec {
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    NoiseKind kind = NoiseKind::ComplexCircularGaussian;
};

NoiseKind default_noise_kind(const Signal& x);

// The seeded noise realization w itself, scaled so that
// 10 log10(|x|^2 / |w|^2) == snr_db exactly. Throws ZeroSignal.
Signal awgn(const Signal& x, const NoiseSpec& spec);

// x + awgn(x, spec).
Signal add_awgn(const Signal& x, const NoiseSpec& spec);

// (1/N) sum |x(n) - x_hat(n)|. Throws LengthMismatch.
double mae(const Signal& x, const Signal& x_hat);

// 10 log10(|x|^2 / |x - x_hat|^2).
double output_snr_db(const Signal& x, const Signal& x_hat);

enum class Method { Dlct, Dfrft };

std::string_view to_string(Method m) noexcept;

// DLCT filter output for a whole signal (framed overlap-add).
Signal run_dlct(const Signal& noisy, const FilterConfig& cfg);

// DFrFT filter output; signals longer than the frame length are processed
// with the same overlap-add framing as the DLCT filter.
Signal run_dfrft(const Signal& noisy, const FrftFilterConfig& cfg, int frame_len, int hop);

struct SweepConfig {
    std::vector<double> snr_points;
    int trials = 50;
    std::vector<Method> methods{Method::Dlct, Method::Dfrft};
    std::uint64_t base_seed = 1;
    FilterConfig dlct;
    FrftFilterConfig dfrft;
    // Defaults to default_noise_kind(clean).
    std::optional<NoiseKind> noise_kind;

    void validate() const;
};

struct MethodStats {
    Method method = Method::Dlct;
    double mean_mae = 0.0;
    double std_mae = 0.0;          // sample standard deviation, 0 for one trial
    double mean_output_snr_db = 0.0;
    int trials = 0;
};

struct SweepRow {
    double snr_db = 0.0;
    double mean_input_mae = 0.0;   // MAE of the unfiltered noisy signal
    std::vector<MethodStats> methods;

    const MethodStats* find(Method m) const;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepConfig config;
};

// Per-trial seed, a stable mix of (base_seed, snr_index, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t snr_index, std::uint64_t trial);

// Every method sees the same noisy realization within a trial.
SweepResult run_sweep(const Signal& clean, const SweepConfig& cfg);

// 20 log10(mae_a / mae_b): how much lower mae_b is than mae_a, in dB.
double mae_ratio_db(double mae_a, double mae_b);

} // namespace dlct

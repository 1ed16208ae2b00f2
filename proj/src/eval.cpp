#include "dlct/eval.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace dlct {

Signal synth_chirp(int n_samples, double alpha, double f0, double scale) {
    if (n_samples < 1) throw Error(Errc::InvalidParams, "chirp needs at least one sample");
    if (scale == 0.0 || !std::isfinite(scale)) throw Error(Errc::InvalidParams, "chirp scale must be nonzero");
    Signal x(static_cast<std::size_t>(n_samples));
    for (int n = 0; n < n_samples; ++n) {
        const double nd = static_cast<double>(n);
        const double phase = std::numbers::pi / scale * (alpha * nd * nd + f0 * nd);
        x[static_cast<std::size_t>(n)] = Complex(std::cos(phase), std::sin(phase));
    }
    return x;
}

Signal reference_chirp() { return synth_chirp(256, 0.1, 10.0, 256.0); }

Signal synth_chirp_train(int n_samples, double sample_rate) {
    if (n_samples < 1) throw Error(Errc::InvalidParams, "chirp train needs at least one sample");
    if (!(sample_rate > 0.0)) throw Error(Errc::InvalidParams, "sample rate must be positive");
    constexpr double call = 0.080, period = 0.120, f_start = 3000.0, f_end = 1500.0, amplitude = 0.5;
    const double slope = (f_end - f_start) / call;
    Signal x(static_cast<std::size_t>(n_samples));
    x.sample_rate = sample_rate;
    for (int n = 0; n < n_samples; ++n) {
        const double t = static_cast<double>(n) / sample_rate;
        const double local = std::fmod(t, period);
        if (local >= call) continue;
        const double env = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * local / call);
        const double phase = 2.0 * std::numbers::pi * (f_start * local + 0.5 * slope * local * local);
        x[static_cast<std::size_t>(n)] = Complex(amplitude * env * std::cos(phase), 0.0);
    }
    return x;
}

NoiseKind default_noise_kind(const Signal& x) {
    return x.is_real() ? NoiseKind::RealGaussian : NoiseKind::ComplexCircularGaussian;
}

Signal awgn(const Signal& x, const NoiseSpec& spec) {
    const double signal_energy = x.energy();
    if (!(signal_energy > 0.0)) throw Error(Errc::ZeroSignal, "SNR is undefined for a zero-energy signal");
    if (!std::isfinite(spec.snr_db)) throw Error(Errc::InvalidParams, "SNR must be finite");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Signal w(x.size());
    w.sample_rate = x.sample_rate;
    for (auto& v : w.samples) {
        if (spec.kind == NoiseKind::ComplexCircularGaussian) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v = Complex(re, im);
        } else {
            v = Complex(gauss(rng), 0.0);
        }
    }
    const double target = signal_energy * std::pow(10.0, -spec.snr_db / 10.0);
    const double scale = std::sqrt(target / w.energy());
    for (auto& v : w.samples) v *= scale;
    return w;
}

Signal add_awgn(const Signal& x, const NoiseSpec& spec) {
    auto w = awgn(x, spec);
    for (std::size_t n = 0; n < x.size(); ++n) w[n] += x[n];
    return w;
}

double mae(const Signal& x, const Signal& x_hat) {
    if (x.size() != x_hat.size())
        throw Error(Errc::LengthMismatch,
                    "MAE of signals with lengths " + std::to_string(x.size()) + " and " + std::to_string(x_hat.size()));
    if (x.empty()) throw Error(Errc::InvalidSignal, "MAE of empty signals");
    double acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) acc += std::abs(x[n] - x_hat[n]);
    return acc / static_cast<double>(x.size());
}

double output_snr_db(const Signal& x, const Signal& x_hat) {
    if (x.size() != x_hat.size()) throw Error(Errc::LengthMismatch, "output SNR of signals with different lengths");
    double err = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) err += std::norm(x[n] - x_hat[n]);
    return 10.0 * std::log10(x.energy() / err);
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::Dlct: return "dlct";
    case Method::Dfrft: return "frft";
    }
    return "unknown";
}

Signal run_dlct(const Signal& noisy, const FilterConfig& cfg) { return denoise(noisy, cfg).estimate; }

Signal run_dfrft(const Signal& noisy, const FrftFilterConfig& cfg, int frame_len, int hop) {
    cfg.validate();
    noisy.validate();
    const bool real = noisy.is_real();
    return overlap_add_process(noisy, frame_len, hop, [&](const Signal& frame, std::size_t) {
        auto y = dfrft_denoise(frame, cfg);
        // The mask keeps one of the two conjugate halves of a real signal.
        if (real)
            for (auto& v : y.samples) v = Complex(2.0 * v.real(), 0.0);
        return y;
    });
}

void SweepConfig::validate() const {
    if (methods.empty()) throw Error(Errc::EmptyMethodSet, "no denoising method selected");
    if (trials < 1) throw Error(Errc::InvalidParams, "trials must be at least 1");
    if (snr_points.empty()) throw Error(Errc::InvalidParams, "SNR point list is empty");
    for (std::size_t i = 1; i < snr_points.size(); ++i)
        if (!(snr_points[i] > snr_points[i - 1]))
            throw Error(Errc::InvalidParams, "SNR points must be strictly increasing");
    dlct.validate();
    dfrft.validate();
}

const MethodStats* SweepRow::find(Method m) const {
    for (const auto& s : methods)
        if (s.method == m) return &s;
    return nullptr;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t snr_index, std::uint64_t trial) {
    // splitmix64 finalizer applied to each word in turn.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base_seed);
    h = mix(h ^ snr_index);
    h = mix(h ^ trial);
    return h;
}

SweepResult run_sweep(const Signal& clean, const SweepConfig& cfg) {
    cfg.validate();
    clean.validate();
    const NoiseKind kind = cfg.noise_kind.value_or(default_noise_kind(clean));

    FilterConfig dlct_cfg = cfg.dlct;
    if (kind == NoiseKind::RealGaussian && clean.is_real()) dlct_cfg.real_signal = true;

    SweepResult result;
    result.config = cfg;
    const auto trials = static_cast<std::size_t>(cfg.trials);
    for (std::size_t si = 0; si < cfg.snr_points.size(); ++si) {
        std::vector<std::vector<double>> maes(cfg.methods.size(), std::vector<double>(trials));
        std::vector<std::vector<double>> snrs(cfg.methods.size(), std::vector<double>(trials));
        double input_mae = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const NoiseSpec spec{cfg.snr_points[si], trial_seed(cfg.base_seed, si, t), kind};
            const auto noisy = add_awgn(clean, spec);
            input_mae += mae(clean, noisy);
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
                const auto est = cfg.methods[mi] == Method::Dlct
                                     ? run_dlct(noisy, dlct_cfg)
                                     : run_dfrft(noisy, cfg.dfrft, cfg.dlct.frame_len, cfg.dlct.hop);
                maes[mi][t] = mae(clean, est);
                snrs[mi][t] = output_snr_db(clean, est);
            }
        }

        SweepRow row;
        row.snr_db = cfg.snr_points[si];
        row.mean_input_mae = input_mae / static_cast<double>(trials);
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            MethodStats st;
            st.method = cfg.methods[mi];
            st.trials = cfg.trials;
            double sum = 0.0, snr_sum = 0.0;
            for (std::size_t t = 0; t < trials; ++t) {
                sum += maes[mi][t];
                snr_sum += snrs[mi][t];
            }
            st.mean_mae = sum / static_cast<double>(trials);
            st.mean_output_snr_db = snr_sum / static_cast<double>(trials);
            if (trials > 1) {
                double ss = 0.0;
                for (std::size_t t = 0; t < trials; ++t) ss += (maes[mi][t] - st.mean_mae) * (maes[mi][t] - st.mean_mae);
                st.std_mae = std::sqrt(ss / static_cast<double>(trials - 1));
            }
            row.methods.push_back(st);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

double mae_ratio_db(double mae_a, double mae_b) { return 20.0 * std::log10(mae_a / mae_b); }

} // namespace dlct

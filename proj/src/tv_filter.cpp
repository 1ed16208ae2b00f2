#include "dlct/tv_filter.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dlct {

std::string_view to_string(StopReason r) noexcept {
    switch (r) {
    case StopReason::ThresholdReached: return "ThresholdReached";
    case StopReason::BudgetExhausted: return "BudgetExhausted";
    case StopReason::NoSignificantPeak: return "NoSignificantPeak";
    }
    return "Unknown";
}

void FilterConfig::set_frame_len(int w) {
    const bool default_res = dlct.resolution == 1.0 / static_cast<double>(dlct.n_chirp);
    frame_len = w;
    dlct.n_freq = w;
    if (default_res) dlct.resolution = 1.0 / static_cast<double>(dlct.n_chirp);
}

void FilterConfig::validate() const {
    dlct.validate();
    if (q_max < 1) throw Error(Errc::InvalidParams, "q_max must be at least 1");
    if (!(p_th > 0.0 && p_th <= 1.0)) throw Error(Errc::InvalidParams, "p_th must lie in (0, 1]");
    if (!(min_dominance > 0.0)) throw Error(Errc::InvalidParams, "min_dominance must be positive");
    if (frame_len < 1) throw Error(Errc::InvalidParams, "frame length must be positive");
    if (hop < 1 || hop > frame_len) throw Error(Errc::InvalidParams, "hop must satisfy 1 <= hop <= frame length");
    if (half_width < 0 || 2 * half_width >= frame_len)
        throw Error(Errc::InvalidParams, "mask half-width must satisfy 0 <= hw < frame/2");
    if (dlct.n_freq != frame_len)
        throw Error(Errc::ConfigMismatch, "DLCT size N = " + std::to_string(dlct.n_freq) +
                                              " differs from frame length " + std::to_string(frame_len));
}

FrameResult denoise_frame(const Signal& frame, const FilterConfig& cfg) {
    cfg.validate();
    if (frame.size() != static_cast<std::size_t>(cfg.frame_len))
        throw Error(Errc::ConfigMismatch, "frame length " + std::to_string(frame.size()) + " != configured " +
                                              std::to_string(cfg.frame_len));
    frame.validate();

    FrameResult out;
    out.estimate = Signal(frame.size());
    out.estimate.sample_rate = frame.sample_rate;
    out.residual = frame;
    auto& rep = out.report;
    rep.initial_energy = frame.energy();
    if (rep.initial_energy == 0.0) {
        rep.stop_reason = StopReason::NoSignificantPeak;
        return out;
    }

    auto& r = out.residual;
    for (int iter = 0;; ++iter) {
        if (iter == cfg.q_max) {
            rep.stop_reason = StopReason::BudgetExhausted;
            break;
        }
        if (r.energy() == 0.0) {
            rep.stop_reason = StopReason::NoSignificantPeak;
            break;
        }
        const auto spectrum = dlct_forward(r, cfg.dlct);
        const auto peak = locate_peak(spectrum);
        if (peak.dominance < cfg.min_dominance) {
            rep.stop_reason = StopReason::NoSignificantPeak;
            break;
        }
        auto comp = cfg.real_signal ? extract_real_component(r, peak, cfg.dlct, cfg.half_width)
                                    : extract_component(r, peak, cfg.dlct, cfg.half_width);
        for (std::size_t n = 0; n < r.size(); ++n) {
            r[n] -= comp.waveform[n];
            out.estimate[n] += comp.waveform[n];
        }
        const double ps = r.energy();
        rep.residual_energies.push_back(ps);
        rep.components.push_back(std::move(comp));
        if (ps / rep.initial_energy < cfg.p_th) {
            rep.stop_reason = StopReason::ThresholdReached;
            break;
        }
    }
    return out;
}

std::vector<double> periodic_hann(int length) {
    std::vector<double> w(static_cast<std::size_t>(length));
    for (int n = 0; n < length; ++n)
        w[static_cast<std::size_t>(n)] =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(length));
    return w;
}

Signal overlap_add_process(const Signal& x, int frame_len, int hop, const FrameProcessor& process) {
    if (x.empty()) throw Error(Errc::InvalidSignal, "signal must contain at least one sample");
    if (frame_len < 1 || hop < 1 || hop > frame_len)
        throw Error(Errc::InvalidParams, "overlap-add needs 1 <= hop <= frame length");
    const auto w_len = static_cast<std::size_t>(frame_len);
    const auto len = x.size();

    if (len <= w_len) {
        Signal frame(w_len);
        frame.sample_rate = x.sample_rate;
        for (std::size_t n = 0; n < len; ++n) frame[n] = x[n];
        const auto y = process(frame, 0);
        if (y.size() != w_len) throw Error(Errc::LengthMismatch, "frame processor changed the frame length");
        Signal out(std::vector<Complex>(y.samples.begin(), y.samples.begin() + static_cast<std::ptrdiff_t>(len)),
                   x.sample_rate);
        return out;
    }

    const auto h = static_cast<std::size_t>(hop);
    const std::size_t lead = w_len - h;
    const std::size_t frames = (lead + len + h - 1) / h;
    const std::size_t padded_len = (frames - 1) * h + w_len;

    std::vector<double> window = hop < frame_len ? periodic_hann(frame_len) : std::vector<double>(w_len, 1.0);
    std::vector<Complex> padded(padded_len, Complex{});
    for (std::size_t n = 0; n < len; ++n) padded[lead + n] = x[n];

    std::vector<Complex> acc(padded_len, Complex{});
    std::vector<double> envelope(padded_len, 0.0);
    Signal frame(w_len);
    frame.sample_rate = x.sample_rate;
    for (std::size_t f = 0; f < frames; ++f) {
        const std::size_t start = f * h;
        for (std::size_t n = 0; n < w_len; ++n) frame[n] = padded[start + n] * window[n];
        const auto y = process(frame, f);
        if (y.size() != w_len) throw Error(Errc::LengthMismatch, "frame processor changed the frame length");
        for (std::size_t n = 0; n < w_len; ++n) {
            acc[start + n] += y[n];
            envelope[start + n] += window[n];
        }
    }

    Signal out(len);
    out.sample_rate = x.sample_rate;
    for (std::size_t n = 0; n < len; ++n) out[n] = acc[lead + n] / envelope[lead + n];
    return out;
}

DenoiseResult denoise(const Signal& x, const FilterConfig& cfg) {
    cfg.validate();
    x.validate();
    DenoiseResult result;
    result.estimate = overlap_add_process(x, cfg.frame_len, cfg.hop, [&](const Signal& frame, std::size_t) {
        auto fr = denoise_frame(frame, cfg);
        result.report.frames.push_back(std::move(fr.report));
        return std::move(fr.estimate);
    });
    return result;
}

} // namespace dlct

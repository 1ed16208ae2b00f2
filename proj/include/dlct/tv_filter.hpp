#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "dlct/chirp_analysis.hpp"
#include "dlct/signal.hpp"
#include "dlct/transform.hpp"

namespace dlct {

// Knobs of the per-frame extract/subtract loop and the framing around it.
struct FilterConfig {
    DlctParams dlct = DlctParams::with_default_resolution(256, 80);
    int q_max = 10;              // component budget per frame
    double p_th = 0.05;          // stop once P_s / P_0 < p_th
    int half_width = 2;          // mask half-width in frequency bins
    double min_dominance = 14.0; // peak-to-mean energy ratio required to extract
    int frame_len = 256;
    int hop = 128;
    // Extract conjugate-symmetric components so real inputs stay real.
    bool real_signal = false;

    // Sets frame_len and dlct.n_freq together, keeping c = 1/L when it was.
    void set_frame_len(int w);

    // Throws InvalidParams / ConfigMismatch.
    void validate() const;
};

enum class StopReason { ThresholdReached, BudgetExhausted, NoSignificantPeak };

std::string_view to_string(StopReason r) noexcept;

struct FrameReport {
    std::vector<double> residual_energies;  // P_s after each iteration
    std::vector<ChirpComponent> components;
    StopReason stop_reason = StopReason::NoSignificantPeak;
    double initial_energy = 0.0;            // P_0
};

struct DenoiseReport {
    std::vector<FrameReport> frames;
};

struct FrameResult {
    Signal estimate;  // sum of extracted components
    Signal residual;  // frame - estimate
    FrameReport report;
};

struct DenoiseResult {
    Signal estimate;
    DenoiseReport report;
};

FrameResult denoise_frame(const Signal& frame, const FilterConfig& cfg);

DenoiseResult denoise(const Signal& x, const FilterConfig& cfg);

// Processor applied to each analysis frame; gets the windowed frame (always
// frame_len samples) and the frame index, returns a frame of the same length.
using FrameProcessor = std::function<Signal(const Signal& frame, std::size_t index)>;

// Windowed overlap-add driver shared by the DLCT and DFrFT filters.
// Inputs no longer than frame_len form one zero-padded rectangular frame.
// Longer inputs get frame_len - hop leading zeros and enough trailing zeros to
// complete the hop lattice; each frame is weighted by a periodic Hann window
// (rectangular when hop == frame_len), processed, summed, and divided by the
// summed window envelope. The identity processor reproduces x.
Signal overlap_add_process(const Signal& x, int frame_len, int hop, const FrameProcessor& process);

std::vector<double> periodic_hann(int length);

} // namespace dlct

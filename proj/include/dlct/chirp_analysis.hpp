#pragma once

#include "dlct/signal.hpp"
#include "dlct/transform.hpp"

namespace dlct {

struct PeakLocation {
    int k = 0;
    int m = 0;
    double energy = 0.0;     // |X(k,m)|^2
    double dominance = 0.0;  // energy / mean grid energy
};

// One linear-chirp term x_i(n) of the decomposition x = sum_i x_i.
struct ChirpComponent {
    Signal waveform;
    int k = 0;
    int m = 0;
    double beta = 0.0;  // c * m
    double energy = 0.0;
};

// Argmax of |X(k,m)|^2 without a significance test. Ties go to the smallest
// |m|, then the smallest signed m, then the smallest k.
// Throws EmptySpectrum when every coefficient is zero.
PeakLocation locate_peak(const DlctSpectrum& spectrum);

// locate_peak plus the significance test: throws NoSignificantPeak when
// dominance < min_dominance.
PeakLocation find_peak(const DlctSpectrum& spectrum, double min_dominance);

// Narrowband projection around (k, m): demodulate by the conjugate quadratic
// phase of bin m, keep the circular frequency window [k - hw, k + hw], and
// remodulate. Linear and idempotent.
ChirpComponent extract_component(const Signal& x, const PeakLocation& peak, const DlctParams& p, int half_width);

// Same projection for real-valued signals: the orthogonal projection onto the
// span of the masked chirp atoms at (k, m) together with their complex
// conjugates, so a real input yields a real component.
ChirpComponent extract_real_component(const Signal& x, const PeakLocation& peak, const DlctParams& p,
                                      int half_width);

} // namespace dlct

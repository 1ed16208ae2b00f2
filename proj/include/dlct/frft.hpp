#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "dlct/signal.hpp"

namespace dlct {

// Transform order a, kept reduced to [0, 4). Rotation angle is a * pi / 2.
class FrftOrder {
public:
    FrftOrder() = default;
    explicit FrftOrder(double a);

    double value() const noexcept { return a_; }
    FrftOrder inverse() const { return FrftOrder(-a_); }

private:
    double a_ = 0.0;
};

struct FrftOrderGrid {
    double min = 0.01;
    double max = 1.99;
    double step = 0.01;

    std::vector<double> values() const;
};

struct FrftFilterConfig {
    FrftOrderGrid order_grid;
    int half_width = 4;
    // Only the peak-bin mask centre is defined.
    enum class CenterPolicy { PeakBin } center_policy = CenterPolicy::PeakBin;

    void validate() const;
};

// Orthonormal Hermite-Gauss-like eigenbasis of the length-N DFT, obtained
// from the even/odd blocks of the DFT-commuting tridiagonal-plus-diagonal
// matrix. Columns are in circular (origin at index 0) order; hermite[j] is
// the Hermite index of column j, so F * e_j = exp(-j pi/2 hermite[j]) e_j.
struct HermiteBasis {
    int n = 0;
    Eigen::MatrixXd vectors;
    std::vector<int> hermite;
};

// Built once per N and shared; safe to call from several threads.
std::shared_ptr<const HermiteBasis> hermite_basis(int n);

// F_a x with F_a = U diag(exp(-j pi/2 a k)) U^T in the centered index
// convention: sample n sits at position n - floor(N/2). Unitary; a = 1 is
// the unitary centered DFT, a = 2 the parity operator. Throws TooShort.
Signal dfrft(const Signal& x, FrftOrder order);

struct FrftDenoiseResult {
    Signal estimate;
    double order = 0.0;  // selected a*
    int peak_bin = 0;    // storage index of the mask centre in the a* domain
    double score = 0.0;  // peak-to-total energy at a*
};

// Single-pass concentration-search filter: pick the grid order whose
// transform has the largest peak-to-total energy ratio (smallest a wins
// ties), keep a circular window around the peak bin, transform back.
FrftDenoiseResult dfrft_denoise_detailed(const Signal& x, const FrftFilterConfig& cfg);

Signal dfrft_denoise(const Signal& x, const FrftFilterConfig& cfg);

} // namespace dlct

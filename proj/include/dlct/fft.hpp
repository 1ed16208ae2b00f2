#pragma once

#include <span>
#include <vector>

#include "dlct/signal.hpp"

namespace dlct::fft {

// Unnormalized forward DFT: X(k) = sum_n x(n) exp(-j 2 pi k n / N).
void forward(std::span<const Complex> in, std::span<Complex> out);

// Unnormalized inverse DFT: x(n) = sum_k X(k) exp(+j 2 pi k n / N).
// No 1/N factor is applied.
void backward(std::span<const Complex> in, std::span<Complex> out);

std::vector<Complex> forward(std::span<const Complex> in);
std::vector<Complex> backward(std::span<const Complex> in);

} // namespace dlct::fft

#include "dlct/frft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace dlct {
namespace {

using Eigen::Index;

HermiteBasis build_basis(int n) {
    const auto size = static_cast<Index>(n);
    // Circulant second difference plus its DFT on the diagonal; commutes with
    // the DFT matrix.
    std::vector<double> s(static_cast<std::size_t>(n), 0.0);
    s[0] = -2.0;
    s[1] += 1.0;
    s[static_cast<std::size_t>(n - 1)] += 1.0;

    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(size, size);
    for (Index i = 0; i < size; ++i) {
        for (Index j = 0; j < size; ++j) S(i, j) = s[static_cast<std::size_t>(((j - i) % size + size) % size)];
        double d = 0.0;
        for (Index t = 0; t < size; ++t)
            d += s[static_cast<std::size_t>(t)] *
                 std::cos(2.0 * std::numbers::pi * static_cast<double>((i * t) % size) / static_cast<double>(n));
        S(i, i) += d;
    }

    // Orthogonal even/odd change of basis, symmetric and involutory.
    const Index r = size / 2;
    const bool even = n % 2 == 0;
    const double h = std::sqrt(0.5);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(size, size);
    P(0, 0) = 1.0;
    for (Index i = 1; i <= r - (even ? 1 : 0); ++i) {
        P(i, i) = h;
        P(i, size - i) = h;
    }
    if (even) P(r, r) = 1.0;
    for (Index i = r + 1; i < size; ++i) {
        P(i, i) = -h;
        P(i, size - i) = h;
    }

    const Eigen::MatrixXd CS = P * S * P.transpose();
    const Index n_even = r + 1;
    const Index n_odd = size - n_even;

    HermiteBasis basis;
    basis.n = n;
    basis.vectors = Eigen::MatrixXd::Zero(size, size);
    basis.hermite.assign(static_cast<std::size_t>(n), 0);
    Index col = 0;

    // Eigen sorts eigenvalues ascending; Hermite order follows descending.
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(CS.topLeftCorner(n_even, n_even));
        for (Index j = 0; j < n_even; ++j) {
            Eigen::VectorXd padded = Eigen::VectorXd::Zero(size);
            padded.head(n_even) = es.eigenvectors().col(n_even - 1 - j);
            basis.vectors.col(col) = P.transpose() * padded;
            basis.hermite[static_cast<std::size_t>(col)] = static_cast<int>(2 * j);
            ++col;
        }
    }
    if (n_odd > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(CS.bottomRightCorner(n_odd, n_odd));
        for (Index j = 0; j < n_odd; ++j) {
            Eigen::VectorXd padded = Eigen::VectorXd::Zero(size);
            padded.tail(n_odd) = es.eigenvectors().col(n_odd - 1 - j);
            basis.vectors.col(col) = P.transpose() * padded;
            basis.hermite[static_cast<std::size_t>(col)] = static_cast<int>(2 * j + 1);
            ++col;
        }
    }
    return basis;
}

std::size_t centre_offset(std::size_t n) { return n / 2; }

// Storage order -> circular order with the centre sample at index 0.
Eigen::VectorXcd to_circular(const Signal& x) {
    const auto n = x.size();
    const auto f = centre_offset(n);
    Eigen::VectorXcd u(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) u(static_cast<Index>((i + n - f) % n)) = x[i];
    return u;
}

Signal from_circular(const Eigen::VectorXcd& u, const Signal& like) {
    const auto n = static_cast<std::size_t>(u.size());
    const auto f = centre_offset(n);
    Signal y(n);
    y.sample_rate = like.sample_rate;
    for (std::size_t i = 0; i < n; ++i) y[i] = u(static_cast<Index>((i + n - f) % n));
    return y;
}

Eigen::VectorXcd eigen_phases(const HermiteBasis& b, double a) {
    Eigen::VectorXcd ph(b.n);
    for (Index j = 0; j < b.n; ++j) {
        // Reduce a*k modulo 4 before scaling to keep the phase small.
        const double turns = std::fmod(a * static_cast<double>(b.hermite[static_cast<std::size_t>(j)]), 4.0);
        const double phase = -0.5 * std::numbers::pi * turns;
        ph(j) = Complex(std::cos(phase), std::sin(phase));
    }
    return ph;
}

void check_length(const Signal& x) {
    if (x.size() < 2) throw Error(Errc::TooShort, "DFrFT needs at least 2 samples, got " + std::to_string(x.size()));
    x.validate();
}

} // namespace

FrftOrder::FrftOrder(double a) {
    if (!std::isfinite(a)) throw Error(Errc::InvalidParams, "transform order must be finite");
    a_ = std::fmod(a, 4.0);
    if (a_ < 0.0) a_ += 4.0;
    if (a_ >= 4.0) a_ = 0.0;
}

std::vector<double> FrftOrderGrid::values() const {
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((max - min) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(min + static_cast<double>(i) * step);
    return out;
}

void FrftFilterConfig::validate() const {
    if (!(order_grid.step > 0.0)) throw Error(Errc::InvalidParams, "order grid step must be positive");
    if (!(order_grid.min < order_grid.max)) throw Error(Errc::InvalidParams, "order grid needs a_min < a_max");
    if (half_width < 0) throw Error(Errc::InvalidParams, "mask half-width must be nonnegative");
}

std::shared_ptr<const HermiteBasis> hermite_basis(int n) {
    if (n < 2) throw Error(Errc::TooShort, "DFrFT needs at least 2 samples");
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const HermiteBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const HermiteBasis>(build_basis(n));
    return slot;
}

Signal dfrft(const Signal& x, FrftOrder order) {
    check_length(x);
    const auto basis = hermite_basis(static_cast<int>(x.size()));
    const Eigen::VectorXcd coeffs = basis->vectors.transpose().cast<Complex>() * to_circular(x);
    const Eigen::VectorXcd rotated = coeffs.cwiseProduct(eigen_phases(*basis, order.value()));
    const Eigen::VectorXcd u = basis->vectors.cast<Complex>() * rotated;
    return from_circular(u, x);
}

FrftDenoiseResult dfrft_denoise_detailed(const Signal& x, const FrftFilterConfig& cfg) {
    cfg.validate();
    check_length(x);
    const auto n = static_cast<int>(x.size());
    if (2 * cfg.half_width >= n) throw Error(Errc::InvalidParams, "mask half-width must be below N/2");
    const auto basis = hermite_basis(n);
    const Eigen::MatrixXcd U = basis->vectors.cast<Complex>();
    const Eigen::VectorXcd coeffs = U.transpose() * to_circular(x);

    FrftDenoiseResult best;
    best.score = -1.0;
    Eigen::VectorXcd best_domain;
    for (const double a : cfg.order_grid.values()) {
        const Eigen::VectorXcd y = U * coeffs.cwiseProduct(eigen_phases(*basis, a));
        Index peak = 0;
        const double peak_energy = y.cwiseAbs2().maxCoeff(&peak);
        const double total = y.squaredNorm();
        const double score = total > 0.0 ? peak_energy / total : 0.0;
        if (score > best.score) {
            best.score = score;
            best.order = a;
            best.peak_bin = static_cast<int>(peak);
            best_domain = y;
        }
    }

    Eigen::VectorXcd masked = Eigen::VectorXcd::Zero(n);
    for (int d = -cfg.half_width; d <= cfg.half_width; ++d) {
        const Index i = ((best.peak_bin + d) % n + n) % n;
        masked(i) = best_domain(i);
    }
    const Eigen::VectorXcd back =
        U * (U.transpose() * masked).cwiseProduct(eigen_phases(*basis, FrftOrder(-best.order).value()));
    best.estimate = from_circular(back, x);
    // Report the peak in storage order.
    best.peak_bin = static_cast<int>((static_cast<std::size_t>(best.peak_bin) + centre_offset(x.size())) % x.size());
    return best;
}

Signal dfrft_denoise(const Signal& x, const FrftFilterConfig& cfg) { return dfrft_denoise_detailed(x, cfg).estimate; }

} // namespace dlct

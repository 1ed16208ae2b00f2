#include <doctest.h>

#include "dlct/eval.hpp"
#include "dlct/tv_filter.hpp"
#include "oracles.hpp"

using namespace dlct;

namespace {

FilterConfig grid64_config() {
    FilterConfig cfg;
    cfg.dlct = DlctParams::with_default_resolution(256, 64);
    cfg.p_th = 0.05;
    cfg.q_max = 10;
    return cfg;
}

Signal planted(int k, int m) { return oracle::chirp(256, m / 64.0L, k); }

void check_frame_invariants(const Signal& frame, const FrameResult& fr, const FilterConfig& cfg) {
    const auto& rep = fr.report;
    CHECK(rep.components.size() <= static_cast<std::size_t>(cfg.q_max));
    CHECK(rep.components.size() == rep.residual_energies.size());
    double prev = rep.initial_energy;
    for (const double ps : rep.residual_energies) {
        CHECK(ps <= prev * (1.0 + 1e-12));
        prev = ps;
    }
    // frame = estimate + residual exactly along the subtraction chain
    Signal recombined(frame.size());
    for (std::size_t n = 0; n < frame.size(); ++n) recombined[n] = fr.estimate[n] + fr.residual[n];
    double diff = 0.0;
    for (std::size_t n = 0; n < frame.size(); ++n) diff += std::norm(frame[n] - recombined[n]);
    CHECK(std::sqrt(diff) < 1e-10 * std::max(1.0, frame.norm()));

    const double ratio = rep.residual_energies.empty() ? 1.0 : rep.residual_energies.back() / rep.initial_energy;
    switch (rep.stop_reason) {
    case StopReason::ThresholdReached: CHECK(ratio < cfg.p_th); break;
    case StopReason::BudgetExhausted:
        CHECK(rep.components.size() == static_cast<std::size_t>(cfg.q_max));
        CHECK(ratio >= cfg.p_th);
        break;
    case StopReason::NoSignificantPeak:
        CHECK(rep.components.size() < static_cast<std::size_t>(cfg.q_max));
        if (!rep.residual_energies.empty()) CHECK(ratio >= cfg.p_th);
        break;
    }
}

} // namespace

TEST_SUITE("tv_filter") {

TEST_CASE("clean on-grid chirp frame is recovered in one iteration") {
    const auto cfg = grid64_config();
    const auto x = planted(32, 8);
    const auto fr = denoise_frame(x, cfg);
    REQUIRE(fr.report.residual_energies.size() == 1);
    CHECK(fr.report.residual_energies[0] / fr.report.initial_energy < 1e-12);
    CHECK(oracle::rel_l2(fr.estimate, x) < 1e-10);
    CHECK(fr.report.stop_reason == StopReason::ThresholdReached);
    REQUIRE(fr.report.components.size() == 1);
    CHECK(fr.report.components[0].k == 32);
    CHECK(fr.report.components[0].m == 8);
    check_frame_invariants(x, fr, cfg);
}

TEST_CASE("zero frame") {
    const auto fr = denoise_frame(Signal(256), grid64_config());
    CHECK(fr.report.components.empty());
    CHECK(fr.report.residual_energies.empty());
    CHECK(fr.report.stop_reason == StopReason::NoSignificantPeak);
    for (const auto& v : fr.estimate.samples) CHECK(v == Complex{});
}

TEST_CASE("noisy chirp frame at 0 dB: estimate beats the noisy input on average") {
    const auto cfg = grid64_config();
    const auto clean = planted(32, 8);
    double mae_noisy = 0.0, mae_est = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto noisy = add_awgn(clean, NoiseSpec{0.0, seed, NoiseKind::ComplexCircularGaussian});
        const auto fr = denoise_frame(noisy, cfg);
        check_frame_invariants(noisy, fr, cfg);
        mae_noisy += mae(clean, noisy);
        mae_est += mae(clean, fr.estimate);
    }
    CHECK(mae_est < mae_noisy);
}

TEST_CASE("stop reasons") {
    const auto noisy = add_awgn(planted(32, 8), NoiseSpec{0.0, 3, NoiseKind::ComplexCircularGaussian});

    SUBCASE("budget") {
        auto cfg = grid64_config();
        cfg.q_max = 1;
        cfg.p_th = 1e-6;
        cfg.min_dominance = 1e-9;
        const auto fr = denoise_frame(noisy, cfg);
        CHECK(fr.report.stop_reason == StopReason::BudgetExhausted);
        check_frame_invariants(noisy, fr, cfg);
    }
    SUBCASE("significance") {
        auto cfg = grid64_config();
        cfg.min_dominance = 1e6;
        const auto fr = denoise_frame(noisy, cfg);
        CHECK(fr.report.stop_reason == StopReason::NoSignificantPeak);
        CHECK(fr.report.components.empty());
        for (const auto& v : fr.estimate.samples) CHECK(v == Complex{});
    }
    SUBCASE("threshold of one stops after the first extraction") {
        auto cfg = grid64_config();
        cfg.p_th = 1.0;
        const auto fr = denoise_frame(noisy, cfg);
        CHECK(fr.report.stop_reason == StopReason::ThresholdReached);
        CHECK(fr.report.components.size() == 1);
    }
}

TEST_CASE("frame invariants across random configurations") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        FilterConfig cfg;
        const int l = 2 * static_cast<int>(1 + rng() % 20);
        cfg.dlct = DlctParams::with_default_resolution(64, l);
        cfg.set_frame_len(64);
        cfg.hop = 32;
        cfg.q_max = 1 + static_cast<int>(rng() % 6);
        cfg.p_th = 0.001 + static_cast<double>(rng() % 1000) / 1000.0;
        cfg.half_width = static_cast<int>(rng() % 5);
        cfg.min_dominance = 1.0 + static_cast<double>(rng() % 20);
        cfg.real_signal = trial % 3 == 0;
        auto x = oracle::random_signal(64, rng());
        const auto c = oracle::chirp(64, 3.0L / l, 9, +1, 3.0);
        for (std::size_t n = 0; n < 64; ++n) x[n] = cfg.real_signal ? Complex((x[n] + c[n]).real(), 0.0) : x[n] + c[n];
        const auto fr = denoise_frame(x, cfg);
        check_frame_invariants(x, fr, cfg);
        if (cfg.real_signal) CHECK(fr.estimate.is_real());
    }
}

TEST_CASE("extracted energies and the residual account for the frame energy") {
    auto cfg = grid64_config();
    cfg.p_th = 1e-9;
    Signal x = planted(32, 8);
    const auto second = oracle::chirp(256, -4 / 64.0L, 150, +1, 0.5);
    for (std::size_t n = 0; n < 256; ++n) x[n] += second[n];
    const auto fr = denoise_frame(x, cfg);
    // The first window also removes a little of the weaker chirp, so a few
    // small corrections may follow the two main extractions.
    REQUIRE(fr.report.components.size() >= 2);
    CHECK(fr.report.components[0].k == 32);
    CHECK(fr.report.components[0].m == 8);
    CHECK(fr.report.components[1].k == 150);
    CHECK(fr.report.components[1].m == -4);
    double sum = 0.0;
    for (const auto& c : fr.report.components) sum += c.energy;
    const double e0 = x.energy();
    CHECK(std::abs(e0 - sum - fr.report.residual_energies.back()) / e0 < 1e-6);
}

TEST_CASE("determinism") {
    const auto cfg = grid64_config();
    const auto noisy = add_awgn(planted(32, 8), NoiseSpec{-3.0, 99, NoiseKind::ComplexCircularGaussian});
    const auto a = denoise_frame(noisy, cfg);
    const auto b = denoise_frame(noisy, cfg);
    CHECK(a.estimate.samples == b.estimate.samples);
    CHECK(a.report.residual_energies == b.report.residual_energies);
    REQUIRE(a.report.components.size() == b.report.components.size());
    for (std::size_t i = 0; i < a.report.components.size(); ++i) {
        CHECK(a.report.components[i].k == b.report.components[i].k);
        CHECK(a.report.components[i].m == b.report.components[i].m);
        CHECK(a.report.components[i].energy == b.report.components[i].energy);
    }
}

TEST_CASE("configuration errors") {
    auto cfg = grid64_config();
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::IoFailure;
    };
    CHECK(code_of([&] { (void)denoise_frame(Signal(128), cfg); }) == Errc::ConfigMismatch);
    auto bad = cfg;
    bad.frame_len = 128;
    CHECK(code_of([&] { (void)denoise_frame(Signal(128), bad); }) == Errc::ConfigMismatch);
    bad = cfg;
    bad.p_th = 0.0;
    CHECK(code_of([&] { bad.validate(); }) == Errc::InvalidParams);
    bad = cfg;
    bad.p_th = 1.5;
    CHECK(code_of([&] { bad.validate(); }) == Errc::InvalidParams);
    bad = cfg;
    bad.q_max = 0;
    CHECK(code_of([&] { bad.validate(); }) == Errc::InvalidParams);
    bad = cfg;
    bad.hop = 300;
    CHECK(code_of([&] { bad.validate(); }) == Errc::InvalidParams);
}

TEST_CASE("short inputs run as a single frame") {
    const auto cfg = grid64_config();
    const auto x = oracle::random_signal(100, 1);
    const auto out = denoise(x, cfg);
    CHECK(out.estimate.size() == 100);
    CHECK(out.report.frames.size() == 1);
}

TEST_CASE("zero signals of any length stay zero") {
    const auto cfg = grid64_config();
    for (std::size_t len : {1U, 100U, 256U, 257U, 1000U}) {
        const auto out = denoise(Signal(len), cfg);
        REQUIRE(out.estimate.size() == len);
        for (const auto& v : out.estimate.samples) CHECK(v == Complex{});
    }
}

TEST_CASE("overlap-add with an identity processor is perfect reconstruction") {
    for (auto [w, h] : {std::pair{256, 128}, {256, 64}, {64, 48}, {64, 64}, {64, 1}}) {
        for (std::size_t len : {1U, 63U, 64U, 65U, 300U, 1024U}) {
            const auto x = oracle::random_signal(len, len * 7 + static_cast<std::size_t>(h));
            const auto y = overlap_add_process(x, w, h, [](const Signal& f, std::size_t) { return f; });
            REQUIRE(y.size() == len);
            CHECK_MESSAGE(oracle::max_abs_diff(x, y) < 1e-10, "W=" << w << " H=" << h << " len=" << len);
        }
    }
}

TEST_CASE("clean long chirp through the framed filter") {
    FilterConfig cfg;  // W = 256, H = 128
    const auto x = synth_chirp(1024, 0.1, 10.0, 256.0);
    const auto out = denoise(x, cfg);
    CHECK(oracle::rel_l2(out.estimate, x) < 0.05);

    // Direct per-frame run: lead-pad, Hann window, denoise_frame, overlap-add.
    const std::size_t lead = 128, frames = (lead + 1024 + 127) / 128;
    std::vector<Complex> padded((frames - 1) * 128 + 256), acc(padded.size());
    std::vector<double> env(padded.size());
    for (std::size_t n = 0; n < 1024; ++n) padded[lead + n] = x[n];
    for (std::size_t f = 0; f < frames; ++f) {
        Signal frame(256);
        for (std::size_t n = 0; n < 256; ++n) {
            const double wn = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / 256.0);
            frame[n] = padded[f * 128 + n] * wn;
            env[f * 128 + n] += wn;
        }
        const auto fr = denoise_frame(frame, cfg);
        for (std::size_t n = 0; n < 256; ++n) acc[f * 128 + n] += fr.estimate[n];
    }
    Signal direct(1024);
    for (std::size_t n = 0; n < 1024; ++n) direct[n] = acc[lead + n] / env[lead + n];
    CHECK(oracle::max_abs_diff(direct, out.estimate) < 1e-12);
    CHECK(out.report.frames.size() == frames);
}

TEST_CASE("real inputs produce real estimates") {
    FilterConfig cfg;
    cfg.real_signal = true;
    const auto analytic = synth_chirp(1000, 0.05, 30.0, 256.0);
    Signal x(1000);
    for (std::size_t n = 0; n < 1000; ++n) x[n] = Complex(analytic[n].real(), 0.0);
    const auto noisy = add_awgn(x, NoiseSpec{5.0, 4, NoiseKind::RealGaussian});
    const auto out = denoise(noisy, cfg);
    double max_imag = 0.0;
    for (const auto& v : out.estimate.samples) max_imag = std::max(max_imag, std::abs(v.imag()));
    CHECK(max_imag < 1e-9);
    CHECK(mae(x, out.estimate) < mae(x, noisy));
}

} // TEST_SUITE

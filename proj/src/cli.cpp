#include "dlct/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dlct/eval.hpp"
#include "dlct/io.hpp"
#include "dlct/transform.hpp"
#include "dlct/tv_filter.hpp"

namespace dlct::cli {
namespace {

namespace fs = std::filesystem;

// Validation failure attributed to one command-line flag.
struct FlagError : std::runtime_error {
    FlagError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

struct RunConfig {
    // transform / filter
    std::optional<double> c_res;
    int lbins = 80;
    std::optional<int> frame;
    std::optional<int> hop;
    double pth = 0.05;
    int qmax = 10;
    int half_width = 2;
    double min_dominance = 14.0;
    // baseline
    int frft_half_width = 4;
    double order_min = 0.01, order_max = 1.99, order_step = 0.01;
    // experiment
    std::uint64_t seed = 1;
    int trials = 50;
    std::optional<double> snr;
    std::string snr_range;
    std::string methods = "dlct,frft";
    std::string method = "dlct";
    // files
    std::string input, reference, output, report, tag;
    // synth
    std::string preset = "chirp";
    int n_samples = 256;
    double alpha = 0.1, f0 = 10.0, scale = 256.0, sample_rate = 8000.0;
    bool real_part = false;
};

void add_filter_flags(CLI::App& app, RunConfig& rc) {
    app.add_option("--c-res", rc.c_res, "Chirp-rate resolution c (default 1/L)");
    app.add_option("--lbins", rc.lbins, "Number of chirp-rate bins L (even)")->capture_default_str();
    app.add_option("--frame", rc.frame, "Frame length W (default 256, 512 for WAV input)");
    app.add_option("--hop", rc.hop, "Hop H <= W (default W/2)");
    app.add_option("--pth", rc.pth, "Residual energy threshold P_th in (0,1]")->capture_default_str();
    app.add_option("--qmax", rc.qmax, "Maximum components per frame")->capture_default_str();
    app.add_option("--half-width", rc.half_width, "DLCT mask half-width (bins)")->capture_default_str();
    app.add_option("--min-dominance", rc.min_dominance, "Peak-to-mean energy needed to extract")->capture_default_str();
    app.add_option("--frft-half-width", rc.frft_half_width, "DFrFT mask half-width (bins)")->capture_default_str();
    app.add_option("--order-min", rc.order_min, "DFrFT order grid start")->capture_default_str();
    app.add_option("--order-max", rc.order_max, "DFrFT order grid end")->capture_default_str();
    app.add_option("--order-step", rc.order_step, "DFrFT order grid step")->capture_default_str();
}

void add_noise_flags(CLI::App& app, RunConfig& rc) {
    app.add_option("--seed", rc.seed, "Noise seed")->capture_default_str();
    app.add_option("--snr", rc.snr, "Input SNR in dB");
}

void add_output_flags(CLI::App& app, RunConfig& rc) {
    app.add_option("--output", rc.output, "Output file");
    app.add_option("--tag", rc.tag, "Free-form run label stored in reports");
}

FilterConfig make_filter_config(const RunConfig& rc, bool audio_defaults) {
    if (rc.lbins < 2 || rc.lbins % 2 != 0) throw FlagError("--lbins", "must be an even integer >= 2");
    if (rc.c_res && !(*rc.c_res > 0.0)) throw FlagError("--c-res", "must be positive");
    const int frame = rc.frame.value_or(audio_defaults ? 512 : 256);
    if (frame < 2) throw FlagError("--frame", "must be at least 2");
    const int hop = rc.hop.value_or(frame / 2);
    if (hop < 1 || hop > frame) throw FlagError("--hop", "must satisfy 1 <= hop <= frame");
    if (!(rc.pth > 0.0 && rc.pth <= 1.0)) throw FlagError("--pth", "must lie in (0, 1]");
    if (rc.qmax < 1) throw FlagError("--qmax", "must be at least 1");
    if (rc.half_width < 0 || 2 * rc.half_width >= frame) throw FlagError("--half-width", "must satisfy 0 <= hw < frame/2");
    if (!(rc.min_dominance > 0.0)) throw FlagError("--min-dominance", "must be positive");

    FilterConfig cfg;
    cfg.dlct = DlctParams{rc.c_res.value_or(1.0 / rc.lbins), frame, rc.lbins};
    cfg.frame_len = frame;
    cfg.hop = hop;
    cfg.p_th = rc.pth;
    cfg.q_max = rc.qmax;
    cfg.half_width = rc.half_width;
    cfg.min_dominance = rc.min_dominance;
    cfg.validate();
    return cfg;
}

FrftFilterConfig make_frft_config(const RunConfig& rc) {
    if (rc.frft_half_width < 0) throw FlagError("--frft-half-width", "must be nonnegative");
    if (!(rc.order_step > 0.0)) throw FlagError("--order-step", "must be positive");
    if (!(rc.order_min < rc.order_max)) throw FlagError("--order-min", "must be below --order-max");
    FrftFilterConfig cfg;
    cfg.order_grid = {rc.order_min, rc.order_max, rc.order_step};
    cfg.half_width = rc.frft_half_width;
    return cfg;
}

std::vector<double> parse_snr_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw FlagError("--snr-range", "expected min:max:step, got '" + text + "'");
        }
    }
    if (parts.size() != 3) throw FlagError("--snr-range", "expected min:max:step, got '" + text + "'");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0) || hi < lo) throw FlagError("--snr-range", "needs step > 0 and max >= min");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "dlct") out.push_back(Method::Dlct);
        else if (item == "frft") out.push_back(Method::Dfrft);
        else if (!item.empty()) throw FlagError("--methods", "unknown method '" + item + "'");
    }
    if (out.empty()) throw Error(Errc::EmptyMethodSet, "--methods selects no method");
    return out;
}

bool is_wav_path(const std::string& path) {
    auto ext = fs::path(path).extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext == ".wav";
}

Signal load_input(const RunConfig& rc) {
    if (rc.input.empty()) return reference_chirp();
    auto x = io::read_signal(rc.input);
    x.validate();
    return x;
}

int run_synth(const RunConfig& rc, std::ostream& out) {
    if (rc.output.empty()) throw FlagError("--output", "is required for synth");
    Signal x;
    if (rc.preset == "chirp") {
        if (rc.n_samples < 1) throw FlagError("--n-samples", "must be at least 1");
        if (rc.scale == 0.0) throw FlagError("--scale", "must be nonzero");
        x = synth_chirp(rc.n_samples, rc.alpha, rc.f0, rc.scale);
        if (rc.real_part)
            for (auto& v : x.samples) v = Complex(v.real(), 0.0);
        x.sample_rate = rc.sample_rate;
    } else if (rc.preset == "bird") {
        if (rc.n_samples < 1) throw FlagError("--n-samples", "must be at least 1");
        if (!(rc.sample_rate > 0.0)) throw FlagError("--sample-rate", "must be positive");
        x = synth_chirp_train(rc.n_samples, rc.sample_rate);
    } else {
        throw FlagError("--preset", "must be 'chirp' or 'bird'");
    }
    if (is_wav_path(rc.output) && !x.is_real()) throw FlagError("--output", "WAV output needs a real signal (use --real)");
    io::write_signal(x, rc.output);
    out << "wrote " << x.size() << " samples to " << rc.output << "\n";
    return 0;
}

int run_transform(const RunConfig& rc, std::ostream& out) {
    if (rc.input.empty()) throw FlagError("--input", "is required for transform");
    const auto x = load_input(rc);
    if (rc.lbins < 2 || rc.lbins % 2 != 0) throw FlagError("--lbins", "must be an even integer >= 2");
    if (rc.c_res && !(*rc.c_res > 0.0)) throw FlagError("--c-res", "must be positive");
    const DlctParams p{rc.c_res.value_or(1.0 / rc.lbins), static_cast<int>(x.size()), rc.lbins};
    const auto csv = io::spectrum_energy_csv(dlct_forward(x, p));
    if (rc.output.empty()) out << csv;
    else io::write_text(rc.output, csv);
    return 0;
}

struct NoisyInput {
    Signal clean;  // input as read
    Signal noisy;  // what gets filtered
    std::optional<Signal> reference;
};

NoisyInput prepare_noisy(const RunConfig& rc) {
    NoisyInput ni;
    ni.clean = load_input(rc);
    ni.noisy = ni.clean;
    if (rc.snr) {
        ni.noisy = add_awgn(ni.clean, NoiseSpec{*rc.snr, rc.seed, default_noise_kind(ni.clean)});
        ni.reference = ni.clean;
    }
    if (!rc.reference.empty()) {
        auto ref = io::read_signal(rc.reference);
        if (ref.size() != ni.clean.size()) throw FlagError("--reference", "length differs from --input");
        ni.reference = std::move(ref);
    }
    return ni;
}

int run_denoise(const RunConfig& rc, std::ostream& out) {
    if (rc.input.empty()) throw FlagError("--input", "is required for denoise");
    if (rc.method != "dlct" && rc.method != "frft") throw FlagError("--method", "must be 'dlct' or 'frft'");
    const auto ni = prepare_noisy(rc);
    const bool audio = is_wav_path(rc.input);
    auto cfg = make_filter_config(rc, audio);
    cfg.real_signal = ni.noisy.is_real();
    const auto frft_cfg = make_frft_config(rc);

    Signal estimate;
    std::optional<DenoiseReport> report;
    if (rc.method == "dlct") {
        auto res = denoise(ni.noisy, cfg);
        estimate = std::move(res.estimate);
        report = std::move(res.report);
    } else {
        estimate = run_dfrft(ni.noisy, frft_cfg, cfg.frame_len, cfg.hop);
    }
    estimate.sample_rate = ni.clean.sample_rate;

    std::optional<double> err, noisy_err;
    if (ni.reference) {
        err = mae(*ni.reference, estimate);
        noisy_err = mae(*ni.reference, ni.noisy);
    }
    auto json = report ? io::dlct_report_json(*report, cfg, err, noisy_err)
                       : io::frft_report_json(frft_cfg, cfg.frame_len, cfg.hop, err, noisy_err);
    if (!rc.tag.empty()) json["tag"] = rc.tag;
    const auto text = json.dump(2) + "\n";

    if (!rc.output.empty()) {
        io::write_signal(estimate, rc.output);
        const std::string report_path = rc.report.empty() ? rc.output + ".json" : rc.report;
        io::write_text(report_path, text);
        out << "wrote " << rc.output << " and " << report_path << "\n";
    } else if (!rc.report.empty()) {
        io::write_text(rc.report, text);
    } else {
        out << text;
    }
    return 0;
}

int run_sweep_cmd(const RunConfig& rc, std::ostream& out) {
    SweepConfig sc;
    const auto clean = load_input(rc);
    const bool audio = !rc.input.empty() && is_wav_path(rc.input);
    if (!rc.snr_range.empty()) sc.snr_points = parse_snr_range(rc.snr_range);
    else if (rc.snr) sc.snr_points = {*rc.snr};
    else sc.snr_points = parse_snr_range("-10:40:5");
    if (rc.trials < 1) throw FlagError("--trials", "must be at least 1");
    sc.trials = rc.trials;
    sc.methods = parse_methods(rc.methods);
    sc.base_seed = rc.seed;
    sc.dlct = make_filter_config(rc, audio);
    sc.dfrft = make_frft_config(rc);
    const auto res = run_sweep(clean, sc);
    const auto csv = io::sweep_csv(res);
    if (rc.output.empty()) {
        out << csv;
        return 0;
    }
    io::write_text(rc.output, csv);
    out << "wrote " << res.rows.size() * sc.methods.size() << " rows to " << rc.output << "\n";
    const bool both = res.rows.front().find(Method::Dlct) && res.rows.front().find(Method::Dfrft);
    if (both) {
        out << "snr_db  mae_gain_db  output_snr_gain_db   (DLCT over DFrFT)\n";
        for (const auto& row : res.rows) {
            const auto* d = row.find(Method::Dlct);
            const auto* f = row.find(Method::Dfrft);
            out << std::setw(6) << row.snr_db << "  " << std::setw(11) << std::fixed << std::setprecision(2)
                << mae_ratio_db(f->mean_mae, d->mean_mae) << "  " << std::setw(18)
                << d->mean_output_snr_db - f->mean_output_snr_db << "\n"
                << std::defaultfloat;
        }
    }
    return 0;
}

int run_compare(const RunConfig& rc, std::ostream& out) {
    RunConfig local = rc;
    if (!local.snr) local.snr = 0.0;
    const auto ni = prepare_noisy(local);
    const bool audio = !rc.input.empty() && is_wav_path(rc.input);
    auto cfg = make_filter_config(rc, audio);
    cfg.real_signal = ni.noisy.is_real();
    const auto frft_cfg = make_frft_config(rc);
    const auto& ref = *ni.reference;

    const auto dlct_est = run_dlct(ni.noisy, cfg);
    const auto frft_est = run_dfrft(ni.noisy, frft_cfg, cfg.frame_len, cfg.hop);
    const double m_noisy = mae(ref, ni.noisy), m_dlct = mae(ref, dlct_est), m_frft = mae(ref, frft_est);

    out << "input SNR " << *local.snr << " dB, seed " << rc.seed << "\n";
    out << std::left << std::setw(8) << "method" << std::setw(14) << "mae" << "output_snr_db\n";
    out << std::setw(8) << "noisy" << std::setw(14) << m_noisy << output_snr_db(ref, ni.noisy) << "\n";
    out << std::setw(8) << "dlct" << std::setw(14) << m_dlct << output_snr_db(ref, dlct_est) << "\n";
    out << std::setw(8) << "frft" << std::setw(14) << m_frft << output_snr_db(ref, frft_est) << "\n";
    out << "DLCT MAE gain over DFrFT: " << mae_ratio_db(m_frft, m_dlct) << " dB\n";
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Linear chirp transform denoising toolkit", "dlct_cli"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Write the reference chirp or a chirp-train test signal");
    synth->add_option("--preset", rc.preset, "chirp | bird")->capture_default_str();
    synth->add_option("--n-samples", rc.n_samples, "Number of samples")->capture_default_str();
    synth->add_option("--alpha", rc.alpha, "Quadratic phase coefficient")->capture_default_str();
    synth->add_option("--f0", rc.f0, "Linear phase coefficient")->capture_default_str();
    synth->add_option("--scale", rc.scale, "Phase scale (phase = pi/scale * (alpha n^2 + f0 n))")->capture_default_str();
    synth->add_option("--sample-rate", rc.sample_rate, "Sample rate metadata (Hz)")->capture_default_str();
    synth->add_flag("--real", rc.real_part, "Keep only the real part");
    add_output_flags(*synth, rc);

    auto* transform = app.add_subcommand("transform", "Write the |X(k,m)|^2 grid of a signal as CSV");
    transform->add_option("--input", rc.input, "Input CSV or WAV");
    transform->add_option("--c-res", rc.c_res, "Chirp-rate resolution c (default 1/L)");
    transform->add_option("--lbins", rc.lbins, "Number of chirp-rate bins L (even)")->capture_default_str();
    add_output_flags(*transform, rc);

    auto* den = app.add_subcommand("denoise", "Denoise a signal and write the estimate plus a JSON report");
    den->add_option("--input", rc.input, "Input CSV or WAV");
    den->add_option("--method", rc.method, "dlct | frft")->capture_default_str();
    den->add_option("--reference", rc.reference, "Clean reference for MAE");
    den->add_option("--report", rc.report, "Report path (default <output>.json)");
    add_filter_flags(*den, rc);
    add_noise_flags(*den, rc);
    add_output_flags(*den, rc);

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo MAE-vs-SNR sweep, written as CSV");
    sweep->add_option("--input", rc.input, "Clean input (default: reference chirp)");
    sweep->add_option("--methods", rc.methods, "Comma-separated subset of dlct,frft")->capture_default_str();
    sweep->add_option("--trials", rc.trials, "Trials per SNR point")->capture_default_str();
    sweep->add_option("--snr-range", rc.snr_range, "min:max:step in dB (default -10:40:5)");
    add_filter_flags(*sweep, rc);
    add_noise_flags(*sweep, rc);
    add_output_flags(*sweep, rc);

    auto* compare = app.add_subcommand("compare", "Run both filters on one noisy realization");
    compare->add_option("--input", rc.input, "Clean input (default: reference chirp)");
    add_filter_flags(*compare, rc);
    add_noise_flags(*compare, rc);
    add_output_flags(*compare, rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (*synth) return run_synth(rc, out);
        if (*transform) return run_transform(rc, out);
        if (*den) return run_denoise(rc, out);
        if (*sweep) return run_sweep_cmd(rc, out);
        if (*compare) return run_compare(rc, out);
    } catch (const FlagError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_io() ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

} // namespace dlct::cli

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "dlct/eval.hpp"
#include "dlct/signal.hpp"
#include "dlct/transform.hpp"
#include "dlct/tv_filter.hpp"

namespace dlct::io {

// Linear PCM 16-bit WAV, any channel count (averaged to mono), scaled by
// 1/32768. Throws UnsupportedFormat / IoFailure.
Signal read_wav(const std::filesystem::path& path);

// Mono 16-bit PCM of the real parts, clipped to [-1, 1). Uses
// x.sample_rate, or 8000 Hz when absent.
void write_wav(const Signal& x, const std::filesystem::path& path);

// Header "n,re,im", one row per sample, 17 significant digits.
void write_signal_csv(const Signal& x, const std::filesystem::path& path);
std::string signal_csv(const Signal& x);

// Exact inverse of write_signal_csv. Throws ParseFailure (with the row
// number) or IoFailure. A header-only file yields an empty signal.
Signal read_signal_csv(const std::filesystem::path& path);
Signal parse_signal_csv(const std::string& text);

// Dispatches on the extension: ".wav" or anything else as CSV.
Signal read_signal(const std::filesystem::path& path);
void write_signal(const Signal& x, const std::filesystem::path& path);

// Header "k,m,energy" with |X(k,m)|^2, m ascending from -L/2, then k.
std::string spectrum_energy_csv(const DlctSpectrum& spectrum);

// Header "snr_db,method,mean_mae,std_mae,trials".
std::string sweep_csv(const SweepResult& result);

// {method, params:{...}, frames:[{residual_energies, components:[{k,m,beta,energy}],
//  stop_reason}], mae, noisy_mae}
nlohmann::ordered_json dlct_report_json(const DenoiseReport& report, const FilterConfig& cfg,
                                        std::optional<double> mae, std::optional<double> noisy_mae);

nlohmann::ordered_json frft_report_json(const FrftFilterConfig& cfg, int frame_len, int hop,
                                        std::optional<double> mae, std::optional<double> noisy_mae);

void write_text(const std::filesystem::path& path, const std::string& text);

// 17 significant digits, as used by every data file.
std::string format_double(double v);

} // namespace dlct::io

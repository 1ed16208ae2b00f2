#include "dlct/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace dlct::io {
namespace {

std::vector<char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t le32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
    return v;
}

std::uint16_t le16(const char* p) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(p[0]) |
                                      (static_cast<unsigned char>(p[1]) << 8));
}

void put32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

double parse_double(std::string_view field, std::size_t row) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw Error(Errc::ParseFailure, "row " + std::to_string(row) + ": bad number '" + std::string(field) + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    return s;
}

} // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw Error(Errc::IoFailure, "number formatting failed");
    return std::string(buf.data(), ptr);
}

Signal read_wav(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 || std::memcmp(data.data() + 8, "WAVE", 4) != 0)
        throw Error(Errc::UnsupportedFormat, path.string() + " is not a RIFF/WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    const char* samples = nullptr;
    std::size_t sample_bytes = 0;

    std::size_t pos = 12;
    while (pos + 8 <= data.size()) {
        const char* id = data.data() + pos;
        const std::size_t len = le32(id + 4);
        const std::size_t body = pos + 8;
        if (body + len > data.size() && std::memcmp(id, "data", 4) != 0)
            throw Error(Errc::UnsupportedFormat, "truncated chunk in " + path.string());
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (len < 16) throw Error(Errc::UnsupportedFormat, "short fmt chunk");
            const char* f = data.data() + body;
            format = le16(f);
            channels = le16(f + 2);
            rate = le32(f + 4);
            bits = le16(f + 14);
            if (format == kFormatExtensible && len >= 26) format = le16(f + 24);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            samples = data.data() + body;
            sample_bytes = std::min(len, data.size() - body);
        }
        pos = body + len + (len & 1U);
    }
    if (!have_fmt || samples == nullptr) throw Error(Errc::UnsupportedFormat, "missing fmt or data chunk");
    if (format != kFormatPcm)
        throw Error(Errc::UnsupportedFormat, "only linear PCM is supported (format tag " + std::to_string(format) + ")");
    if (bits != 16) throw Error(Errc::UnsupportedFormat, "only 16-bit samples are supported, got " + std::to_string(bits));
    if (channels == 0) throw Error(Errc::UnsupportedFormat, "zero channels");

    const std::size_t frame_bytes = 2U * channels;
    const std::size_t frames = sample_bytes / frame_bytes;
    Signal x(frames);
    x.sample_rate = static_cast<double>(rate);
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const auto raw = static_cast<std::int16_t>(le16(samples + i * frame_bytes + 2 * c));
            acc += static_cast<double>(raw) / 32768.0;
        }
        x[i] = Complex(acc / static_cast<double>(channels), 0.0);
    }
    return x;
}

void write_wav(const Signal& x, const std::filesystem::path& path) {
    const auto rate = static_cast<std::uint32_t>(std::lround(x.sample_rate.value_or(8000.0)));
    const auto data_bytes = static_cast<std::uint32_t>(2 * x.size());
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put32(out, 16);
    put16(out, kFormatPcm);
    put16(out, 1);
    put32(out, rate);
    put32(out, rate * 2);
    put16(out, 2);
    put16(out, 16);
    out += "data";
    put32(out, data_bytes);
    for (const auto& v : x.samples) {
        const double scaled = std::round(v.real() * 32768.0);
        const auto s = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
        put16(out, static_cast<std::uint16_t>(s));
    }
    write_text(path, out);
}

std::string signal_csv(const Signal& x) {
    std::string out = "n,re,im\n";
    for (std::size_t n = 0; n < x.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(x[n].real());
        out += ',';
        out += format_double(x[n].imag());
        out += '\n';
    }
    return out;
}

void write_signal_csv(const Signal& x, const std::filesystem::path& path) { write_text(path, signal_csv(x)); }

Signal parse_signal_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseFailure, "row 0: empty file, expected header n,re,im");
    if (trim(line) != "n,re,im") throw Error(Errc::ParseFailure, "row 0: expected header n,re,im");

    Signal x;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto text_row = trim(line);
        if (text_row.empty()) continue;
        std::array<std::string_view, 3> fields;
        std::size_t start = 0, count = 0;
        for (std::size_t i = 0; i <= text_row.size(); ++i) {
            if (i == text_row.size() || text_row[i] == ',') {
                if (count == 3) throw Error(Errc::ParseFailure, "row " + std::to_string(row) + ": too many fields");
                fields[count++] = trim(text_row.substr(start, i - start));
                start = i + 1;
            }
        }
        if (count != 3) throw Error(Errc::ParseFailure, "row " + std::to_string(row) + ": expected 3 fields");
        const double index = parse_double(fields[0], row);
        if (index != static_cast<double>(x.size()))
            throw Error(Errc::ParseFailure, "row " + std::to_string(row) + ": sample index out of sequence");
        x.samples.emplace_back(parse_double(fields[1], row), parse_double(fields[2], row));
    }
    return x;
}

Signal read_signal_csv(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    return parse_signal_csv(std::string(bytes.begin(), bytes.end()));
}

namespace {
bool is_wav(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".wav";
}
} // namespace

Signal read_signal(const std::filesystem::path& path) { return is_wav(path) ? read_wav(path) : read_signal_csv(path); }

void write_signal(const Signal& x, const std::filesystem::path& path) {
    if (is_wav(path)) {
        for (const auto& v : x.samples)
            if (std::abs(v.imag()) >= 1e-9)
                throw Error(Errc::InvalidSignal, "refusing to write a complex signal to WAV " + path.string());
        write_wav(x, path);
    } else {
        write_signal_csv(x, path);
    }
}

std::string spectrum_energy_csv(const DlctSpectrum& spectrum) {
    const auto& p = spectrum.params();
    std::string out = "k,m,energy\n";
    for (int m = p.min_chirp_bin(); m <= p.max_chirp_bin(); ++m) {
        const auto col = spectrum.column(m);
        for (int k = 0; k < p.n_freq; ++k) {
            out += std::to_string(k);
            out += ',';
            out += std::to_string(m);
            out += ',';
            out += format_double(std::norm(col[static_cast<std::size_t>(k)]));
            out += '\n';
        }
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "snr_db,method,mean_mae,std_mae,trials\n";
    for (const auto& row : result.rows) {
        for (const auto& st : row.methods) {
            out += format_double(row.snr_db);
            out += ',';
            out += to_string(st.method);
            out += ',';
            out += format_double(st.mean_mae);
            out += ',';
            out += format_double(st.std_mae);
            out += ',';
            out += std::to_string(st.trials);
            out += '\n';
        }
    }
    return out;
}

namespace {
nlohmann::ordered_json optional_number(std::optional<double> v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}
} // namespace

nlohmann::ordered_json dlct_report_json(const DenoiseReport& report, const FilterConfig& cfg,
                                        std::optional<double> mae, std::optional<double> noisy_mae) {
    nlohmann::ordered_json j;
    j["method"] = "dlct";
    j["params"] = {
        {"c", cfg.dlct.resolution},       {"n_freq", cfg.dlct.n_freq},   {"n_chirp", cfg.dlct.n_chirp},
        {"q_max", cfg.q_max},             {"p_th", cfg.p_th},            {"half_width", cfg.half_width},
        {"min_dominance", cfg.min_dominance}, {"frame_len", cfg.frame_len}, {"hop", cfg.hop},
        {"real_signal", cfg.real_signal},
    };
    auto frames = nlohmann::ordered_json::array();
    for (const auto& fr : report.frames) {
        nlohmann::ordered_json f;
        f["residual_energies"] = fr.residual_energies;
        auto comps = nlohmann::ordered_json::array();
        for (const auto& c : fr.components)
            comps.push_back({{"k", c.k}, {"m", c.m}, {"beta", c.beta}, {"energy", c.energy}});
        f["components"] = std::move(comps);
        f["stop_reason"] = std::string(to_string(fr.stop_reason));
        frames.push_back(std::move(f));
    }
    j["frames"] = std::move(frames);
    j["mae"] = optional_number(mae);
    j["noisy_mae"] = optional_number(noisy_mae);
    return j;
}

nlohmann::ordered_json frft_report_json(const FrftFilterConfig& cfg, int frame_len, int hop,
                                        std::optional<double> mae, std::optional<double> noisy_mae) {
    nlohmann::ordered_json j;
    j["method"] = "frft";
    j["params"] = {
        {"a_min", cfg.order_grid.min}, {"a_max", cfg.order_grid.max}, {"a_step", cfg.order_grid.step},
        {"half_width", cfg.half_width}, {"frame_len", frame_len},    {"hop", hop},
    };
    j["frames"] = nlohmann::ordered_json::array();
    j["mae"] = optional_number(mae);
    j["noisy_mae"] = optional_number(noisy_mae);
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoFailure, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(Errc::IoFailure, "write failed for " + path.string());
}

} // namespace dlct::io

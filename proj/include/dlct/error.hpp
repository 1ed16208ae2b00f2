#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlct {

enum class Errc {
    LengthMismatch,
    InvalidParams,
    InvalidSignal,
    IndexOutOfRange,
    NoSignificantPeak,
    EmptySpectrum,
    ConfigMismatch,
    TooShort,
    ZeroSignal,
    EmptyMethodSet,
    UnsupportedFormat,
    IoFailure,
    ParseFailure,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this type; code() identifies the
// contract that was violated.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    // Failures that originate from the filesystem or file contents.
    bool is_io() const noexcept {
        return code_ == Errc::IoFailure || code_ == Errc::ParseFailure ||
               code_ == Errc::UnsupportedFormat;
    }

private:
    Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidSignal: return "InvalidSignal";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NoSignificantPeak: return "NoSignificantPeak";
    case Errc::EmptySpectrum: return "EmptySpectrum";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::TooShort: return "TooShort";
    case Errc::ZeroSignal: return "ZeroSignal";
    case Errc::EmptyMethodSet: return "EmptyMethodSet";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseFailure: return "ParseFailure";
    }
    return "Unknown";
}

} // namespace dlct

#pragma once

#include "envkit/signal.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace envkit {

enum class SampleFormat { pcm8, pcm16, pcm24, pcm32, float32, float64 };

std::string_view to_string(SampleFormat f) noexcept;

/// Decoded audio: one Signal per channel, all the same length.
struct AudioFile {
    std::vector<Signal> channels;
    double sample_rate_hz = 0.0;
    SampleFormat source_format = SampleFormat::pcm16;

    std::size_t frames() const noexcept { return channels.empty() ? 0 : channels.front().size(); }
};

/// Decodes RIFF/WAVE bytes. Integer PCM is divided by 2^(bits-1) (8-bit
/// data is unsigned and re-centered first); float data is kept as is.
/// Chunks may come in any order and unknown chunks are skipped.
///
/// Throws IoError with "not a WAV file", "unsupported codec" or
/// "truncated file" in the message.
AudioFile decode_wav(std::span<const std::byte> bytes);

/// decode_wav on the file contents; error messages are prefixed with the path.
AudioFile read_wav(const std::filesystem::path& path);

enum class WavEncoding { pcm16, float32 };

struct WavWriteReport {
    /// Samples outside [-1, 1] that were clipped.
    std::size_t clipped_samples = 0;
};

/// Mono RIFF/WAVE encoding. Samples outside [-1, 1] are clipped and counted.
/// Throws ValidationError("non-finite sample") on NaN or infinity.
std::vector<std::byte> encode_wav(std::span<const double> samples, double sample_rate_hz, WavEncoding encoding,
                                  WavWriteReport* report = nullptr);

WavWriteReport write_wav(const std::filesystem::path& path, std::span<const double> samples, double sample_rate_hz,
                         WavEncoding encoding = WavEncoding::float32);
WavWriteReport write_wav(const std::filesystem::path& path, const Signal& s,
                         WavEncoding encoding = WavEncoding::float32);

/// Down-mix policy: average all channels, or pick one by zero-based index.
struct ChannelMode {
    enum class Kind { mean, select };

    Kind kind = Kind::mean;
    std::size_t index = 0;

    static ChannelMode mean() noexcept { return {}; }
    static ChannelMode select(std::size_t k) noexcept { return {Kind::select, k}; }
};

/// Throws ValidationError("channel index out of range").
Signal to_mono(const AudioFile& audio, ChannelMode mode = ChannelMode::mean());

} // namespace envkit

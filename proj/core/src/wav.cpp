#include "envkit/wav.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

namespace envkit {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const std::byte* p) {
    return static_cast<std::uint16_t>(std::to_integer<unsigned>(p[0]) | (std::to_integer<unsigned>(p[1]) << 8));
}

std::uint32_t le32(const std::byte* p) {
    return static_cast<std::uint32_t>(le16(p)) | (static_cast<std::uint32_t>(le16(p + 2)) << 16);
}

bool tag_is(const std::byte* p, const char (&tag)[5]) {
    return std::memcmp(p, tag, 4) == 0;
}

struct Format {
    std::uint16_t codec = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits = 0;
};

Format parse_fmt(std::span<const std::byte> body) {
    if (body.size() < 16) throw IoError("truncated file: fmt chunk too short");
    Format f;
    f.codec = le16(&body[0]);
    f.channels = le16(&body[2]);
    f.sample_rate = le32(&body[4]);
    f.block_align = le16(&body[12]);
    f.bits = le16(&body[14]);
    if (f.codec == kFormatExtensible) {
        if (body.size() < 40) throw IoError("truncated file: extensible fmt chunk too short");
        // The sub-format GUID starts with the plain format code.
        f.codec = le16(&body[24]);
    }
    return f;
}

SampleFormat classify(const Format& f) {
    if (f.codec == kFormatPcm) {
        switch (f.bits) {
        case 8: return SampleFormat::pcm8;
        case 16: return SampleFormat::pcm16;
        case 24: return SampleFormat::pcm24;
        case 32: return SampleFormat::pcm32;
        default: throw IoError("unsupported codec: " + std::to_string(f.bits) + "-bit PCM");
        }
    }
    if (f.codec == kFormatFloat) {
        if (f.bits == 32) return SampleFormat::float32;
        if (f.bits == 64) return SampleFormat::float64;
        throw IoError("unsupported codec: " + std::to_string(f.bits) + "-bit float");
    }
    throw IoError("unsupported codec: format tag " + std::to_string(f.codec));
}

double decode_sample(const std::byte* p, SampleFormat fmt) {
    switch (fmt) {
    case SampleFormat::pcm8: return (static_cast<double>(std::to_integer<int>(p[0])) - 128.0) / 128.0;
    case SampleFormat::pcm16: return static_cast<double>(static_cast<std::int16_t>(le16(p))) / 32768.0;
    case SampleFormat::pcm24: {
        // Sign-extend by placing the 24 bits at the top of a 32-bit word.
        const std::uint32_t raw = (std::to_integer<std::uint32_t>(p[0]) << 8) |
                                  (std::to_integer<std::uint32_t>(p[1]) << 16) |
                                  (std::to_integer<std::uint32_t>(p[2]) << 24);
        return static_cast<double>(static_cast<std::int32_t>(raw) >> 8) / 8388608.0;
    }
    case SampleFormat::pcm32: return static_cast<double>(static_cast<std::int32_t>(le32(p))) / 2147483648.0;
    case SampleFormat::float32: return static_cast<double>(std::bit_cast<float>(le32(p)));
    case SampleFormat::float64: {
        const std::uint64_t raw = static_cast<std::uint64_t>(le32(p)) | (static_cast<std::uint64_t>(le32(p + 4)) << 32);
        return std::bit_cast<double>(raw);
    }
    }
    return 0.0;
}

void put16(std::vector<std::byte>& out, std::uint16_t v) {
    out.push_back(static_cast<std::byte>(v & 0xFF));
    out.push_back(static_cast<std::byte>(v >> 8));
}

void put32(std::vector<std::byte>& out, std::uint32_t v) {
    put16(out, static_cast<std::uint16_t>(v & 0xFFFF));
    put16(out, static_cast<std::uint16_t>(v >> 16));
}

void put_tag(std::vector<std::byte>& out, const char (&tag)[5]) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>(tag[i]));
}

} // namespace

std::string_view to_string(SampleFormat f) noexcept {
    switch (f) {
    case SampleFormat::pcm8: return "pcm8";
    case SampleFormat::pcm16: return "pcm16";
    case SampleFormat::pcm24: return "pcm24";
    case SampleFormat::pcm32: return "pcm32";
    case SampleFormat::float32: return "float32";
    case SampleFormat::float64: return "float64";
    }
    return "unknown";
}

AudioFile decode_wav(std::span<const std::byte> bytes) {
    if (bytes.size() < 12 || !tag_is(&bytes[0], "RIFF") || !tag_is(&bytes[8], "WAVE")) {
        throw IoError("not a WAV file");
    }

    std::optional<Format> format;
    std::optional<std::span<const std::byte>> data;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::byte* header = &bytes[pos];
        const std::size_t size = le32(header + 4);
        const std::size_t body = pos + 8;
        const std::size_t available = bytes.size() - body;
        if (tag_is(header, "fmt ")) {
            if (size > available) throw IoError("truncated file: fmt chunk");
            format = parse_fmt(bytes.subspan(body, size));
        } else if (tag_is(header, "data")) {
            if (size > available) throw IoError("truncated file: data chunk declares " + std::to_string(size) +
                                                " bytes, " + std::to_string(available) + " present");
            data = bytes.subspan(body, size);
        }
        if (format && data) break;
        if (size > available) break;
        pos = body + size + (size & 1U); // chunks are word aligned
    }

    if (!format) throw IoError("not a WAV file: missing fmt chunk");
    if (!data) throw IoError("truncated file: missing data chunk");
    if (format->channels == 0 || format->sample_rate == 0) throw IoError("not a WAV file: invalid fmt chunk");

    const SampleFormat sample_format = classify(*format);
    const std::size_t width = format->bits / 8U;
    const std::size_t frame = width * format->channels;
    if (data->size() % frame != 0) throw IoError("truncated file: partial sample frame");

    const std::size_t frames = data->size() / frame;
    std::vector<std::vector<double>> channels(format->channels, std::vector<double>(frames));
    for (std::size_t i = 0; i < frames; ++i) {
        for (std::size_t c = 0; c < format->channels; ++c) {
            channels[c][i] = decode_sample(&(*data)[i * frame + c * width], sample_format);
        }
    }

    AudioFile out;
    out.sample_rate_hz = format->sample_rate;
    out.source_format = sample_format;
    for (auto& ch : channels) {
        // NaN in float data is not representable as a Signal.
        try {
            out.channels.emplace_back(std::move(ch), out.sample_rate_hz);
        } catch (const ValidationError& e) {
            throw IoError(std::string("invalid sample data: ") + e.what());
        }
    }
    return out;
}

AudioFile read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open file");
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(path.string() + ": read error");
    try {
        return decode_wav(std::as_bytes(std::span<const char>(raw)));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::vector<std::byte> encode_wav(std::span<const double> samples, double sample_rate_hz, WavEncoding encoding,
                                  WavWriteReport* report) {
    if (!(sample_rate_hz > 0.0) || sample_rate_hz > 4294967295.0) {
        throw ValidationError("invalid sample rate: must be positive and finite");
    }
    if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
        throw ValidationError("non-finite sample");
    }

    const std::uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : 32;
    const std::uint16_t codec = encoding == WavEncoding::pcm16 ? kFormatPcm : kFormatFloat;
    const std::uint32_t rate = static_cast<std::uint32_t>(std::lround(sample_rate_hz));
    const std::uint16_t block = bits / 8;
    const std::size_t data_bytes = samples.size() * block;
    if (data_bytes > 0xFFFFFFFFULL - 36) throw ValidationError("signal too long for a RIFF file");

    std::vector<std::byte> out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put32(out, static_cast<std::uint32_t>(36 + data_bytes));
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put32(out, 16);
    put16(out, codec);
    put16(out, 1);
    put32(out, rate);
    put32(out, rate * block);
    put16(out, block);
    put16(out, bits);
    put_tag(out, "data");
    put32(out, static_cast<std::uint32_t>(data_bytes));

    std::size_t clipped = 0;
    for (double v : samples) {
        if (v > 1.0 || v < -1.0) {
            ++clipped;
            v = std::clamp(v, -1.0, 1.0);
        }
        if (encoding == WavEncoding::pcm16) {
            const long q = std::clamp(std::lround(v * 32768.0), -32768L, 32767L);
            put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
        } else {
            put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        }
    }
    if (report != nullptr) report->clipped_samples = clipped;
    return out;
}

WavWriteReport write_wav(const std::filesystem::path& path, std::span<const double> samples, double sample_rate_hz,
                         WavEncoding encoding) {
    WavWriteReport report;
    const auto bytes = encode_wav(samples, sample_rate_hz, encoding, &report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(path.string() + ": write failed");
    return report;
}

WavWriteReport write_wav(const std::filesystem::path& path, const Signal& s, WavEncoding encoding) {
    return write_wav(path, s.samples(), s.sample_rate(), encoding);
}

Signal to_mono(const AudioFile& audio, ChannelMode mode) {
    if (audio.channels.empty()) throw ValidationError("audio has no channels");
    if (mode.kind == ChannelMode::Kind::select) {
        if (mode.index >= audio.channels.size()) throw ValidationError("channel index out of range");
        return audio.channels[mode.index];
    }
    if (audio.channels.size() == 1) return audio.channels.front();

    std::vector<double> out(audio.frames(), 0.0);
    for (const auto& ch : audio.channels) {
        if (ch.size() != out.size()) throw ValidationError("signal length mismatch");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += ch[i];
    }
    const double scale = 1.0 / static_cast<double>(audio.channels.size());
    for (double& v : out) v *= scale;
    return Signal(std::move(out), audio.sample_rate_hz);
}

} // namespace envkit

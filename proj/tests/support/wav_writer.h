#pragma once

// Minimal known-good WAV writer used to build test fixtures. Kept
// independent of the production decoder so the two can check each other.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace moodtag::testing {

enum class WavEncoding { Pcm8, Pcm16, Pcm24, Pcm32, Float32 };

inline void append_u16(std::vector<unsigned char>& out, uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

inline void append_u32(std::vector<unsigned char>& out, uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 24) & 0xFF);
}

inline void append_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

// `samples` are interleaved doubles in [-1, 1].
inline std::vector<unsigned char> make_wav_bytes(const std::vector<double>& samples, int channels,
                                                 int sample_rate, WavEncoding encoding) {
  uint16_t bits = 16, format = 1;
  switch (encoding) {
    case WavEncoding::Pcm8: bits = 8; break;
    case WavEncoding::Pcm16: bits = 16; break;
    case WavEncoding::Pcm24: bits = 24; break;
    case WavEncoding::Pcm32: bits = 32; break;
    case WavEncoding::Float32:
      bits = 32;
      format = 3;
      break;
  }
  const uint32_t bytes_per_sample = bits / 8;
  const uint32_t data_size = static_cast<uint32_t>(samples.size()) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  append_tag(out, "RIFF");
  append_u32(out, 36 + data_size);
  append_tag(out, "WAVE");
  append_tag(out, "fmt ");
  append_u32(out, 16);
  append_u16(out, format);
  append_u16(out, static_cast<uint16_t>(channels));
  append_u32(out, static_cast<uint32_t>(sample_rate));
  append_u32(out, static_cast<uint32_t>(sample_rate) * channels * bytes_per_sample);
  append_u16(out, static_cast<uint16_t>(channels * bytes_per_sample));
  append_u16(out, bits);
  append_tag(out, "data");
  append_u32(out, data_size);

  for (double sample : samples) {
    const double s = sample < -1.0 ? -1.0 : (sample > 1.0 ? 1.0 : sample);
    switch (encoding) {
      case WavEncoding::Pcm8: {
        const int v = static_cast<int>(std::lround(s * 127.0)) + 128;
        out.push_back(static_cast<unsigned char>(v));
        break;
      }
      case WavEncoding::Pcm16: {
        long v = std::lround(s * 32767.0);
        out.push_back(v & 0xFF);
        out.push_back((v >> 8) & 0xFF);
        break;
      }
      case WavEncoding::Pcm24: {
        long v = std::lround(s * 8388607.0);
        out.push_back(v & 0xFF);
        out.push_back((v >> 8) & 0xFF);
        out.push_back((v >> 16) & 0xFF);
        break;
      }
      case WavEncoding::Pcm32: {
        const int64_t v = std::llround(s * 2147483647.0);
        append_u32(out, static_cast<uint32_t>(static_cast<int32_t>(v)));
        break;
      }
      case WavEncoding::Float32: {
        const float f = static_cast<float>(s);
        uint32_t bitsrep;
        static_assert(sizeof(f) == sizeof(bitsrep));
        std::memcpy(&bitsrep, &f, 4);
        append_u32(out, bitsrep);
        break;
      }
    }
  }
  return out;
}

// Writes raw 16-bit values untouched; for fixtures that pin exact sample
// words like +32767.
inline std::vector<unsigned char> make_wav_bytes_pcm16_raw(const std::vector<int16_t>& samples,
                                                           int channels, int sample_rate) {
  std::vector<double> converted(samples.size());
  std::vector<unsigned char> out = make_wav_bytes({}, channels, sample_rate, WavEncoding::Pcm16);
  // rebuild the data chunk with the exact words
  out.resize(40);
  append_u32(out, static_cast<uint32_t>(samples.size()) * 2);
  for (int16_t s : samples) {
    out.push_back(static_cast<uint16_t>(s) & 0xFF);
    out.push_back((static_cast<uint16_t>(s) >> 8) & 0xFF);
  }
  const uint32_t riff_size = static_cast<uint32_t>(out.size()) - 8;
  out[4] = riff_size & 0xFF;
  out[5] = (riff_size >> 8) & 0xFF;
  out[6] = (riff_size >> 16) & 0xFF;
  out[7] = (riff_size >> 24) & 0xFF;
  return out;
}

inline void write_wav_file(const std::string& path, const std::vector<double>& samples,
                           int channels, int sample_rate, WavEncoding encoding) {
  const std::vector<unsigned char> bytes = make_wav_bytes(samples, channels, sample_rate, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace moodtag::testing

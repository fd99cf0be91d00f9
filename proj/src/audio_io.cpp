#include "moodtag/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "moodtag/errors.h"

namespace moodtag {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

struct ByteReader {
  const unsigned char* data;
  size_t size;
  size_t pos = 0;

  bool remaining(size_t n) const { return pos + n <= size; }

  uint32_t u32() {
    if (!remaining(4)) throw MalformedHeader("truncated WAV: unexpected end of file");
    uint32_t v = static_cast<uint32_t>(data[pos]) | static_cast<uint32_t>(data[pos + 1]) << 8 |
                 static_cast<uint32_t>(data[pos + 2]) << 16 |
                 static_cast<uint32_t>(data[pos + 3]) << 24;
    pos += 4;
    return v;
  }

  uint16_t u16() {
    if (!remaining(2)) throw MalformedHeader("truncated WAV: unexpected end of file");
    uint16_t v = static_cast<uint16_t>(data[pos] | data[pos + 1] << 8);
    pos += 2;
    return v;
  }

  void fourcc(char out[5]) {
    if (!remaining(4)) throw MalformedHeader("truncated WAV: unexpected end of file");
    std::memcpy(out, data + pos, 4);
    out[4] = '\0';
    pos += 4;
  }

  void skip(size_t n) {
    if (!remaining(n)) throw MalformedHeader("truncated WAV: chunk overruns file");
    pos += n;
  }
};

struct FmtInfo {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

double decode_sample(const unsigned char* p, uint16_t bits, uint16_t format) {
  if (format == kFormatIeeeFloat) {
    float f;
    std::memcpy(&f, p, 4);
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  switch (bits) {
    case 8:
      // 8-bit PCM is unsigned with midpoint 128.
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      int16_t s = static_cast<int16_t>(p[0] | p[1] << 8);
      return s / 32768.0;
    }
    case 24: {
      int32_t s = p[0] | p[1] << 8 | p[2] << 16;
      if (s & 0x800000) s |= ~0xFFFFFF;  // sign extend
      return s / 8388608.0;
    }
    case 32: {
      int32_t s;
      std::memcpy(&s, p, 4);
      return s / 2147483648.0;
    }
    default:
      throw UnsupportedCodec("unsupported PCM bit depth: " + std::to_string(bits));
  }
}

AudioClip decode_impl(const unsigned char* bytes, size_t size, const std::string& path) {
  ByteReader r{bytes, size};

  char id[5];
  r.fourcc(id);
  if (std::strcmp(id, "RIFF") != 0) throw MalformedHeader(path + ": not a RIFF file");
  r.u32();  // declared RIFF size; file truncation is caught per chunk
  r.fourcc(id);
  if (std::strcmp(id, "WAVE") != 0) throw MalformedHeader(path + ": not a WAVE file");

  FmtInfo fmt;
  bool have_fmt = false;
  const unsigned char* data_ptr = nullptr;
  size_t data_size = 0;

  while (r.remaining(8)) {
    r.fourcc(id);
    uint32_t chunk_size = r.u32();
    if (!r.remaining(chunk_size)) throw MalformedHeader(path + ": chunk overruns file");

    if (std::strcmp(id, "fmt ") == 0) {
      if (chunk_size < 16) throw MalformedHeader(path + ": fmt chunk too small");
      size_t chunk_start = r.pos;
      fmt.format = r.u16();
      fmt.channels = r.u16();
      fmt.sample_rate = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      fmt.bits_per_sample = r.u16();
      if (fmt.format == kFormatExtensible) {
        // the real format code is the first word of the SubFormat GUID
        if (chunk_size < 40) throw MalformedHeader(path + ": extensible fmt chunk too small");
        r.u16();  // cbSize
        r.u16();  // valid bits
        r.u32();  // channel mask
        fmt.format = r.u16();
      }
      r.pos = chunk_start + chunk_size;
      have_fmt = true;
    } else if (std::strcmp(id, "data") == 0) {
      data_ptr = bytes + r.pos;
      data_size = chunk_size;
      r.skip(chunk_size);
    } else {
      r.skip(chunk_size);  // LIST, fact, cue, ...
    }
    if (chunk_size % 2 == 1 && r.remaining(1)) r.skip(1);  // chunks are word aligned
  }

  if (!have_fmt) throw MalformedHeader(path + ": missing fmt chunk");
  if (data_ptr == nullptr) throw MalformedHeader(path + ": missing data chunk");
  if (fmt.channels == 0) throw MalformedHeader(path + ": zero channels");
  if (fmt.sample_rate == 0) throw MalformedHeader(path + ": zero sample rate");

  if (fmt.format != kFormatPcm && fmt.format != kFormatIeeeFloat)
    throw UnsupportedCodec(path + ": codec tag " + std::to_string(fmt.format) +
                           " (only PCM and IEEE float WAV are supported)");
  if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample != 32)
    throw UnsupportedCodec(path + ": only 32-bit float WAV is supported");
  if (fmt.format == kFormatPcm && fmt.bits_per_sample != 8 && fmt.bits_per_sample != 16 &&
      fmt.bits_per_sample != 24 && fmt.bits_per_sample != 32)
    throw UnsupportedCodec(path + ": unsupported PCM bit depth " +
                           std::to_string(fmt.bits_per_sample));

  const size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const size_t frame_bytes = bytes_per_sample * fmt.channels;
  const size_t frames = frame_bytes > 0 ? data_size / frame_bytes : 0;
  if (frames == 0) throw EmptyAudio(path + ": data chunk holds zero frames");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.channels = fmt.channels;
  clip.source_path = path;
  clip.samples.resize(frames * fmt.channels);
  const unsigned char* p = data_ptr;
  for (size_t i = 0; i < frames * fmt.channels; ++i, p += bytes_per_sample)
    clip.samples[i] = decode_sample(p, fmt.bits_per_sample, fmt.format);
  return clip;
}

double bessel_i0(double x) {
  // power series; converges fast for the beta values used here
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 32; ++k) {
    const double f = x / (2.0 * k);
    term *= f * f;
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace

AudioClip decode_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedHeader(path + ": cannot open file");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return decode_impl(bytes.data(), bytes.size(), path);
}

AudioClip decode_wav_bytes(const std::vector<unsigned char>& bytes, const std::string& path) {
  return decode_impl(bytes.data(), bytes.size(), path);
}

std::vector<double> resample_sinc(const std::vector<double>& input, int in_rate, int out_rate) {
  if (in_rate <= 0 || out_rate <= 0)
    throw ResampleFailure("degenerate sample rate " + std::to_string(in_rate) + " -> " +
                          std::to_string(out_rate));
  if (in_rate == out_rate) return input;

  const double ratio = static_cast<double>(out_rate) / in_rate;
  // Low-pass at the narrower Nyquist; 16 zero crossings with a Kaiser
  // window (beta 8.6) keeps aliasing ~80 dB down, which the downstream
  // centroid/rolloff features need.
  const double cutoff = std::min(1.0, ratio);
  const double beta = 8.6;
  const double half_width = 16.0 / cutoff;  // in input samples
  const double i0_beta = bessel_i0(beta);

  const auto out_len = static_cast<size_t>(std::llround(input.size() * ratio));
  std::vector<double> output(out_len);
  const auto n_in = static_cast<long long>(input.size());

  for (size_t n = 0; n < out_len; ++n) {
    const double center = n / ratio;
    const long long lo = std::max(0LL, static_cast<long long>(std::ceil(center - half_width)));
    const long long hi =
        std::min(n_in - 1, static_cast<long long>(std::floor(center + half_width)));
    double acc = 0.0;
    for (long long i = lo; i <= hi; ++i) {
      const double d = i - center;
      const double sinc =
          d == 0.0 ? cutoff : std::sin(M_PI * cutoff * d) / (M_PI * d);
      const double u = d / half_width;
      const double window = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
      acc += input[static_cast<size_t>(i)] * sinc * window;
    }
    output[n] = acc;
  }
  return output;
}

AudioClip canonicalize(const AudioClip& clip) {
  if (clip.samples.empty() || clip.channels < 1) throw EmptyAudio("cannot canonicalize empty clip");
  if (clip.sample_rate <= 0)
    throw ResampleFailure("degenerate sample rate " + std::to_string(clip.sample_rate));
  if (clip.is_canonical()) return clip;

  // Downmix first: averaging is linear, so the order relative to
  // resampling does not change the result, and mono is cheaper to filter.
  std::vector<double> mono;
  if (clip.channels == 1) {
    mono = clip.samples;
  } else {
    const size_t frames = clip.frame_count();
    mono.resize(frames);
    for (size_t f = 0; f < frames; ++f) {
      double sum = 0.0;
      for (int c = 0; c < clip.channels; ++c) sum += clip.samples[f * clip.channels + c];
      mono[f] = sum / clip.channels;
    }
  }

  std::vector<double> resampled = resample_sinc(mono, clip.sample_rate, kCanonicalRate);
  for (double& s : resampled) s = std::clamp(s, -1.0, 1.0);
  if (resampled.empty()) throw EmptyAudio("resampling produced no samples");

  AudioClip out;
  out.samples = std::move(resampled);
  out.sample_rate = kCanonicalRate;
  out.channels = 1;
  out.source_path = clip.source_path;
  return out;
}

}  // namespace moodtag

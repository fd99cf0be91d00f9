#pragma once

#include <string>
#include <vector>

namespace moodtag {

/// Sample rate every clip is converted to before analysis.
inline constexpr int kCanonicalRate = 16000;

/**
 * Decoded PCM audio. Straight out of decode_wav() a clip may still be
 * multi-channel at an arbitrary rate; canonicalize() reduces it to mono
 * 16 kHz, which is the only form the feature extractors accept.
 *
 * Samples are interleaved when channels > 1 and always lie in [-1, 1].
 */
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;
  int channels = 1;
  std::string source_path;

  bool is_canonical() const { return channels == 1 && sample_rate == kCanonicalRate; }
  size_t frame_count() const { return channels > 0 ? samples.size() / channels : 0; }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(frame_count()) / sample_rate : 0.0;
  }
};

/**
 * Decode a RIFF/WAVE file. Accepts integer PCM at 8/16/24/32 bits and
 * 32-bit IEEE float; each sample is divided by the type's full-scale
 * magnitude. Channel layout and rate are preserved at this stage.
 *
 * Throws MalformedHeader, UnsupportedCodec or EmptyAudio.
 */
AudioClip decode_wav(const std::string& path);

/// Same decoder over an in-memory byte buffer (used by tests and batch ingest).
AudioClip decode_wav_bytes(const std::vector<unsigned char>& bytes, const std::string& path);

/**
 * Downmix to mono and resample to 16 kHz with a Kaiser-windowed sinc
 * kernel. A clip that is already mono 16 kHz is returned unchanged, so
 * the operation is idempotent. Throws ResampleFailure on a degenerate
 * input rate.
 */
AudioClip canonicalize(const AudioClip& clip);

/// Band-limited sample-rate conversion, exposed for tests.
std::vector<double> resample_sinc(const std::vector<double>& input, int in_rate, int out_rate);

}  // namespace moodtag

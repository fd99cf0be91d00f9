#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moodtag/audio_io.h"

namespace moodtag {

/// Analysis window length: 10 seconds of canonical audio.
inline constexpr size_t kWindowSamples = 160000;
/// A trailing remainder at least this long becomes its own short window.
inline constexpr size_t kMinTailSamples = 80000;
/// Sub-frame used for envelopes, low-energy counting and spectral frames.
inline constexpr size_t kSubFrameSamples = 512;
/// Hop between spectral sub-frames (50% overlap).
inline constexpr size_t kSpectralHop = 256;
/// Tempo search band.
inline constexpr double kTempoMinBpm = 30.0;
inline constexpr double kTempoMaxBpm = 240.0;

/**
 * The eleven sub-features of one 10-second window.
 *
 * Intensity: rms, low_energy. Timbre: zero_cross, centroid, rolloff,
 * entropy. Rhythm: beat_strength (B), tempo (T), regularity (Ar),
 * pos_autocorr (Pa), neg_autocorr (Na). A silent or rhythm-free window
 * reports zeros with tempo absent rather than failing.
 */
struct WindowFeatureRow {
  int window_index = 0;
  double rms = 0.0;          // linear amplitude, >= 0
  double low_energy = 0.0;   // % of quiet sub-frames, [0, 100]
  double zero_cross = 0.0;   // sign changes per second
  double centroid = 0.0;     // Hz, [0, 8000]
  double rolloff = 0.0;      // Hz, [0, 8000]
  double entropy = 0.0;      // normalized spectral entropy, [0, 1]
  double beat_strength = 0.0;
  std::optional<double> tempo;  // BPM in [30, 240] when a beat was found
  double regularity = 0.0;      // [0, 1]
  double pos_autocorr = 0.0;    // [0, 1]
  double neg_autocorr = 0.0;    // [0, 1]
};

/// Ordered per-window rows for one song.
struct FeatureMatrix {
  std::vector<WindowFeatureRow> rows;
  std::string song_id;
};

/// Column names in WindowFeatureRow order, as emitted by the features CSV.
std::vector<std::string> feature_column_names();

/**
 * Split a canonical clip into consecutive non-overlapping 10 s windows.
 * A tail shorter than 5 s is merged into the previous window; a tail of
 * 5 s or more becomes a final short window. A clip under 10 s yields a
 * single window covering the whole clip.
 */
std::vector<std::span<const double>> segment_windows(const AudioClip& clip);

struct IntensityFeatures {
  double rms = 0.0;
  double low_energy = 0.0;
};

struct TimbreFeatures {
  double zero_cross = 0.0;
  double centroid = 0.0;
  double rolloff = 0.0;
  double entropy = 0.0;
};

struct RhythmFeatures {
  double beat_strength = 0.0;
  std::optional<double> tempo;
  double regularity = 0.0;
  double pos_autocorr = 0.0;
  double neg_autocorr = 0.0;
};

/// RMS plus the percentage of 512-sample sub-frames whose RMS falls below
/// half the window's mean sub-frame RMS.
IntensityFeatures intensity_subfeatures(std::span<const double> window);

/// Time-domain zero crossings per second plus centroid / 85% rolloff /
/// normalized entropy of the Hann-windowed average magnitude spectrum.
/// A window with zero spectral power reports (zc, 0, 0, 0).
TimbreFeatures timbre_subfeatures(std::span<const double> window);

/// Onset-envelope autocorrelation features. The envelope is the
/// half-wave-rectified increase of 512-sample sub-frame RMS; the beat is
/// the strongest autocorrelation lobe between 0.25 s and 2 s.
RhythmFeatures rhythm_subfeatures(std::span<const double> window);

/// One row per window, ordered by window_index.
FeatureMatrix extract_features(const AudioClip& clip, const std::string& song_id);

}  // namespace moodtag

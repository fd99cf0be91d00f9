#pragma once

#include <string>
#include <vector>

#include "moodtag/dsp_features.h"

namespace moodtag {

/// Per-song intensity/timbre/rhythm after normalization, weighting and
/// rescaling onto the (-10, 10) mood scale.
struct SongFeatureSummary {
  double intensity = 0.0;
  double timbre = 0.0;
  double rhythm = 0.0;
};

/// A point on the valence/arousal plane, both axes in [-10, 10].
struct MoodPoint {
  double valence = 0.0;
  double arousal = 0.0;

  bool operator==(const MoodPoint&) const = default;
};

/// The nine regions of the mood plane: four quadrants, four boundary
/// bands where one axis sits in the (-1, 1) zero band, and the center.
enum class MoodCategory {
  Q1,            // valence +, arousal +
  Q2,            // valence +, arousal -
  Q3,            // valence -, arousal -
  Q4,            // valence -, arousal +
  Q12,           // valence +, arousal zero
  Q23,           // valence zero, arousal -
  Q34,           // valence -, arousal zero
  Q14,           // valence zero, arousal +
  Undetermined,  // both zero
};

/// Category plus its fixed descriptor pair ("Very happy, Exciting", ...).
struct MoodLabel {
  MoodCategory category = MoodCategory::Undetermined;

  const std::string& descriptors() const;
  const std::string& name() const;  // "Q1", "Q23", "Undetermined", ...

  bool operator==(const MoodLabel&) const = default;
};

/// Parse a category name as produced by MoodLabel::name(); throws
/// SchemaViolation on anything else.
MoodLabel mood_label_from_name(const std::string& name);

/// Max-min normalization onto [0, 100]. A constant column maps to all 50,
/// the mid-scale "no information" value.
std::vector<double> minmax_normalize(const std::vector<double>& column);

/// Intensity = rms * 0.8 + (100 - low_energy) * 0.2, inputs normalized.
double parent_intensity(double rms_n, double low_energy_n);

/// Timbre = Z*0.2 + C*0.4 + R*0.3 + E*0.1, inputs normalized.
double parent_timbre(double z_n, double c_n, double r_n, double e_n);

/// Rhythm = B*0.25 + T*0.45 + Ar*0.2 + (Pa+Na)*0.05, clamped to [0, 100].
double parent_rhythm(double b_n, double t_n, double ar_n, double pa_n, double na_n);

/// Divide a per-window parent column by its maximum (x100), map each value
/// onto [-10, 10] via s = W/5 - 10, and average. An all-zero column yields
/// -10 (every window at the bottom of the scale).
double rescale_and_average(const std::vector<double>& parent_column);

/// Timbre dominates valence in the low-arousal half (weights 0.7/0.3),
/// rhythm in the high-arousal half (0.3/0.7); arousal == 0 uses the
/// high-arousal weights.
double compute_valence(double timbre, double rhythm, double arousal);

/// Classify each axis as Positive (>= 1), Negative (<= -1) or Zero and
/// select the matching mood region.
MoodLabel map_quadrant(const MoodPoint& point);

struct AudioAnalysis {
  SongFeatureSummary summary;
  MoodPoint point;
  MoodLabel label;
};

/// Full audio-side mapping: normalize each sub-feature column, combine
/// into per-window parent features, rescale-and-average each parent, then
/// derive arousal (intensity) and valence (timbre/rhythm mix).
AudioAnalysis analyze_audio(const FeatureMatrix& matrix);

}  // namespace moodtag

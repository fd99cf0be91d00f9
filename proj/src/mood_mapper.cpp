#include "moodtag/mood_mapper.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "moodtag/errors.h"

namespace moodtag {

namespace {

enum class AxisSign { Positive, Negative, Zero };

AxisSign classify_axis(double value) {
  if (value >= 1.0) return AxisSign::Positive;
  if (value <= -1.0) return AxisSign::Negative;
  return AxisSign::Zero;
}

struct LabelInfo {
  MoodCategory category;
  const char* name;
  const char* descriptors;
};

constexpr std::array<LabelInfo, 9> kLabelTable = {{
    {MoodCategory::Q1, "Q1", "Very happy, Exciting"},
    {MoodCategory::Q2, "Q2", "Soothing, Pleasure"},
    {MoodCategory::Q3, "Q3", "Sad, Depressing"},
    {MoodCategory::Q4, "Q4", "Frantic, Tense"},
    {MoodCategory::Q12, "Q12", "Serene, Happy"},
    {MoodCategory::Q23, "Q23", "Dreamy, Sad"},
    {MoodCategory::Q34, "Q34", "Sorrow, Disturbing"},
    {MoodCategory::Q14, "Q14", "Exciting, Disturbing"},
    {MoodCategory::Undetermined, "Undetermined", "Nothing can be said"},
}};

const LabelInfo& info_for(MoodCategory category) {
  for (const LabelInfo& info : kLabelTable)
    if (info.category == category) return info;
  return kLabelTable.back();
}

}  // namespace

const std::string& MoodLabel::descriptors() const {
  static const std::array<std::string, 9> cache = [] {
    std::array<std::string, 9> out;
    for (size_t i = 0; i < kLabelTable.size(); ++i) out[i] = kLabelTable[i].descriptors;
    return out;
  }();
  return cache[static_cast<size_t>(category)];
}

const std::string& MoodLabel::name() const {
  static const std::array<std::string, 9> cache = [] {
    std::array<std::string, 9> out;
    for (size_t i = 0; i < kLabelTable.size(); ++i) out[i] = kLabelTable[i].name;
    return out;
  }();
  return cache[static_cast<size_t>(category)];
}

MoodLabel mood_label_from_name(const std::string& name) {
  for (const LabelInfo& info : kLabelTable)
    if (name == info.name) return MoodLabel{info.category};
  throw SchemaViolation("unknown mood label: " + name);
}

std::vector<double> minmax_normalize(const std::vector<double>& column) {
  const auto [min_it, max_it] = std::minmax_element(column.begin(), column.end());
  const double min = *min_it, max = *max_it;
  std::vector<double> out(column.size());
  if (max == min) {
    std::fill(out.begin(), out.end(), 50.0);
    return out;
  }
  for (size_t i = 0; i < column.size(); ++i) out[i] = (column[i] - min) / (max - min) * 100.0;
  return out;
}

double parent_intensity(double rms_n, double low_energy_n) {
  return rms_n * 0.8 + (100.0 - low_energy_n) * 0.2;
}

double parent_timbre(double z_n, double c_n, double r_n, double e_n) {
  return z_n * 0.2 + c_n * 0.4 + r_n * 0.3 + e_n * 0.1;
}

double parent_rhythm(double b_n, double t_n, double ar_n, double pa_n, double na_n) {
  const double value = b_n * 0.25 + t_n * 0.45 + ar_n * 0.2 + (pa_n + na_n) * 0.05;
  return std::clamp(value, 0.0, 100.0);
}

double rescale_and_average(const std::vector<double>& parent_column) {
  const double max = *std::max_element(parent_column.begin(), parent_column.end());
  double sum = 0.0;
  for (double f : parent_column) {
    const double w = max == 0.0 ? 0.0 : f / max * 100.0;
    sum += w / 5.0 - 10.0;
  }
  return sum / static_cast<double>(parent_column.size());
}

double compute_valence(double timbre, double rhythm, double arousal) {
  if (arousal < 0.0) return timbre * 0.7 + rhythm * 0.3;
  return timbre * 0.3 + rhythm * 0.7;
}

MoodLabel map_quadrant(const MoodPoint& point) {
  const AxisSign v = classify_axis(point.valence);
  const AxisSign a = classify_axis(point.arousal);

  MoodCategory category = MoodCategory::Undetermined;
  if (v == AxisSign::Positive && a == AxisSign::Positive) category = MoodCategory::Q1;
  else if (v == AxisSign::Positive && a == AxisSign::Negative) category = MoodCategory::Q2;
  else if (v == AxisSign::Negative && a == AxisSign::Negative) category = MoodCategory::Q3;
  else if (v == AxisSign::Negative && a == AxisSign::Positive) category = MoodCategory::Q4;
  else if (v == AxisSign::Positive) category = MoodCategory::Q12;
  else if (v == AxisSign::Zero && a == AxisSign::Negative) category = MoodCategory::Q23;
  else if (v == AxisSign::Negative) category = MoodCategory::Q34;
  else if (a == AxisSign::Positive) category = MoodCategory::Q14;
  return MoodLabel{category};
}

AudioAnalysis analyze_audio(const FeatureMatrix& matrix) {
  const size_t n = matrix.rows.size();

  auto column = [&](auto getter) {
    std::vector<double> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = getter(matrix.rows[i]);
    return col;
  };

  const auto rms_n = minmax_normalize(column([](const auto& r) { return r.rms; }));
  const auto le_n = minmax_normalize(column([](const auto& r) { return r.low_energy; }));
  const auto z_n = minmax_normalize(column([](const auto& r) { return r.zero_cross; }));
  const auto c_n = minmax_normalize(column([](const auto& r) { return r.centroid; }));
  const auto r_n = minmax_normalize(column([](const auto& r) { return r.rolloff; }));
  const auto e_n = minmax_normalize(column([](const auto& r) { return r.entropy; }));
  const auto b_n = minmax_normalize(column([](const auto& r) { return r.beat_strength; }));
  // a window with no detectable beat contributes 0 BPM, consistent with
  // the other rhythm sub-features it reports as zero
  const auto t_n = minmax_normalize(column([](const auto& r) { return r.tempo.value_or(0.0); }));
  const auto ar_n = minmax_normalize(column([](const auto& r) { return r.regularity; }));
  const auto pa_n = minmax_normalize(column([](const auto& r) { return r.pos_autocorr; }));
  const auto na_n = minmax_normalize(column([](const auto& r) { return r.neg_autocorr; }));

  std::vector<double> intensity(n), timbre(n), rhythm(n);
  for (size_t i = 0; i < n; ++i) {
    intensity[i] = parent_intensity(rms_n[i], le_n[i]);
    timbre[i] = parent_timbre(z_n[i], c_n[i], r_n[i], e_n[i]);
    rhythm[i] = parent_rhythm(b_n[i], t_n[i], ar_n[i], pa_n[i], na_n[i]);
  }

  AudioAnalysis out;
  out.summary.intensity = rescale_and_average(intensity);
  out.summary.timbre = rescale_and_average(timbre);
  out.summary.rhythm = rescale_and_average(rhythm);
  out.point.arousal = out.summary.intensity;
  out.point.valence = compute_valence(out.summary.timbre, out.summary.rhythm, out.point.arousal);
  out.label = map_quadrant(out.point);
  return out;
}

}  // namespace moodtag

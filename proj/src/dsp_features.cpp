#include "moodtag/dsp_features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fft.h"

namespace moodtag {

namespace {

constexpr double kFramePeriod = static_cast<double>(kSubFrameSamples) / kCanonicalRate;

double slice_rms(std::span<const double> x) {
  double acc = 0.0;
  for (double s : x) acc += s * s;
  return x.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(x.size()));
}

// Non-overlapping 512-sample sub-frame RMS values. A window shorter than
// one sub-frame is treated as a single sub-frame.
std::vector<double> subframe_rms(std::span<const double> window) {
  const size_t n = window.size() / kSubFrameSamples;
  if (n == 0) return {slice_rms(window)};
  std::vector<double> rms(n);
  for (size_t i = 0; i < n; ++i)
    rms[i] = slice_rms(window.subspan(i * kSubFrameSamples, kSubFrameSamples));
  return rms;
}

// Hann-windowed magnitude spectra averaged over 50%-overlapped sub-frames.
std::vector<double> average_magnitude_spectrum(std::span<const double> window) {
  static const std::vector<double> hann = [] {
    std::vector<double> w(kSubFrameSamples);
    for (size_t i = 0; i < w.size(); ++i)
      w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / w.size());
    return w;
  }();

  std::vector<double> frame(kSubFrameSamples);
  std::vector<double> avg(kSubFrameSamples / 2 + 1, 0.0);
  size_t frames = 0;

  auto accumulate = [&](std::span<const double> src) {
    std::fill(frame.begin(), frame.end(), 0.0);
    for (size_t i = 0; i < src.size() && i < kSubFrameSamples; ++i) frame[i] = src[i] * hann[i];
    const std::vector<double> mags = detail::real_magnitude_spectrum(frame);
    for (size_t k = 0; k < avg.size(); ++k) avg[k] += mags[k];
    ++frames;
  };

  if (window.size() < kSubFrameSamples) {
    accumulate(window);  // zero-padded single frame
  } else {
    for (size_t start = 0; start + kSubFrameSamples <= window.size(); start += kSpectralHop)
      accumulate(window.subspan(start, kSubFrameSamples));
  }
  for (double& v : avg) v /= static_cast<double>(frames);
  return avg;
}

}  // namespace

std::vector<std::string> feature_column_names() {
  return {"window_index", "rms",           "low_energy", "zero_cross",   "centroid",
          "rolloff",      "entropy",       "beat_strength", "tempo",     "regularity",
          "pos_autocorr", "neg_autocorr"};
}

std::vector<std::span<const double>> segment_windows(const AudioClip& clip) {
  std::span<const double> all(clip.samples);
  std::vector<std::span<const double>> windows;
  const size_t total = all.size();

  if (total <= kWindowSamples) {
    windows.push_back(all);
    return windows;
  }

  size_t full = total / kWindowSamples;
  const size_t tail = total % kWindowSamples;
  if (tail > 0 && tail < kMinTailSamples) --full;  // short tail merges into the previous window
  for (size_t i = 0; i < full; ++i) windows.push_back(all.subspan(i * kWindowSamples, kWindowSamples));
  if (full * kWindowSamples < total) windows.push_back(all.subspan(full * kWindowSamples));
  return windows;
}

IntensityFeatures intensity_subfeatures(std::span<const double> window) {
  IntensityFeatures out;
  out.rms = slice_rms(window);

  const std::vector<double> frames = subframe_rms(window);
  const double mean = std::accumulate(frames.begin(), frames.end(), 0.0) / frames.size();
  const double threshold = 0.5 * mean;
  size_t quiet = 0;
  for (double r : frames)
    if (r < threshold) ++quiet;
  out.low_energy = 100.0 * static_cast<double>(quiet) / static_cast<double>(frames.size());
  return out;
}

TimbreFeatures timbre_subfeatures(std::span<const double> window) {
  TimbreFeatures out;

  size_t crossings = 0;
  for (size_t i = 1; i < window.size(); ++i)
    if ((window[i] >= 0.0) != (window[i - 1] >= 0.0)) ++crossings;
  const double duration = static_cast<double>(window.size()) / kCanonicalRate;
  out.zero_cross = duration > 0.0 ? crossings / duration : 0.0;

  const std::vector<double> mags = average_magnitude_spectrum(window);
  std::vector<double> power(mags.size());
  double total = 0.0;
  for (size_t k = 0; k < mags.size(); ++k) {
    power[k] = mags[k] * mags[k];
    total += power[k];
  }
  if (total <= 0.0) return out;  // silent window: centroid/rolloff/entropy stay 0

  const double bin_hz = static_cast<double>(kCanonicalRate) / kSubFrameSamples;
  double weighted = 0.0;
  for (size_t k = 0; k < power.size(); ++k) weighted += static_cast<double>(k) * bin_hz * power[k];
  out.centroid = weighted / total;

  const double target = 0.85 * total;
  double cumulative = 0.0;
  for (size_t k = 0; k < power.size(); ++k) {
    cumulative += power[k];
    if (cumulative >= target) {
      out.rolloff = static_cast<double>(k) * bin_hz;
      break;
    }
  }

  double entropy = 0.0;
  for (double p : power) {
    const double q = p / total;
    if (q > 0.0) entropy -= q * std::log(q);
  }
  out.entropy = entropy / std::log(static_cast<double>(power.size()));
  return out;
}

RhythmFeatures rhythm_subfeatures(std::span<const double> window) {
  RhythmFeatures out;

  const std::vector<double> envelope = subframe_rms(window);
  if (envelope.size() < 2) return out;  // no onsets possible

  // half-wave-rectified energy flux
  std::vector<double> onset(envelope.size() - 1);
  for (size_t i = 0; i + 1 < envelope.size(); ++i)
    onset[i] = std::max(0.0, envelope[i + 1] - envelope[i]);

  const double mean = std::accumulate(onset.begin(), onset.end(), 0.0) / onset.size();
  std::vector<double> d(onset.size());
  double energy = 0.0;
  for (size_t i = 0; i < onset.size(); ++i) {
    d[i] = onset[i] - mean;
    energy += d[i] * d[i];
  }
  if (energy < 1e-24) return out;  // flat envelope

  const size_t count = d.size();
  const int lag_min = static_cast<int>(std::ceil(60.0 / kTempoMaxBpm / kFramePeriod));
  const int lag_max = static_cast<int>(std::floor(60.0 / kTempoMinBpm / kFramePeriod));
  const int lag_max_eff = std::min<int>(lag_max, static_cast<int>(count) - 1);
  if (lag_min > lag_max_eff) return out;

  // Biased normalized autocorrelation, long enough to read the 4x harmonic.
  const int autocorr_max = std::min<int>(static_cast<int>(count) - 1, 4 * lag_max + 2);
  std::vector<double> a(autocorr_max + 1, 0.0);
  for (int lag = 0; lag <= autocorr_max; ++lag) {
    double sum = 0.0;
    for (size_t i = 0; i + lag < count; ++i) sum += d[i] * d[i + lag];
    a[lag] = sum / energy;
  }
  auto at = [&](int lag) { return lag >= 0 && lag <= autocorr_max ? a[lag] : 0.0; };

  // The envelope grid quantizes a beat period onto neighboring lags, so a
  // peak is scored by its three-bin lobe mass rather than a single bin.
  int peak = lag_min;
  double best_mass = -1e300;
  for (int lag = lag_min; lag <= lag_max_eff; ++lag) {
    const double mass = at(lag - 1) + at(lag) + at(lag + 1);
    if (mass > best_mass) {
      best_mass = mass;
      peak = lag;
    }
  }
  for (int lag : {peak - 1, peak + 1})
    if (lag >= lag_min && lag <= lag_max_eff && a[lag] > a[peak]) peak = lag;

  // parabolic refinement of the lobe center
  double refined = peak;
  if (peak - 1 >= 1 && peak + 1 <= autocorr_max) {
    const double y0 = a[peak - 1], y1 = a[peak], y2 = a[peak + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    if (std::abs(denom) > 1e-12) {
      const double delta = 0.5 * (y0 - y2) / denom;
      if (std::abs(delta) <= 1.0) refined = peak + delta;
    }
  }

  out.beat_strength = std::max(0.0, a[peak]);
  out.tempo = std::clamp(60.0 / (refined * kFramePeriod), kTempoMinBpm, kTempoMaxBpm);

  // regularity: strength of the 2x/3x/4x harmonics of the chosen period,
  // each read from the strongest bin of its (grid-blurred) lobe
  double harmonic_sum = 0.0;
  int harmonics = 0;
  for (int multiple = 2; multiple <= 4; ++multiple) {
    const double center = multiple * refined;
    const int lo = static_cast<int>(std::floor(center)) - 2;
    const int hi = static_cast<int>(std::ceil(center)) + 2;
    if (lo > autocorr_max) continue;
    double best = -1e300;
    for (int lag = std::max(0, lo); lag <= std::min(autocorr_max, hi); ++lag)
      best = std::max(best, a[lag]);
    harmonic_sum += best;
    ++harmonics;
  }
  out.regularity = harmonics > 0 ? std::clamp(harmonic_sum / harmonics, 0.0, 1.0) : 0.0;

  double pos_sum = 0.0, neg_sum = 0.0;
  size_t pos_n = 0, neg_n = 0;
  for (int lag = lag_min; lag <= lag_max_eff; ++lag) {
    if (a[lag] > 0.0) {
      pos_sum += a[lag];
      ++pos_n;
    } else if (a[lag] < 0.0) {
      neg_sum += -a[lag];
      ++neg_n;
    }
  }
  out.pos_autocorr = pos_n > 0 ? std::clamp(pos_sum / pos_n, 0.0, 1.0) : 0.0;
  out.neg_autocorr = neg_n > 0 ? std::clamp(neg_sum / neg_n, 0.0, 1.0) : 0.0;
  return out;
}

FeatureMatrix extract_features(const AudioClip& clip, const std::string& song_id) {
  FeatureMatrix matrix;
  matrix.song_id = song_id;
  const auto windows = segment_windows(clip);
  matrix.rows.reserve(windows.size());
  for (size_t i = 0; i < windows.size(); ++i) {
    const IntensityFeatures in = intensity_subfeatures(windows[i]);
    const TimbreFeatures ti = timbre_subfeatures(windows[i]);
    const RhythmFeatures rh = rhythm_subfeatures(windows[i]);
    WindowFeatureRow row;
    row.window_index = static_cast<int>(i);
    row.rms = in.rms;
    row.low_energy = in.low_energy;
    row.zero_cross = ti.zero_cross;
    row.centroid = ti.centroid;
    row.rolloff = ti.rolloff;
    row.entropy = ti.entropy;
    row.beat_strength = rh.beat_strength;
    row.tempo = rh.tempo;
    row.regularity = rh.regularity;
    row.pos_autocorr = rh.pos_autocorr;
    row.neg_autocorr = rh.neg_autocorr;
    matrix.rows.push_back(row);
  }
  return matrix;
}

}  // namespace moodtag

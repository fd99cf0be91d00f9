#pragma once

// Deterministic synthetic signals for the DSP and end-to-end tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace moodtag::testing {

constexpr int kRate = 16000;

inline std::vector<double> sine(double freq_hz, double seconds, double amplitude = 1.0,
                                int sample_rate = kRate) {
  std::vector<double> out(static_cast<size_t>(seconds * sample_rate));
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = amplitude * std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) / sample_rate);
  return out;
}

inline std::vector<double> silence(double seconds, int sample_rate = kRate) {
  return std::vector<double>(static_cast<size_t>(seconds * sample_rate), 0.0);
}

inline std::vector<double> uniform_noise(double seconds, uint32_t seed, double amplitude = 1.0,
                                         int sample_rate = kRate) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<double> out(static_cast<size_t>(seconds * sample_rate));
  for (double& s : out) s = dist(rng);
  return out;
}

// Rectangular bursts of `width` samples at the given tempo.
inline std::vector<double> click_train(double bpm, double seconds, double amplitude = 1.0,
                                       size_t width = 512, int sample_rate = kRate) {
  std::vector<double> out(static_cast<size_t>(seconds * sample_rate), 0.0);
  const double period = 60.0 / bpm;
  for (double t = 0.0; t < seconds - 1e-9; t += period) {
    const size_t start = static_cast<size_t>(std::llround(t * sample_rate));
    for (size_t i = start; i < std::min(out.size(), start + width); ++i) out[i] = amplitude;
  }
  return out;
}

inline std::vector<double> mix(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  for (double& s : out) s = std::clamp(s, -1.0, 1.0);
  return out;
}

inline std::vector<double> scale(std::vector<double> x, double k) {
  for (double& s : x) s *= k;
  return x;
}

inline std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::vector<double> tile(const std::vector<double>& block, int times) {
  std::vector<double> out;
  out.reserve(block.size() * times);
  for (int i = 0; i < times; ++i) out.insert(out.end(), block.begin(), block.end());
  return out;
}

// Quantize like a 16-bit WAV round trip, so fixtures written to disk stay
// bit-identical with their in-memory twins.
inline std::vector<double> quantize16(std::vector<double> x) {
  for (double& s : x) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    s = std::lround(clamped * 32767.0) / 32768.0;
  }
  return x;
}

}  // namespace moodtag::testing

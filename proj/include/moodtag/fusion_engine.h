#pragma once

#include <string>
#include <vector>

#include "moodtag/lyrics_affect.h"
#include "moodtag/mood_mapper.h"

namespace moodtag {

/// Audio mood point refined by the lyric polarity. The shift touches
/// valence only: +1 for Positive, -1 for Negative, nothing for Null,
/// clamped to the [-10, 10] plane.
struct FusedResult {
  MoodPoint pre_fusion;
  MoodPoint post_fusion;
  MoodLabel audio_label;
  MoodLabel final_label;
  LyricsVerdict::Polarity lyric_polarity = LyricsVerdict::Polarity::Null;
};

FusedResult fuse(const MoodPoint& point, const LyricsVerdict& verdict);

/// Group song results into the four quadrant clusters. Boundary labels
/// (Q12, Q23, Q34, Q14, Undetermined) are kept in a separate overflow
/// list instead of being forced into a quadrant.
struct MoodClusters {
  std::vector<std::string> q1;
  std::vector<std::string> q2;
  std::vector<std::string> q3;
  std::vector<std::string> q4;
  std::vector<std::string> boundary;
};

MoodClusters cluster(const std::vector<std::pair<std::string, FusedResult>>& results);

/// Snap a boundary-region point to the nearest quadrant: each zero-band
/// axis adopts its raw sign, with exact zero breaking toward positive.
MoodCategory snap_to_quadrant(const MoodPoint& point);

}  // namespace moodtag

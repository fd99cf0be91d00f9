#include "moodtag/fusion_engine.h"

#include <algorithm>

namespace moodtag {

FusedResult fuse(const MoodPoint& point, const LyricsVerdict& verdict) {
  FusedResult result;
  result.pre_fusion = point;
  result.audio_label = map_quadrant(point);
  result.lyric_polarity = verdict.polarity;

  double valence = point.valence;
  switch (verdict.polarity) {
    case LyricsVerdict::Polarity::Positive:
      valence += 1.0;
      break;
    case LyricsVerdict::Polarity::Negative:
      valence -= 1.0;
      break;
    case LyricsVerdict::Polarity::Null:
      break;
  }

  result.post_fusion.valence = std::clamp(valence, -10.0, 10.0);
  result.post_fusion.arousal = point.arousal;
  result.final_label = map_quadrant(result.post_fusion);
  return result;
}

MoodClusters cluster(const std::vector<std::pair<std::string, FusedResult>>& results) {
  MoodClusters clusters;
  for (const auto& [song_id, result] : results) {
    switch (result.final_label.category) {
      case MoodCategory::Q1:
        clusters.q1.push_back(song_id);
        break;
      case MoodCategory::Q2:
        clusters.q2.push_back(song_id);
        break;
      case MoodCategory::Q3:
        clusters.q3.push_back(song_id);
        break;
      case MoodCategory::Q4:
        clusters.q4.push_back(song_id);
        break;
      default:
        clusters.boundary.push_back(song_id);
        break;
    }
  }
  return clusters;
}

MoodCategory snap_to_quadrant(const MoodPoint& point) {
  const bool valence_positive = point.valence >= 0.0;  // exact zero leans positive
  const bool arousal_positive = point.arousal >= 0.0;
  if (valence_positive) return arousal_positive ? MoodCategory::Q1 : MoodCategory::Q2;
  return arousal_positive ? MoodCategory::Q4 : MoodCategory::Q3;
}

}  // namespace moodtag

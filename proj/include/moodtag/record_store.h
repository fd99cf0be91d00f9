#pragma once

#include <optional>
#include <string>

#include "moodtag/fusion_engine.h"
#include "moodtag/mood_mapper.h"
#include "moodtag/playlist_ranker.h"

namespace moodtag {

/// Everything the pipeline learned about one song, persisted as one XML
/// file so players can reuse the analysis without re-running it.
struct SongRecord {
  static constexpr int kSchemaVersion = 1;

  std::string song_id;
  std::string audio_path;
  std::optional<std::string> lyrics_path;

  SongFeatureSummary summary;
  MoodPoint pre_fusion;
  MoodPoint post_fusion;  // same arousal as pre_fusion by construction
  MoodLabel audio_label;
  MoodLabel final_label;

  std::optional<LyricsVerdict> lyrics;
  std::optional<SongMetadata> metadata;
  std::optional<double> likeness;
  std::optional<std::string> genre;

  int schema_version = kSchemaVersion;

  bool operator==(const SongRecord&) const;
};

/**
 * Render a record as attribute-based XML:
 *
 *   <song id="..." schema="1" audio="..." [lyrics="..."]>
 *     <features intensity timbre rhythm/>
 *     <mood valence arousal label pre_valence/>
 *     [<lyrics bow bigram combined polarity/>]
 *     [<meta likes dislikes rating likeness genre/>]
 *   </song>
 *
 * Numbers use the shortest representation that parses back to the same
 * double, so parse(serialize(r)) == r holds exactly.
 */
std::string serialize_record(const SongRecord& record);

/// Strict on required structure and value ranges, permissive on unknown
/// extra elements and attributes. Throws SchemaViolation or
/// UnsupportedVersion.
SongRecord parse_record(const std::string& xml);

/// File helpers; write is atomic-enough for one writer per record file.
void write_record_file(const SongRecord& record, const std::string& path);
SongRecord read_record_file(const std::string& path);

}  // namespace moodtag

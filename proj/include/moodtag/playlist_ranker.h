#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moodtag {

/// Like/dislike counts and album rating gathered for one song.
struct SongMetadata {
  std::string song_id;
  int64_t likes = 0;
  int64_t dislikes = 0;
  double album_rating = 0.0;  // [0, 10]

  bool operator==(const SongMetadata&) const = default;
};

/// A ranked mood cluster. Entries are ordered by likeness descending;
/// songs without a likeness score come after all rated ones, keeping
/// their original order.
struct Playlist {
  enum class Quadrant { Q1, Q2, Q3, Q4, Boundary };

  struct Entry {
    std::string song_id;
    std::optional<double> likeness;
  };

  Quadrant quadrant = Quadrant::Q1;
  std::vector<Entry> entries;
};

/// like_ratio * album_rating on a [0, 10] scale, or absent when the song
/// has no votes at all.
std::optional<double> likeness(const SongMetadata& meta);

/// Stable-sort a cluster by likeness. Songs missing from the metadata map
/// are treated as unrated.
Playlist rank(Playlist::Quadrant quadrant, const std::vector<std::string>& cluster,
              const std::map<std::string, SongMetadata>& metadata);

/// Load a `song_id,likes,dislikes,album_rating` CSV. Throws MetadataError
/// on a bad header, malformed row, out-of-range value or duplicate id.
std::map<std::string, SongMetadata> load_metadata_csv(const std::string& path);
std::map<std::string, SongMetadata> parse_metadata_csv(const std::string& text,
                                                       const std::string& origin);

}  // namespace moodtag

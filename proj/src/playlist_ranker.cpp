#include "moodtag/playlist_ranker.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "moodtag/errors.h"

namespace moodtag {

namespace {

std::string trim(const std::string& s) {
  const size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

int64_t parse_count(const std::string& text, const std::string& where) {
  try {
    size_t consumed = 0;
    const long long value = std::stoll(text, &consumed);
    if (consumed != text.size() || value < 0) throw std::invalid_argument("bad count");
    return value;
  } catch (const std::exception&) {
    throw MetadataError(where + ": expected a non-negative count, got '" + text + "'");
  }
}

}  // namespace

std::optional<double> likeness(const SongMetadata& meta) {
  const int64_t votes = meta.likes + meta.dislikes;
  if (votes == 0) return std::nullopt;
  const double like_ratio = static_cast<double>(meta.likes) / static_cast<double>(votes);
  return like_ratio * meta.album_rating;
}

Playlist rank(Playlist::Quadrant quadrant, const std::vector<std::string>& cluster,
              const std::map<std::string, SongMetadata>& metadata) {
  Playlist playlist;
  playlist.quadrant = quadrant;
  playlist.entries.reserve(cluster.size());
  for (const std::string& song_id : cluster) {
    Playlist::Entry entry;
    entry.song_id = song_id;
    const auto it = metadata.find(song_id);
    if (it != metadata.end()) entry.likeness = likeness(it->second);
    playlist.entries.push_back(std::move(entry));
  }

  std::stable_sort(playlist.entries.begin(), playlist.entries.end(),
                   [](const Playlist::Entry& a, const Playlist::Entry& b) {
                     if (a.likeness.has_value() != b.likeness.has_value())
                       return a.likeness.has_value();  // rated before unrated
                     if (!a.likeness.has_value()) return false;
                     return *a.likeness > *b.likeness;
                   });
  return playlist;
}

std::map<std::string, SongMetadata> load_metadata_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MetadataError("cannot open metadata file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metadata_csv(buf.str(), path);
}

std::map<std::string, SongMetadata> parse_metadata_csv(const std::string& text,
                                                       const std::string& origin) {
  std::map<std::string, SongMetadata> metadata;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != "song_id,likes,dislikes,album_rating")
        throw MetadataError(where + ": expected header song_id,likes,dislikes,album_rating");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> fields = split_csv_row(line);
    if (fields.size() != 4) throw MetadataError(where + ": expected 4 fields");

    SongMetadata meta;
    meta.song_id = fields[0];
    if (meta.song_id.empty()) throw MetadataError(where + ": empty song_id");
    meta.likes = parse_count(fields[1], where);
    meta.dislikes = parse_count(fields[2], where);
    try {
      size_t consumed = 0;
      meta.album_rating = std::stod(fields[3], &consumed);
      if (consumed != fields[3].size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw MetadataError(where + ": bad album_rating '" + fields[3] + "'");
    }
    if (meta.album_rating < 0.0 || meta.album_rating > 10.0)
      throw MetadataError(where + ": album_rating outside [0, 10]");
    if (!metadata.emplace(meta.song_id, meta).second)
      throw MetadataError(where + ": duplicate song_id '" + meta.song_id + "'");
  }
  if (!header_seen) throw MetadataError(origin + ": empty metadata file");
  return metadata;
}

}  // namespace moodtag

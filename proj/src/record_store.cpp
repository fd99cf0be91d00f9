#include "moodtag/record_store.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "moodtag/errors.h"

namespace moodtag {

namespace {

std::string format_number(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw SchemaViolation("bad numeric value for " + what + ": '" + text + "'");
  if (!std::isfinite(value)) throw SchemaViolation(what + " is not finite");
  return value;
}

int64_t parse_integer(const std::string& text, const std::string& what) {
  int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw SchemaViolation("bad integer value for " + what + ": '" + text + "'");
  return value;
}

std::string escape_attr(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// --- minimal XML reader ----------------------------------------------------
//
// Handles exactly what this store needs: a declaration, comments, nested
// elements with double-quoted attributes, and entity escapes. Text content
// is skipped; unknown elements are parsed and ignored.

struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<XmlElement> children;
};

class XmlReader {
 public:
  explicit XmlReader(const std::string& text) : text_(text) {}

  XmlElement parse_document() {
    skip_prolog();
    XmlElement root = parse_element();
    skip_whitespace_and_comments();
    if (pos_ != text_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SchemaViolation("XML parse error at offset " + std::to_string(pos_) + ": " + message);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool starts_with(const char* s) const { return text_.compare(pos_, std::strlen(s), s) == 0; }

  void skip_whitespace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_comment() {
    const size_t end = text_.find("-->", pos_ + 4);
    if (end == std::string::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skip_whitespace_and_comments() {
    for (;;) {
      skip_whitespace();
      if (starts_with("<!--"))
        skip_comment();
      else
        return;
    }
  }

  void skip_prolog() {
    skip_whitespace();
    if (starts_with("<?")) {
      const size_t end = text_.find("?>", pos_);
      if (end == std::string::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_whitespace_and_comments();
  }

  std::string parse_name() {
    const size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
          c == '.')
        ++pos_;
      else
        break;
    }
    if (pos_ == start) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  std::string parse_attr_value() {
    if (peek() != '"') fail("expected '\"' before attribute value");
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      const char c = text_[pos_];
      if (c == '<') fail("raw '<' in attribute value");
      if (c == '&') {
        out.push_back(parse_entity());
      } else {
        out.push_back(c);
        ++pos_;
      }
    }
    if (pos_ == text_.size()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  char parse_entity() {
    static const std::map<std::string, char> entities = {
        {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
    for (const auto& [token, ch] : entities) {
      if (text_.compare(pos_, token.size(), token) == 0) {
        pos_ += token.size();
        return ch;
      }
    }
    fail("unknown entity");
  }

  XmlElement parse_element() {
    if (peek() != '<') fail("expected '<'");
    ++pos_;
    XmlElement element;
    element.name = parse_name();

    for (;;) {
      skip_whitespace();
      const char c = peek();
      if (c == '/') {
        ++pos_;
        if (peek() != '>') fail("expected '>' after '/'");
        ++pos_;
        return element;  // self-closing
      }
      if (c == '>') {
        ++pos_;
        break;
      }
      const std::string attr = parse_name();
      skip_whitespace();
      if (peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_whitespace();
      element.attributes[attr] = parse_attr_value();
    }

    // children / ignored text until the matching close tag
    for (;;) {
      const size_t lt = text_.find('<', pos_);
      if (lt == std::string::npos) fail("unterminated element <" + element.name + ">");
      pos_ = lt;
      if (starts_with("<!--")) {
        pos_ += 4;
        skip_comment();
        continue;
      }
      if (starts_with("</")) {
        pos_ += 2;
        const std::string closing = parse_name();
        if (closing != element.name)
          fail("mismatched close tag </" + closing + "> for <" + element.name + ">");
        skip_whitespace();
        if (peek() != '>') fail("expected '>' in close tag");
        ++pos_;
        return element;
      }
      element.children.push_back(parse_element());
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
};

const XmlElement* find_child(const XmlElement& parent, const std::string& name) {
  for (const XmlElement& child : parent.children)
    if (child.name == name) return &child;
  return nullptr;
}

const std::string& require_attr(const XmlElement& element, const std::string& name) {
  const auto it = element.attributes.find(name);
  if (it == element.attributes.end())
    throw SchemaViolation("<" + element.name + "> is missing attribute '" + name + "'");
  return it->second;
}

const std::string* optional_attr(const XmlElement& element, const std::string& name) {
  const auto it = element.attributes.find(name);
  return it == element.attributes.end() ? nullptr : &it->second;
}

double range_checked(double value, double lo, double hi, const std::string& what) {
  if (value < lo || value > hi)
    throw SchemaViolation(what + " = " + format_number(value) + " outside [" +
                          format_number(lo) + ", " + format_number(hi) + "]");
  return value;
}

}  // namespace

bool SongRecord::operator==(const SongRecord& other) const {
  auto verdict_equal = [](const std::optional<LyricsVerdict>& a,
                          const std::optional<LyricsVerdict>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->bow_positive_pct == b->bow_positive_pct &&
           a->bigram_positive_pct == b->bigram_positive_pct &&
           a->combined_pct == b->combined_pct && a->polarity == b->polarity;
  };
  return song_id == other.song_id && audio_path == other.audio_path &&
         lyrics_path == other.lyrics_path && summary.intensity == other.summary.intensity &&
         summary.timbre == other.summary.timbre && summary.rhythm == other.summary.rhythm &&
         pre_fusion == other.pre_fusion && post_fusion == other.post_fusion &&
         audio_label == other.audio_label && final_label == other.final_label &&
         verdict_equal(lyrics, other.lyrics) && metadata == other.metadata &&
         likeness == other.likeness && genre == other.genre &&
         schema_version == other.schema_version;
}

std::string serialize_record(const SongRecord& record) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<song id=\"" << escape_attr(record.song_id) << "\" schema=\"" << record.schema_version
      << "\" audio=\"" << escape_attr(record.audio_path) << "\"";
  if (record.lyrics_path) out << " lyrics=\"" << escape_attr(*record.lyrics_path) << "\"";
  out << ">\n";

  out << "  <features intensity=\"" << format_number(record.summary.intensity) << "\" timbre=\""
      << format_number(record.summary.timbre) << "\" rhythm=\""
      << format_number(record.summary.rhythm) << "\"/>\n";

  out << "  <mood valence=\"" << format_number(record.post_fusion.valence) << "\" arousal=\""
      << format_number(record.post_fusion.arousal) << "\" label=\"" << record.final_label.name()
      << "\" pre_valence=\"" << format_number(record.pre_fusion.valence) << "\"/>\n";

  if (record.lyrics) {
    out << "  <lyrics bow=\"" << format_number(record.lyrics->bow_positive_pct) << "\" bigram=\""
        << format_number(record.lyrics->bigram_positive_pct) << "\" combined=\""
        << format_number(record.lyrics->combined_pct) << "\" polarity=\""
        << polarity_name(record.lyrics->polarity) << "\"/>\n";
  }

  if (record.metadata || record.likeness || record.genre) {
    out << "  <meta";
    if (record.metadata) {
      out << " likes=\"" << record.metadata->likes << "\" dislikes=\"" << record.metadata->dislikes
          << "\" rating=\"" << format_number(record.metadata->album_rating) << "\"";
    }
    if (record.likeness) out << " likeness=\"" << format_number(*record.likeness) << "\"";
    if (record.genre) out << " genre=\"" << escape_attr(*record.genre) << "\"";
    out << "/>\n";
  }

  out << "</song>\n";
  return out.str();
}

SongRecord parse_record(const std::string& xml) {
  XmlReader reader(xml);
  const XmlElement root = reader.parse_document();
  if (root.name != "song") throw SchemaViolation("root element must be <song>");

  SongRecord record;
  record.song_id = require_attr(root, "id");
  if (record.song_id.empty()) throw SchemaViolation("song id must not be empty");

  const int64_t schema = parse_integer(require_attr(root, "schema"), "schema");
  if (schema < 1) throw SchemaViolation("schema version must be >= 1");
  if (schema > SongRecord::kSchemaVersion)
    throw UnsupportedVersion("record schema " + std::to_string(schema) +
                             " is newer than supported version " +
                             std::to_string(SongRecord::kSchemaVersion));
  record.schema_version = static_cast<int>(schema);

  record.audio_path = require_attr(root, "audio");
  if (const std::string* lyrics_path = optional_attr(root, "lyrics"))
    record.lyrics_path = *lyrics_path;

  const XmlElement* features = find_child(root, "features");
  if (features == nullptr) throw SchemaViolation("missing <features> element");
  record.summary.intensity =
      range_checked(parse_number(require_attr(*features, "intensity"), "intensity"), -10, 10,
                    "intensity");
  record.summary.timbre =
      range_checked(parse_number(require_attr(*features, "timbre"), "timbre"), -10, 10, "timbre");
  record.summary.rhythm =
      range_checked(parse_number(require_attr(*features, "rhythm"), "rhythm"), -10, 10, "rhythm");

  const XmlElement* mood = find_child(root, "mood");
  if (mood == nullptr) throw SchemaViolation("missing <mood> element");
  record.post_fusion.valence =
      range_checked(parse_number(require_attr(*mood, "valence"), "valence"), -10, 10, "valence");
  record.post_fusion.arousal =
      range_checked(parse_number(require_attr(*mood, "arousal"), "arousal"), -10, 10, "arousal");
  record.pre_fusion.valence = range_checked(
      parse_number(require_attr(*mood, "pre_valence"), "pre_valence"), -10, 10, "pre_valence");
  record.pre_fusion.arousal = record.post_fusion.arousal;

  record.final_label = mood_label_from_name(require_attr(*mood, "label"));
  if (!(record.final_label == map_quadrant(record.post_fusion)))
    throw SchemaViolation("label '" + record.final_label.name() +
                          "' does not match the stored mood point");
  record.audio_label = map_quadrant(record.pre_fusion);

  if (const XmlElement* lyrics = find_child(root, "lyrics")) {
    LyricsVerdict verdict;
    verdict.bow_positive_pct =
        range_checked(parse_number(require_attr(*lyrics, "bow"), "bow"), 0, 100, "bow");
    verdict.bigram_positive_pct =
        range_checked(parse_number(require_attr(*lyrics, "bigram"), "bigram"), 0, 100, "bigram");
    verdict.combined_pct = range_checked(
        parse_number(require_attr(*lyrics, "combined"), "combined"), 0, 100, "combined");
    verdict.polarity = polarity_from_name(require_attr(*lyrics, "polarity"));
    record.lyrics = verdict;
  }

  if (const XmlElement* meta = find_child(root, "meta")) {
    const std::string* likes = optional_attr(*meta, "likes");
    const std::string* dislikes = optional_attr(*meta, "dislikes");
    const std::string* rating = optional_attr(*meta, "rating");
    if (likes || dislikes || rating) {
      if (!likes || !dislikes || !rating)
        throw SchemaViolation("<meta> needs likes, dislikes and rating together");
      SongMetadata metadata;
      metadata.song_id = record.song_id;
      metadata.likes = parse_integer(*likes, "likes");
      metadata.dislikes = parse_integer(*dislikes, "dislikes");
      if (metadata.likes < 0 || metadata.dislikes < 0)
        throw SchemaViolation("like/dislike counts must be non-negative");
      metadata.album_rating =
          range_checked(parse_number(*rating, "rating"), 0, 10, "rating");
      record.metadata = metadata;
    }
    if (const std::string* likeness = optional_attr(*meta, "likeness"))
      record.likeness = range_checked(parse_number(*likeness, "likeness"), 0, 10, "likeness");
    if (const std::string* genre = optional_attr(*meta, "genre")) record.genre = *genre;
  }

  return record;
}

void write_record_file(const SongRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write record file: " + path);
  out << serialize_record(record);
}

SongRecord read_record_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read record file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_record(buf.str());
}

}  // namespace moodtag

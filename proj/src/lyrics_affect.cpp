#include "moodtag/lyrics_affect.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "moodtag/errors.h"

namespace moodtag {

namespace {

constexpr std::array<const char*, 18> kTagNames = {
    "Happy",  "Sexual", "Insightful", "Achievement", "Sad",   "Anger",
    "Death",  "Social", "Feel",       "Family",      "Health", "Affect",
    "Friend", "Body",   "Cause",      "Inclusion",   "Exclusion", "Negate"};

std::string trim(const std::string& s) {
  const size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parses one leading "[mm:ss.xx]" stamp; on success advances *pos past it.
bool parse_timestamp(const std::string& line, size_t* pos, double* seconds) {
  size_t p = *pos;
  if (p >= line.size() || line[p] != '[') return false;
  ++p;
  size_t digits = 0;
  long minutes = 0;
  while (p < line.size() && std::isdigit(static_cast<unsigned char>(line[p]))) {
    minutes = minutes * 10 + (line[p] - '0');
    ++p;
    ++digits;
  }
  if (digits == 0 || p >= line.size() || line[p] != ':') return false;
  ++p;
  if (p + 1 >= line.size() || !std::isdigit(static_cast<unsigned char>(line[p])) ||
      !std::isdigit(static_cast<unsigned char>(line[p + 1])))
    return false;
  const int secs = (line[p] - '0') * 10 + (line[p + 1] - '0');
  p += 2;
  double fraction = 0.0;
  if (p < line.size() && (line[p] == '.' || line[p] == ':')) {
    ++p;
    double scale = 0.1;
    size_t frac_digits = 0;
    while (p < line.size() && std::isdigit(static_cast<unsigned char>(line[p]))) {
      fraction += (line[p] - '0') * scale;
      scale /= 10.0;
      ++p;
      ++frac_digits;
    }
    if (frac_digits == 0) return false;
  }
  if (p >= line.size() || line[p] != ']') return false;
  ++p;
  if (secs >= 60) return false;
  *seconds = minutes * 60.0 + secs + fraction;
  *pos = p;
  return true;
}

// LRC ID tags look like "[ti:Title]" / "[ar:Artist]": letters, a colon,
// anything, closing bracket.
bool is_id_tag(const std::string& line) {
  if (line.size() < 4 || line.front() != '[' || line.back() != ']') return false;
  size_t p = 1;
  while (p < line.size() && std::isalpha(static_cast<unsigned char>(line[p]))) ++p;
  return p > 1 && p < line.size() && line[p] == ':';
}

}  // namespace

bool is_positive_core(Tag tag) {
  return tag == Tag::Happy || tag == Tag::Sexual || tag == Tag::Insightful ||
         tag == Tag::Achievement;
}

bool is_negative_core(Tag tag) {
  return tag == Tag::Sad || tag == Tag::Anger || tag == Tag::Death;
}

bool is_contextual(Tag tag) {
  switch (tag) {
    case Tag::Social:
    case Tag::Feel:
    case Tag::Family:
    case Tag::Health:
    case Tag::Affect:
    case Tag::Friend:
    case Tag::Body:
    case Tag::Cause:
    case Tag::Inclusion:
    case Tag::Exclusion:
      return true;
    default:
      return false;
  }
}

const std::string& tag_name(Tag tag) {
  static const std::array<std::string, 18> names = [] {
    std::array<std::string, 18> out;
    for (size_t i = 0; i < kTagNames.size(); ++i) out[i] = kTagNames[i];
    return out;
  }();
  return names[static_cast<size_t>(tag)];
}

Tag tag_from_name(const std::string& name) {
  for (size_t i = 0; i < kTagNames.size(); ++i)
    if (name == kTagNames[i]) return static_cast<Tag>(i);
  throw LexiconError("unknown tag name: '" + name + "'");
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      flush();
    } else if (std::ispunct(c)) {
      // dropped outright, so "don't" becomes "dont"
    } else {
      current.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return tokens;
}

TagLexicon TagLexicon::load_file(const std::string& path) {
  return parse(read_file(path), path);
}

TagLexicon TagLexicon::parse(const std::string& text, const std::string& origin) {
  TagLexicon lexicon;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw LexiconError(origin + ":" + std::to_string(line_no) + ": expected word<TAB>tags");
    const std::string word = trim(line.substr(0, tab));
    if (word.empty())
      throw LexiconError(origin + ":" + std::to_string(line_no) + ": empty word");
    std::string lowered;
    for (unsigned char c : word) lowered.push_back(static_cast<char>(std::tolower(c)));

    std::istringstream tags(line.substr(tab + 1));
    std::string tag_text;
    bool any = false;
    while (std::getline(tags, tag_text, ',')) {
      tag_text = trim(tag_text);
      if (tag_text.empty()) continue;
      try {
        lexicon.add(lowered, tag_from_name(tag_text));
      } catch (const LexiconError& e) {
        throw LexiconError(origin + ":" + std::to_string(line_no) + ": " + e.what());
      }
      any = true;
    }
    if (!any)
      throw LexiconError(origin + ":" + std::to_string(line_no) + ": no tags for '" + word + "'");
  }
  return lexicon;
}

void TagLexicon::add(const std::string& word, Tag tag) { entries_[word].insert(tag); }

const std::set<Tag>* TagLexicon::lookup(const std::string& token) const {
  const auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

BigramRuleTable BigramRuleTable::load_file(const std::string& path) {
  return parse(read_file(path), path);
}

BigramRuleTable BigramRuleTable::parse(const std::string& text, const std::string& origin) {
  BigramRuleTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    const size_t tab1 = line.find('\t');
    const size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw LexiconError(where + ": expected Tag1<TAB>Tag2<TAB>value");
    Tag first, second;
    try {
      first = tag_from_name(trim(line.substr(0, tab1)));
      second = tag_from_name(trim(line.substr(tab1 + 1, tab2 - tab1 - 1)));
    } catch (const LexiconError& e) {
      throw LexiconError(where + ": " + e.what());
    }
    double value = 0.0;
    try {
      size_t consumed = 0;
      const std::string value_text = trim(line.substr(tab2 + 1));
      value = std::stod(value_text, &consumed);
      if (consumed != value_text.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw LexiconError(where + ": bad value");
    }
    if (value < -10.0 || value > 10.0)
      throw LexiconError(where + ": value outside [-10, 10]");
    double existing;
    if (table.lookup(first, second, &existing))
      throw LexiconError(where + ": duplicate rule (" + tag_name(first) + ", " +
                         tag_name(second) + ")");
    table.add(first, second, value);
  }
  return table;
}

void BigramRuleTable::add(Tag first, Tag second, double value) {
  rules_[{first, second}] = value;
}

bool BigramRuleTable::lookup(Tag first, Tag second, double* value) const {
  const auto it = rules_.find({first, second});
  if (it == rules_.end()) return false;
  *value = it->second;
  return true;
}

LyricsDocument parse_lyrics(const std::string& path, LyricsFormat format) {
  return parse_lyrics_text(read_file(path), format);
}

LyricsDocument parse_lyrics_text(const std::string& text, LyricsFormat format) {
  LyricsDocument doc;
  std::istringstream in(text);
  std::string raw;

  struct PendingLine {
    double timestamp;
    std::vector<std::string> tokens;
  };
  std::vector<PendingLine> pending;

  while (std::getline(in, raw)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (format == LyricsFormat::Plain) {
      for (std::string& token : tokenize(line)) doc.tokens.push_back(std::move(token));
      continue;
    }

    // LRC: one or more timestamps, then the sung text
    size_t pos = 0;
    std::vector<double> stamps;
    double seconds = 0.0;
    while (parse_timestamp(line, &pos, &seconds)) stamps.push_back(seconds);
    if (stamps.empty()) {
      if (!is_id_tag(line)) ++doc.malformed_line_count;
      continue;
    }
    std::vector<std::string> tokens = tokenize(line.substr(pos));
    if (tokens.empty()) continue;  // timing gap with no words
    for (double stamp : stamps) pending.push_back({stamp, tokens});
  }

  if (format == LyricsFormat::Lrc) {
    std::stable_sort(pending.begin(), pending.end(),
                     [](const PendingLine& a, const PendingLine& b) {
                       return a.timestamp < b.timestamp;
                     });
    for (PendingLine& line : pending) {
      LyricsDocument::Line entry;
      entry.timestamp_seconds = line.timestamp;
      entry.token_begin = doc.tokens.size();
      for (std::string& token : line.tokens) doc.tokens.push_back(std::move(token));
      entry.token_end = doc.tokens.size();
      doc.lines.push_back(entry);
    }
    doc.has_timestamps = !doc.lines.empty();
  }

  if (doc.tokens.empty()) throw EmptyDocument("no tokens survived tokenization");
  return doc;
}

double bow_score_span(const LyricsDocument& doc, const TagLexicon& lexicon, size_t begin,
                      size_t end) {
  long long positive = 0, negative = 0, contextual = 0;
  for (size_t i = begin; i < end && i < doc.tokens.size(); ++i) {
    const std::set<Tag>* tags = lexicon.lookup(doc.tokens[i]);
    if (tags == nullptr) continue;
    bool pos = false, neg = false, ctx = false;
    for (Tag tag : *tags) {
      pos = pos || is_positive_core(tag);
      neg = neg || is_negative_core(tag);
      ctx = ctx || is_contextual(tag);
    }
    if (pos) ++positive;
    if (neg) ++negative;
    if (ctx) ++contextual;
  }

  // contextual words side with whichever core dominates by 1.5x
  if (static_cast<double>(positive) > 1.5 * static_cast<double>(negative))
    positive += contextual;
  else if (static_cast<double>(negative) > 1.5 * static_cast<double>(positive))
    negative += contextual;

  const long long total = positive + negative;
  if (total == 0) return 50.0;
  return static_cast<double>(positive) / static_cast<double>(total) * 100.0;
}

double bow_score(const LyricsDocument& doc, const TagLexicon& lexicon) {
  return bow_score_span(doc, lexicon, 0, doc.tokens.size());
}

double bigram_score_span(const LyricsDocument& doc, const TagLexicon& lexicon,
                         const BigramRuleTable& rules, size_t begin, size_t end) {
  double positive_sum = 0.0, negative_sum = 0.0;
  const size_t limit = std::min(end, doc.tokens.size());
  for (size_t i = begin; i + 1 < limit; ++i) {
    const std::set<Tag>* first = lexicon.lookup(doc.tokens[i]);
    const std::set<Tag>* second = lexicon.lookup(doc.tokens[i + 1]);
    if (first == nullptr || second == nullptr) continue;
    for (Tag a : *first) {
      for (Tag b : *second) {
        double value;
        if (!rules.lookup(a, b, &value)) continue;
        if (value > 0.0)
          positive_sum += value;
        else
          negative_sum += -value;
      }
    }
  }
  const double total = positive_sum + negative_sum;
  if (total == 0.0) return 50.0;
  return positive_sum / total * 100.0;
}

double bigram_score(const LyricsDocument& doc, const TagLexicon& lexicon,
                    const BigramRuleTable& rules) {
  return bigram_score_span(doc, lexicon, rules, 0, doc.tokens.size());
}

LyricsVerdict lyrics_verdict(double bow_pct, double bigram_pct) {
  LyricsVerdict verdict;
  verdict.bow_positive_pct = bow_pct;
  verdict.bigram_positive_pct = bigram_pct;
  verdict.combined_pct = bow_pct * 0.4 + bigram_pct * 0.6;
  if (verdict.combined_pct > 60.0)
    verdict.polarity = LyricsVerdict::Polarity::Positive;
  else if (verdict.combined_pct < 40.0)
    verdict.polarity = LyricsVerdict::Polarity::Negative;
  else
    verdict.polarity = LyricsVerdict::Polarity::Null;
  return verdict;
}

const std::string& polarity_name(LyricsVerdict::Polarity polarity) {
  static const std::array<std::string, 3> names = {"Positive", "Negative", "Null"};
  return names[static_cast<size_t>(polarity)];
}

LyricsVerdict::Polarity polarity_from_name(const std::string& name) {
  if (name == "Positive") return LyricsVerdict::Polarity::Positive;
  if (name == "Negative") return LyricsVerdict::Polarity::Negative;
  if (name == "Null") return LyricsVerdict::Polarity::Null;
  throw SchemaViolation("unknown polarity: " + name);
}

std::vector<TimelinePoint> lyrics_timeline(const LyricsDocument& doc, const TagLexicon& lexicon,
                                           const BigramRuleTable& rules) {
  if (!doc.has_timestamps) throw NoTimestamps("timeline requires LRC input");
  std::vector<TimelinePoint> points;
  points.reserve(doc.lines.size());
  for (const LyricsDocument::Line& line : doc.lines) {
    const double bow = bow_score_span(doc, lexicon, line.token_begin, line.token_end);
    const double bigram = bigram_score_span(doc, lexicon, rules, line.token_begin, line.token_end);
    points.push_back({line.timestamp_seconds, lyrics_verdict(bow, bigram).combined_pct});
  }
  return points;
}

}  // namespace moodtag

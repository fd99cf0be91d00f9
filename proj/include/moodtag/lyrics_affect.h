#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace moodtag {

/// Word categories used by the bag-of-words and bigram scorers. The first
/// four carry positive emotion, the next three negative; the remaining
/// contextual tags only count once one side already dominates. Negate
/// exists for bigram rules such as (Negate, Happy).
enum class Tag {
  // positive core
  Happy,
  Sexual,
  Insightful,
  Achievement,
  // negative core
  Sad,
  Anger,
  Death,
  // contextual
  Social,
  Feel,
  Family,
  Health,
  Affect,
  Friend,
  Body,
  Cause,
  Inclusion,
  Exclusion,
  // modifier
  Negate,
};

bool is_positive_core(Tag tag);
bool is_negative_core(Tag tag);
bool is_contextual(Tag tag);

const std::string& tag_name(Tag tag);
/// Throws LexiconError on an unknown name.
Tag tag_from_name(const std::string& name);

/// Tokenized lyric text. `lines` is populated for LRC input only; each
/// entry covers tokens[token_begin, token_end).
struct LyricsDocument {
  struct Line {
    double timestamp_seconds = 0.0;
    size_t token_begin = 0;
    size_t token_end = 0;
  };

  std::vector<std::string> tokens;
  std::vector<Line> lines;
  bool has_timestamps = false;
  int malformed_line_count = 0;
};

enum class LyricsFormat { Plain, Lrc };

/// Word -> tag set dictionary, loaded from a TSV of
/// `word<TAB>Tag1,Tag2` lines. Duplicate words merge their tag sets.
class TagLexicon {
 public:
  static TagLexicon load_file(const std::string& path);
  static TagLexicon parse(const std::string& text, const std::string& origin);

  void add(const std::string& word, Tag tag);
  /// Tags for a token, or nullptr when the word is unknown.
  const std::set<Tag>* lookup(const std::string& token) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::set<Tag>> entries_;
};

/// (tag, tag) -> emotional value table, loaded from a TSV of
/// `Tag1<TAB>Tag2<TAB>value` lines. Values lie in [-10, 10].
class BigramRuleTable {
 public:
  static BigramRuleTable load_file(const std::string& path);
  static BigramRuleTable parse(const std::string& text, const std::string& origin);

  void add(Tag first, Tag second, double value);
  /// True and fills `value` when a rule exists for the ordered pair.
  bool lookup(Tag first, Tag second, double* value) const;
  size_t size() const { return rules_.size(); }

 private:
  std::map<std::pair<Tag, Tag>, double> rules_;
};

/// Outcome of the lyric pipeline: positive-emotion percentages from each
/// technique, their weighted blend, and the ternary polarity it selects.
struct LyricsVerdict {
  double bow_positive_pct = 50.0;
  double bigram_positive_pct = 50.0;
  double combined_pct = 50.0;
  enum class Polarity { Positive, Negative, Null } polarity = Polarity::Null;
};

const std::string& polarity_name(LyricsVerdict::Polarity polarity);
LyricsVerdict::Polarity polarity_from_name(const std::string& name);

/// Lowercase, strip ASCII punctuation, split on whitespace.
std::vector<std::string> tokenize(const std::string& text);

/// Read a lyric file. LRC lines must start with a `[mm:ss.xx]` timestamp
/// (several in a row are allowed); ID tags such as [ti:...] are skipped,
/// anything else malformed is counted and dropped. Throws EmptyDocument
/// when no tokens survive.
LyricsDocument parse_lyrics(const std::string& path, LyricsFormat format);
LyricsDocument parse_lyrics_text(const std::string& text, LyricsFormat format);

/// Bag-of-words positive percentage with the 1.5x dominance rule for
/// contextual words. Returns 50 when no core-tagged word occurs.
double bow_score(const LyricsDocument& doc, const TagLexicon& lexicon);
double bow_score_span(const LyricsDocument& doc, const TagLexicon& lexicon, size_t begin,
                      size_t end);

/// Accumulate rule values over adjacent token pairs; returns the positive
/// share of the total magnitude, or 50 when no rule fired.
double bigram_score(const LyricsDocument& doc, const TagLexicon& lexicon,
                    const BigramRuleTable& rules);
double bigram_score_span(const LyricsDocument& doc, const TagLexicon& lexicon,
                         const BigramRuleTable& rules, size_t begin, size_t end);

/// Emotion = BOW * 0.4 + Bigram * 0.6; polarity Positive above 60,
/// Negative below 40, Null between.
LyricsVerdict lyrics_verdict(double bow_pct, double bigram_pct);

/// Per-line combined score over time, for plotting against the audio
/// features. Requires LRC input; throws NoTimestamps otherwise.
struct TimelinePoint {
  double timestamp_seconds = 0.0;
  double combined_pct = 50.0;
};
std::vector<TimelinePoint> lyrics_timeline(const LyricsDocument& doc, const TagLexicon& lexicon,
                                           const BigramRuleTable& rules);

}  // namespace moodtag

#include "moodtag/lyrics_affect.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "moodtag/errors.h"

namespace moodtag {
namespace {

const std::string kDataDir = MOODTAG_DATA_DIR;

LyricsDocument doc_from_tokens(std::vector<std::string> tokens) {
  LyricsDocument doc;
  doc.tokens = std::move(tokens);
  return doc;
}

TagLexicon tiny_lexicon() {
  TagLexicon lexicon;
  lexicon.add("smiling", Tag::Happy);
  lexicon.add("glad", Tag::Happy);
  lexicon.add("happy", Tag::Happy);
  lexicon.add("sad", Tag::Sad);
  lexicon.add("crying", Tag::Sad);
  lexicon.add("people", Tag::Social);
  lexicon.add("family", Tag::Family);
  lexicon.add("brothers", Tag::Family);
  lexicon.add("not", Tag::Negate);
  lexicon.add("made", Tag::Cause);
  lexicon.add("without", Tag::Exclusion);
  lexicon.add("hand", Tag::Body);
  lexicon.add("massaged", Tag::Sexual);
  return lexicon;
}

BigramRuleTable table4_rules() {
  BigramRuleTable rules;
  rules.add(Tag::Happy, Tag::Family, 6.0);
  rules.add(Tag::Exclusion, Tag::Family, -5.0);
  rules.add(Tag::Body, Tag::Sexual, 4.0);
  rules.add(Tag::Negate, Tag::Happy, -6.0);
  rules.add(Tag::Cause, Tag::Happy, 7.0);
  return rules;
}

// ---------------------------------------------------------------------------
// tokenize / parse_lyrics
// ---------------------------------------------------------------------------

TEST(ParseLyrics, LrcLineWithTimestamp) {
  const LyricsDocument doc = parse_lyrics_text("[00:12.50]Hello world", LyricsFormat::Lrc);
  ASSERT_EQ(doc.tokens.size(), 2u);
  EXPECT_EQ(doc.tokens[0], "hello");
  EXPECT_EQ(doc.tokens[1], "world");
  ASSERT_EQ(doc.lines.size(), 1u);
  EXPECT_DOUBLE_EQ(doc.lines[0].timestamp_seconds, 12.5);
  EXPECT_TRUE(doc.has_timestamps);
}

TEST(ParseLyrics, PlainTextStripsPunctuation) {
  const LyricsDocument doc = parse_lyrics_text("Don't stop!", LyricsFormat::Plain);
  ASSERT_EQ(doc.tokens.size(), 2u);
  EXPECT_EQ(doc.tokens[0], "dont");
  EXPECT_EQ(doc.tokens[1], "stop");
  EXPECT_FALSE(doc.has_timestamps);
}

TEST(ParseLyrics, PunctuationOnlyIsEmpty) {
  EXPECT_THROW(parse_lyrics_text("... !!! ???", LyricsFormat::Plain), EmptyDocument);
  EXPECT_THROW(parse_lyrics_text("", LyricsFormat::Plain), EmptyDocument);
}

TEST(ParseLyrics, MalformedLrcLinesAreCountedAndSkipped) {
  const std::string text =
      "[ti:Some Title]\n"
      "[00:01.00]first line\n"
      "no brackets at all\n"
      "[badstamp]second\n"
      "[00:02.00]second line\n";
  const LyricsDocument doc = parse_lyrics_text(text, LyricsFormat::Lrc);
  EXPECT_EQ(doc.malformed_line_count, 2);  // ID tag is fine, two junk lines are not
  ASSERT_EQ(doc.lines.size(), 2u);
  EXPECT_DOUBLE_EQ(doc.lines[0].timestamp_seconds, 1.0);
  EXPECT_DOUBLE_EQ(doc.lines[1].timestamp_seconds, 2.0);
}

TEST(ParseLyrics, TimestampsAreSorted) {
  const std::string text = "[00:30.00]later words\n[00:10.00]early words\n";
  const LyricsDocument doc = parse_lyrics_text(text, LyricsFormat::Lrc);
  ASSERT_EQ(doc.lines.size(), 2u);
  EXPECT_LE(doc.lines[0].timestamp_seconds, doc.lines[1].timestamp_seconds);
  EXPECT_EQ(doc.tokens[doc.lines[0].token_begin], "early");
}

TEST(ParseLyrics, RepeatedTimestampsShareOneLine) {
  const LyricsDocument doc =
      parse_lyrics_text("[00:05.00][01:05.00]again and again", LyricsFormat::Lrc);
  ASSERT_EQ(doc.lines.size(), 2u);
  EXPECT_DOUBLE_EQ(doc.lines[0].timestamp_seconds, 5.0);
  EXPECT_DOUBLE_EQ(doc.lines[1].timestamp_seconds, 65.0);
}

TEST(Tokenize, LowercasesAndKeepsDigits) {
  const std::vector<std::string> tokens = tokenize("Route 66, BABY!");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0], "route");
  EXPECT_EQ(tokens[1], "66");
  EXPECT_EQ(tokens[2], "baby");
}

// ---------------------------------------------------------------------------
// lexicon / rule table loading
// ---------------------------------------------------------------------------

TEST(TagLexicon, ParsesTsvAndMergesDuplicates) {
  const TagLexicon lexicon = TagLexicon::parse(
      "# comment\nhappy\tHappy\nhome\tFamily\nhome\tFeel\n", "inline");
  const std::set<Tag>* tags = lexicon.lookup("home");
  ASSERT_NE(tags, nullptr);
  EXPECT_TRUE(tags->count(Tag::Family));
  EXPECT_TRUE(tags->count(Tag::Feel));
  EXPECT_EQ(lexicon.lookup("unknown"), nullptr);
}

TEST(TagLexicon, RejectsUnknownTag) {
  EXPECT_THROW(TagLexicon::parse("word\tNotATag\n", "inline"), LexiconError);
  EXPECT_THROW(TagLexicon::parse("word-without-tab\n", "inline"), LexiconError);
}

TEST(BigramRuleTable, ParsesAndValidates) {
  const BigramRuleTable rules =
      BigramRuleTable::parse("Negate\tHappy\t-6\nCause\tHappy\t7\n", "inline");
  double value = 0.0;
  ASSERT_TRUE(rules.lookup(Tag::Negate, Tag::Happy, &value));
  EXPECT_EQ(value, -6.0);
  EXPECT_FALSE(rules.lookup(Tag::Happy, Tag::Negate, &value));  // ordered pairs
}

TEST(BigramRuleTable, RejectsBadRows) {
  EXPECT_THROW(BigramRuleTable::parse("Negate\tHappy\t-11\n", "inline"), LexiconError);
  EXPECT_THROW(BigramRuleTable::parse("Negate\tHappy\tnope\n", "inline"), LexiconError);
  EXPECT_THROW(BigramRuleTable::parse("Negate\tHappy\t-6\nNegate\tHappy\t2\n", "inline"),
               LexiconError);
}

TEST(BundledData, LexiconAndRulesLoad) {
  const TagLexicon lexicon = TagLexicon::load_file(kDataDir + "/lexicon.tsv");
  EXPECT_GE(lexicon.size(), 300u);
  // every core tag carries a healthy starter vocabulary
  const BigramRuleTable rules = BigramRuleTable::load_file(kDataDir + "/bigrams.tsv");
  EXPECT_GE(rules.size(), 40u);

  double value = 0.0;
  ASSERT_TRUE(rules.lookup(Tag::Happy, Tag::Family, &value));
  EXPECT_EQ(value, 6.0);
  ASSERT_TRUE(rules.lookup(Tag::Exclusion, Tag::Family, &value));
  EXPECT_EQ(value, -5.0);
  ASSERT_TRUE(rules.lookup(Tag::Body, Tag::Sexual, &value));
  EXPECT_EQ(value, 4.0);
  ASSERT_TRUE(rules.lookup(Tag::Negate, Tag::Happy, &value));
  EXPECT_EQ(value, -6.0);
  ASSERT_TRUE(rules.lookup(Tag::Cause, Tag::Happy, &value));
  EXPECT_EQ(value, 7.0);
}

// ---------------------------------------------------------------------------
// bow_score
// ---------------------------------------------------------------------------

TEST(BowScore, DominantPositiveAbsorbsContextual) {
  // 3 happy, 1 sad, 2 social: 3 > 1.5, so positive gains the 2 contextual
  const LyricsDocument doc =
      doc_from_tokens({"happy", "glad", "smiling", "sad", "people", "people"});
  EXPECT_NEAR(bow_score(doc, tiny_lexicon()), 500.0 / 6.0, 1e-9);  // 83.33
}

TEST(BowScore, BalancedCountsLeaveContextualOut) {
  const LyricsDocument doc = doc_from_tokens(
      {"happy", "glad", "sad", "crying", "family", "family", "family", "family", "family"});
  EXPECT_NEAR(bow_score(doc, tiny_lexicon()), 50.0, 1e-9);
}

TEST(BowScore, NoTaggedWordsFallsBackToFifty) {
  const LyricsDocument doc = doc_from_tokens({"completely", "untagged", "words"});
  EXPECT_NEAR(bow_score(doc, tiny_lexicon()), 50.0, 1e-9);
}

TEST(BowScore, PermutationInvariant) {
  std::vector<std::string> tokens = {"happy", "sad", "glad", "people", "family",
                                     "not",   "made", "without", "crying"};
  const double base = bow_score(doc_from_tokens(tokens), tiny_lexicon());
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(tokens.begin(), tokens.end(), rng);
    EXPECT_EQ(bow_score(doc_from_tokens(tokens), tiny_lexicon()), base);
  }
}

TEST(BowScore, DuplicatingDocumentKeepsScore) {
  std::vector<std::string> tokens = {"happy", "glad", "sad", "people"};
  const double base = bow_score(doc_from_tokens(tokens), tiny_lexicon());
  std::vector<std::string> doubled = tokens;
  doubled.insert(doubled.end(), tokens.begin(), tokens.end());
  EXPECT_EQ(bow_score(doc_from_tokens(doubled), tiny_lexicon()), base);
}

// ---------------------------------------------------------------------------
// bigram_score
// ---------------------------------------------------------------------------

TEST(BigramScore, NotGladIsFullyNegative) {
  const LyricsDocument doc = doc_from_tokens({"not", "glad"});
  EXPECT_NEAR(bigram_score(doc, tiny_lexicon(), table4_rules()), 0.0, 1e-9);
}

TEST(BigramScore, SmilingBrothersIsFullyPositive) {
  const LyricsDocument doc = doc_from_tokens({"smiling", "brothers"});
  EXPECT_NEAR(bigram_score(doc, tiny_lexicon(), table4_rules()), 100.0, 1e-9);
}

TEST(BigramScore, MixedRulesCombineByMagnitude) {
  // (made glad) +7 and (without brothers) -5 -> 7/12
  const LyricsDocument doc = doc_from_tokens({"made", "glad", "without", "brothers"});
  EXPECT_NEAR(bigram_score(doc, tiny_lexicon(), table4_rules()), 700.0 / 12.0, 1e-9);  // 58.33
}

TEST(BigramScore, HandMassagedUsesBodySexualRule) {
  const LyricsDocument doc = doc_from_tokens({"hand", "massaged"});
  EXPECT_NEAR(bigram_score(doc, tiny_lexicon(), table4_rules()), 100.0, 1e-9);
}

TEST(BigramScore, NoRuleFiredFallsBackToFifty) {
  const LyricsDocument doc = doc_from_tokens({"people", "people", "family"});
  EXPECT_NEAR(bigram_score(doc, tiny_lexicon(), table4_rules()), 50.0, 1e-9);
}

TEST(BigramScore, EmptyRuleTableAlwaysFifty) {
  const BigramRuleTable empty;
  std::mt19937 rng(10);
  std::vector<std::string> pool = {"not", "glad", "smiling", "brothers", "made",
                                   "without", "sad", "happy", "people"};
  for (int trial = 0; trial < 30; ++trial) {
    std::shuffle(pool.begin(), pool.end(), rng);
    const LyricsDocument doc = doc_from_tokens(pool);
    EXPECT_EQ(bigram_score(doc, tiny_lexicon(), empty), 50.0);
  }
}

TEST(BigramScore, OrderSensitiveWitness) {
  // "not glad" fires (Negate, Happy); "glad not" fires nothing
  const double forward =
      bigram_score(doc_from_tokens({"not", "glad"}), tiny_lexicon(), table4_rules());
  const double backward =
      bigram_score(doc_from_tokens({"glad", "not"}), tiny_lexicon(), table4_rules());
  EXPECT_NE(forward, backward);
}

// ---------------------------------------------------------------------------
// lyrics_verdict
// ---------------------------------------------------------------------------

TEST(LyricsVerdict, MidScaleIsNull) {
  const LyricsVerdict verdict = lyrics_verdict(50.0, 50.0);
  EXPECT_NEAR(verdict.combined_pct, 50.0, 1e-9);
  EXPECT_EQ(verdict.polarity, LyricsVerdict::Polarity::Null);
}

TEST(LyricsVerdict, FullPositive) {
  const LyricsVerdict verdict = lyrics_verdict(100.0, 100.0);
  EXPECT_NEAR(verdict.combined_pct, 100.0, 1e-9);
  EXPECT_EQ(verdict.polarity, LyricsVerdict::Polarity::Positive);
}

TEST(LyricsVerdict, WeightedBlend) {
  // bow 83.33 (= 500/6) with a perfect bigram score
  const LyricsVerdict verdict = lyrics_verdict(500.0 / 6.0, 100.0);
  EXPECT_NEAR(verdict.combined_pct, 500.0 / 6.0 * 0.4 + 60.0, 1e-9);  // 93.33
  EXPECT_EQ(verdict.polarity, LyricsVerdict::Polarity::Positive);
}

TEST(LyricsVerdict, ThresholdsAreStrict) {
  EXPECT_EQ(lyrics_verdict(60.0, 60.0).polarity, LyricsVerdict::Polarity::Null);
  EXPECT_EQ(lyrics_verdict(40.0, 40.0).polarity, LyricsVerdict::Polarity::Null);
  EXPECT_EQ(lyrics_verdict(60.001, 60.001).polarity, LyricsVerdict::Polarity::Positive);
  EXPECT_EQ(lyrics_verdict(39.999, 39.999).polarity, LyricsVerdict::Polarity::Negative);
}

TEST(LyricsVerdict, PolarityMonotoneInCombined) {
  int previous = -1;  // Negative=0, Null=1, Positive=2 must never step down
  for (double pct = 0.0; pct <= 100.0; pct += 0.25) {
    const LyricsVerdict verdict = lyrics_verdict(pct, pct);
    int level = 1;
    if (verdict.polarity == LyricsVerdict::Polarity::Negative) level = 0;
    if (verdict.polarity == LyricsVerdict::Polarity::Positive) level = 2;
    EXPECT_GE(level, previous);
    previous = level;
  }
}

// ---------------------------------------------------------------------------
// lyrics_timeline
// ---------------------------------------------------------------------------

TEST(LyricsTimeline, SingleLineScore) {
  const LyricsDocument doc = parse_lyrics_text("[00:12.50]smiling brothers", LyricsFormat::Lrc);
  const auto points = lyrics_timeline(doc, tiny_lexicon(), table4_rules());
  ASSERT_EQ(points.size(), 1u);
  EXPECT_DOUBLE_EQ(points[0].timestamp_seconds, 12.5);
  // bow: 1 happy, 0 negative, contextual joins -> 100; bigram +6 -> 100
  EXPECT_NEAR(points[0].combined_pct, 100.0, 1e-9);
}

TEST(LyricsTimeline, IdenticalLinesScoreIdentically) {
  const LyricsDocument doc = parse_lyrics_text(
      "[00:01.00]not glad\n[00:02.00]not glad\n", LyricsFormat::Lrc);
  const auto points = lyrics_timeline(doc, tiny_lexicon(), table4_rules());
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].combined_pct, points[1].combined_pct);
  EXPECT_LT(points[0].combined_pct, 40.0);  // negative line
}

TEST(LyricsTimeline, PlainDocumentHasNoTimestamps) {
  const LyricsDocument doc = parse_lyrics_text("just words", LyricsFormat::Plain);
  EXPECT_THROW(lyrics_timeline(doc, tiny_lexicon(), table4_rules()), NoTimestamps);
}

TEST(LyricsTimeline, BigramsDoNotCrossLineBreaks) {
  // "not" ends line one, "glad" opens line two; the pair must not fire
  const LyricsDocument doc =
      parse_lyrics_text("[00:01.00]it is not\n[00:02.00]glad tidings\n", LyricsFormat::Lrc);
  const auto points = lyrics_timeline(doc, tiny_lexicon(), table4_rules());
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].combined_pct, 50.0);  // no rule fires within either line
}

// all percentages stay in range on random token soup
TEST(LyricsScores, PercentagesInRange) {
  const TagLexicon lexicon = TagLexicon::load_file(kDataDir + "/lexicon.tsv");
  const BigramRuleTable rules = BigramRuleTable::load_file(kDataDir + "/bigrams.tsv");
  std::vector<std::string> pool = {"happy", "sad",  "love",   "death", "not",  "win",
                                   "cry",   "kiss", "family", "alone", "with", "xyzzy"};
  std::mt19937 rng(11);
  std::uniform_int_distribution<size_t> length(1, 60);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> tokens(length(rng));
    for (std::string& token : tokens) token = pool[pick(rng)];
    const LyricsDocument doc = doc_from_tokens(tokens);
    const double bow = bow_score(doc, lexicon);
    const double bigram = bigram_score(doc, lexicon, rules);
    EXPECT_GE(bow, 0.0);
    EXPECT_LE(bow, 100.0);
    EXPECT_GE(bigram, 0.0);
    EXPECT_LE(bigram, 100.0);
    const LyricsVerdict verdict = lyrics_verdict(bow, bigram);
    EXPECT_GE(verdict.combined_pct, 0.0);
    EXPECT_LE(verdict.combined_pct, 100.0);
  }
}

}  // namespace
}  // namespace moodtag

// moodtag: batch mood tagging and playlist generation for WAV + lyric files.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "moodtag/audio_io.h"
#include "moodtag/dsp_features.h"
#include "moodtag/errors.h"
#include "moodtag/fusion_engine.h"
#include "moodtag/lyrics_affect.h"
#include "moodtag/mood_mapper.h"
#include "moodtag/playlist_ranker.h"
#include "moodtag/record_store.h"

namespace fs = std::filesystem;
using namespace moodtag;

namespace {

#ifndef MOODTAG_DATA_DIR
#define MOODTAG_DATA_DIR "data"
#endif

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitFailure = 2;

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string feature_csv(const FeatureMatrix& matrix) {
  std::ostringstream out;
  const std::vector<std::string> names = feature_column_names();
  for (size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << "\n";
  for (const WindowFeatureRow& row : matrix.rows) {
    out << row.window_index << ',' << format_double(row.rms) << ','
        << format_double(row.low_energy) << ',' << format_double(row.zero_cross) << ','
        << format_double(row.centroid) << ',' << format_double(row.rolloff) << ','
        << format_double(row.entropy) << ',' << format_double(row.beat_strength) << ','
        << (row.tempo ? format_double(*row.tempo) : "") << ',' << format_double(row.regularity)
        << ',' << format_double(row.pos_autocorr) << ',' << format_double(row.neg_autocorr)
        << "\n";
  }
  return out.str();
}

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  std::string lexicon_path = std::string(MOODTAG_DATA_DIR) + "/lexicon.tsv";
  std::string bigrams_path = std::string(MOODTAG_DATA_DIR) + "/bigrams.tsv";
  std::string meta_path;
  std::string out_dir = ".";
  unsigned jobs = 1;
  bool emit_timelines = false;
  bool emit_feature_csv = false;
};

struct PlaylistOptions {
  std::string records_dir;
  std::string meta_path;
  std::string labels_path;
  std::string out_dir = ".";
  bool force_quadrant = false;
};

std::vector<fs::path> collect_wav_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wav")
          found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(path);
    }
  }
  return files;
}

std::optional<std::pair<fs::path, LyricsFormat>> discover_lyrics(const fs::path& audio) {
  fs::path lrc = audio;
  lrc.replace_extension(".lrc");
  if (fs::exists(lrc)) return {{lrc, LyricsFormat::Lrc}};
  fs::path txt = audio;
  txt.replace_extension(".txt");
  if (fs::exists(txt)) return {{txt, LyricsFormat::Plain}};
  return std::nullopt;
}

struct FileOutcome {
  bool ok = false;
  std::vector<std::string> messages;
};

FileOutcome analyze_one(const fs::path& audio_path, const AnalyzeOptions& options,
                        const TagLexicon& lexicon, const BigramRuleTable& rules,
                        const std::map<std::string, SongMetadata>& metadata) {
  FileOutcome outcome;
  const std::string song_id = audio_path.stem().string();
  try {
    const AudioClip raw = decode_wav(audio_path.string());
    const AudioClip clip = canonicalize(raw);
    const FeatureMatrix matrix = extract_features(clip, song_id);
    const AudioAnalysis analysis = analyze_audio(matrix);

    SongRecord record;
    record.song_id = song_id;
    record.audio_path = audio_path.string();
    record.summary = analysis.summary;

    std::optional<LyricsDocument> doc;
    std::optional<LyricsFormat> lyric_format;
    if (const auto lyrics = discover_lyrics(audio_path)) {
      try {
        doc = parse_lyrics(lyrics->first.string(), lyrics->second);
        lyric_format = lyrics->second;
        record.lyrics_path = lyrics->first.string();
      } catch (const Error& e) {
        outcome.messages.push_back(song_id + ": lyrics skipped (" + e.what() + ")");
      }
    }

    FusedResult fused;
    if (doc) {
      const double bow = bow_score(*doc, lexicon);
      const double bigram = bigram_score(*doc, lexicon, rules);
      const LyricsVerdict verdict = lyrics_verdict(bow, bigram);
      record.lyrics = verdict;
      fused = fuse(analysis.point, verdict);
      if (doc->malformed_line_count > 0)
        outcome.messages.push_back(song_id + ": skipped " +
                                   std::to_string(doc->malformed_line_count) +
                                   " malformed lyric line(s)");
    } else {
      fused.pre_fusion = fused.post_fusion = analysis.point;
      fused.audio_label = fused.final_label = analysis.label;
    }
    record.pre_fusion = fused.pre_fusion;
    record.post_fusion = fused.post_fusion;
    record.audio_label = fused.audio_label;
    record.final_label = fused.final_label;

    if (const auto it = metadata.find(song_id); it != metadata.end()) {
      record.metadata = it->second;
      record.likeness = likeness(it->second);
    }

    const fs::path out_base = fs::path(options.out_dir) / song_id;
    write_record_file(record, out_base.string() + ".xml");

    if (options.emit_feature_csv) {
      std::ofstream csv(out_base.string() + "_features.csv", std::ios::trunc);
      csv << feature_csv(matrix);
    }
    if (options.emit_timelines) {
      if (doc && doc->has_timestamps) {
        std::ofstream csv(out_base.string() + "_timeline.csv", std::ios::trunc);
        csv << "timestamp_s,combined_pct\n";
        for (const TimelinePoint& point : lyrics_timeline(*doc, lexicon, rules))
          csv << format_double(point.timestamp_seconds) << ','
              << format_double(point.combined_pct) << "\n";
      } else if (lyric_format) {
        outcome.messages.push_back(song_id + ": no timeline (lyrics carry no timestamps)");
      }
    }
    outcome.ok = true;
  } catch (const std::exception& e) {
    outcome.messages.push_back(audio_path.string() + ": " + e.what());
  }
  return outcome;
}

int run_analyze(const AnalyzeOptions& options) {
  const std::vector<fs::path> files = collect_wav_inputs(options.inputs);
  if (files.empty()) {
    std::cerr << "moodtag analyze: no input WAV files\n";
    return kExitFailure;
  }

  TagLexicon lexicon;
  BigramRuleTable rules;
  std::map<std::string, SongMetadata> metadata;
  try {
    lexicon = TagLexicon::load_file(options.lexicon_path);
    rules = BigramRuleTable::load_file(options.bigrams_path);
    if (!options.meta_path.empty()) metadata = load_metadata_csv(options.meta_path);
    fs::create_directories(options.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "moodtag analyze: " << e.what() << "\n";
    return kExitFailure;
  }

  std::vector<FileOutcome> outcomes(files.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, files.size()));
  if (jobs == 1) {
    for (size_t i = 0; i < files.size(); ++i)
      outcomes[i] = analyze_one(files[i], options, lexicon, rules, metadata);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
          outcomes[i] = analyze_one(files[i], options, lexicon, rules, metadata);
      });
    }
    for (std::thread& worker : workers) worker.join();
  }

  size_t ok = 0;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    for (const std::string& message : outcomes[i].messages) std::cerr << message << "\n";
    if (outcomes[i].ok) ++ok;
  }
  if (ok == files.size()) return kExitOk;
  return ok > 0 ? kExitPartial : kExitFailure;
}

void write_m3u(const fs::path& path, const Playlist& playlist,
               const std::map<std::string, std::string>& audio_paths) {
  std::ofstream out(path, std::ios::trunc);
  out << "#EXTM3U\n";
  for (const Playlist::Entry& entry : playlist.entries) {
    out << "# likeness=" << (entry.likeness ? format_double(*entry.likeness) : "n/a") << "\n";
    const auto it = audio_paths.find(entry.song_id);
    out << (it != audio_paths.end() ? it->second : entry.song_id) << "\n";
  }
}

int quadrant_index(MoodCategory category) {
  switch (category) {
    case MoodCategory::Q1: return 0;
    case MoodCategory::Q2: return 1;
    case MoodCategory::Q3: return 2;
    case MoodCategory::Q4: return 3;
    default: return -1;
  }
}

void print_confusion_matrix(const std::map<std::string, MoodCategory>& labels,
                            const std::map<std::string, MoodCategory>& predictions) {
  std::array<std::array<int, 4>, 4> counts{};
  int total = 0, correct = 0, unmatched = 0;
  for (const auto& [song_id, actual] : labels) {
    const auto it = predictions.find(song_id);
    if (it == predictions.end()) {
      ++unmatched;
      continue;
    }
    const int row = quadrant_index(actual);
    const int col = quadrant_index(it->second);
    if (row < 0 || col < 0) {
      ++unmatched;
      continue;
    }
    ++counts[row][col];
    ++total;
    if (row == col) ++correct;
  }

  std::cout << "Confusion matrix (rows = labeled quadrant, columns = predicted, row %):\n";
  std::cout << "Quadrant\tQ1\tQ2\tQ3\tQ4\n";
  for (int row = 0; row < 4; ++row) {
    int row_total = 0;
    for (int col = 0; col < 4; ++col) row_total += counts[row][col];
    std::cout << "Q" << row + 1;
    for (int col = 0; col < 4; ++col) {
      const double pct = row_total > 0 ? 100.0 * counts[row][col] / row_total : 0.0;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.1f", pct);
      std::cout << '\t' << buf;
    }
    std::cout << "\n";
  }
  if (total > 0) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * correct / total);
    std::cout << "accuracy: " << buf << "% over " << total << " song(s)\n";
  }
  if (unmatched > 0)
    std::cout << "excluded: " << unmatched
              << " labeled song(s) without a quadrant prediction\n";
}

int run_playlist(const PlaylistOptions& options) {
  if (!fs::is_directory(options.records_dir)) {
    std::cerr << "moodtag playlist: not a directory: " << options.records_dir << "\n";
    return kExitFailure;
  }

  std::vector<fs::path> record_files;
  for (const auto& entry : fs::directory_iterator(options.records_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml")
      record_files.push_back(entry.path());
  }
  std::sort(record_files.begin(), record_files.end());

  std::vector<SongRecord> records;
  for (const fs::path& file : record_files) {
    try {
      records.push_back(read_record_file(file.string()));
    } catch (const std::exception& e) {
      std::cerr << file.string() << ": skipped (" << e.what() << ")\n";
    }
  }

  std::map<std::string, SongMetadata> metadata;
  if (!options.meta_path.empty()) {
    try {
      metadata = load_metadata_csv(options.meta_path);
    } catch (const std::exception& e) {
      std::cerr << "moodtag playlist: " << e.what() << "\n";
      return kExitFailure;
    }
  } else {
    for (const SongRecord& record : records)
      if (record.metadata) metadata.emplace(record.song_id, *record.metadata);
  }

  std::map<std::string, std::string> audio_paths;
  std::map<std::string, MoodCategory> predictions;
  std::array<std::vector<std::string>, 4> quadrant_clusters;
  std::vector<std::string> boundary_cluster;
  for (const SongRecord& record : records) {
    audio_paths[record.song_id] = record.audio_path;
    MoodCategory category = record.final_label.category;
    if (quadrant_index(category) < 0 && options.force_quadrant)
      category = snap_to_quadrant(record.post_fusion);
    predictions[record.song_id] = category;
    const int idx = quadrant_index(category);
    if (idx >= 0)
      quadrant_clusters[idx].push_back(record.song_id);
    else
      boundary_cluster.push_back(record.song_id);
  }

  try {
    fs::create_directories(options.out_dir);
    const std::array<Playlist::Quadrant, 4> quadrants = {
        Playlist::Quadrant::Q1, Playlist::Quadrant::Q2, Playlist::Quadrant::Q3,
        Playlist::Quadrant::Q4};
    for (int i = 0; i < 4; ++i) {
      const Playlist playlist = rank(quadrants[i], quadrant_clusters[i], metadata);
      write_m3u(fs::path(options.out_dir) / ("quadrant" + std::to_string(i + 1) + ".m3u"),
                playlist, audio_paths);
    }
    if (!options.force_quadrant) {
      const Playlist playlist = rank(Playlist::Quadrant::Boundary, boundary_cluster, metadata);
      write_m3u(fs::path(options.out_dir) / "boundary.m3u", playlist, audio_paths);
    }
  } catch (const std::exception& e) {
    std::cerr << "moodtag playlist: " << e.what() << "\n";
    return kExitFailure;
  }

  if (!options.labels_path.empty()) {
    std::ifstream in(options.labels_path);
    if (!in) {
      std::cerr << "moodtag playlist: cannot open labels file: " << options.labels_path << "\n";
      return kExitFailure;
    }
    std::map<std::string, MoodCategory> labels;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (line.empty()) continue;
      if (line_no == 1 && line == "song_id,quadrant") continue;
      const size_t comma = line.rfind(',');
      if (comma == std::string::npos) {
        std::cerr << options.labels_path << ":" << line_no << ": expected song_id,quadrant\n";
        return kExitFailure;
      }
      try {
        const MoodLabel label = mood_label_from_name(line.substr(comma + 1));
        if (quadrant_index(label.category) < 0) throw SchemaViolation("not a quadrant");
        labels[line.substr(0, comma)] = label.category;
      } catch (const std::exception&) {
        std::cerr << options.labels_path << ":" << line_no << ": quadrant must be Q1..Q4\n";
        return kExitFailure;
      }
    }
    print_confusion_matrix(labels, predictions);
  }
  return kExitOk;
}

int run_features(const std::string& input) {
  try {
    const AudioClip clip = canonicalize(decode_wav(input));
    const FeatureMatrix matrix = extract_features(clip, fs::path(input).stem().string());
    std::cout << feature_csv(matrix);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "moodtag features: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mood-based song tagging and playlist generation"};
  app.require_subcommand(1);

  AnalyzeOptions analyze_options;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Analyze WAV files (plus .lrc/.txt lyrics) into per-song XML records");
  analyze->add_option("inputs", analyze_options.inputs, "WAV files or directories")->required();
  analyze->add_option("--lexicon", analyze_options.lexicon_path, "word tag lexicon TSV");
  analyze->add_option("--bigrams", analyze_options.bigrams_path, "bigram rule TSV");
  analyze->add_option("--meta", analyze_options.meta_path, "song metadata CSV");
  analyze->add_option("--out", analyze_options.out_dir, "output directory");
  analyze->add_option("--jobs,-j", analyze_options.jobs, "parallel worker count");
  analyze->add_flag("--emit-timelines", analyze_options.emit_timelines,
                    "write per-line lyric score CSV for LRC inputs");
  analyze->add_flag("--emit-feature-csv", analyze_options.emit_feature_csv,
                    "write the per-window feature matrix CSV");

  PlaylistOptions playlist_options;
  CLI::App* playlist = app.add_subcommand(
      "playlist", "Cluster analyzed records into ranked per-quadrant playlists");
  playlist->add_option("records", playlist_options.records_dir, "directory of song XML records")
      ->required();
  playlist->add_option("--meta", playlist_options.meta_path, "song metadata CSV");
  playlist->add_option("--out", playlist_options.out_dir, "output directory");
  playlist->add_option("--labels", playlist_options.labels_path,
                       "ground-truth CSV (song_id,quadrant); prints a confusion matrix");
  playlist->add_flag("--force-quadrant", playlist_options.force_quadrant,
                     "snap boundary moods into the nearest quadrant");

  std::string features_input;
  CLI::App* features = app.add_subcommand("features", "Dump the per-window feature matrix as CSV");
  features->add_option("input", features_input, "WAV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/usage
    return kExitFailure;
  }

  if (analyze->parsed()) return run_analyze(analyze_options);
  if (playlist->parsed()) return run_playlist(playlist_options);
  if (features->parsed()) return run_features(features_input);
  return kExitFailure;
}

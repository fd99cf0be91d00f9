#pragma once

#include <stdexcept>
#include <string>

namespace moodtag {

/// Base class for all recoverable pipeline errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// audio_io
class MalformedHeader : public Error {
 public:
  using Error::Error;
};
class UnsupportedCodec : public Error {
 public:
  using Error::Error;
};
class EmptyAudio : public Error {
 public:
  using Error::Error;
};
class ResampleFailure : public Error {
 public:
  using Error::Error;
};

// lyrics
class EmptyDocument : public Error {
 public:
  using Error::Error;
};
class NoTimestamps : public Error {
 public:
  using Error::Error;
};
class LexiconError : public Error {
 public:
  using Error::Error;
};

// record store
class SchemaViolation : public Error {
 public:
  using Error::Error;
};
class UnsupportedVersion : public Error {
 public:
  using Error::Error;
};

// metadata csv
class MetadataError : public Error {
 public:
  using Error::Error;
};

}  // namespace moodtag

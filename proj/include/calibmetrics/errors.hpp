#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace calib {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A line that could not be turned into a record at all (bad JSON, wrong
// types, unknown or missing keys).
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": parse error: " + reason),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// A well-formed record that violates a corpus invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string record_id, const std::string& rule)
      : Error("validation error [" + record_id + "]: " + rule),
        record_id_(std::move(record_id)),
        rule_(rule) {}

  const std::string& record_id() const { return record_id_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string record_id_;
  std::string rule_;
};

// A paper references an author_id with no author record.
class DanglingAuthor : public ValidationError {
 public:
  explicit DanglingAuthor(std::string author_id, const std::string& paper_id = "")
      : ValidationError(paper_id.empty() ? author_id : paper_id,
                        "references unknown author '" + author_id + "'"),
        author_id_(std::move(author_id)) {}

  const std::string& author_id() const { return author_id_; }

 private:
  std::string author_id_;
};

class UnknownAuthor : public Error {
 public:
  explicit UnknownAuthor(const std::string& author_id)
      : Error("unknown author: " + author_id) {}
};

class UnknownGroup : public Error {
 public:
  explicit UnknownGroup(const std::string& group)
      : Error("unknown group: " + group) {}
};

class EmptyWindow : public Error {
 public:
  EmptyWindow(int start, int end)
      : Error("empty year window [" + std::to_string(start) + ", " + std::to_string(end) + "]") {}
};

class EmptySubfield : public Error {
 public:
  explicit EmptySubfield(const std::string& code)
      : Error("no author has papers in subfield '" + code + "' inside the window") {}
};

class NoPapersInWindow : public Error {
 public:
  explicit NoPapersInWindow(const std::string& author_id)
      : Error("author has no papers in window: " + author_id) {}
};

class ZeroYears : public Error {
 public:
  ZeroYears() : Error("year span must be at least 1") {}
};

class DecreasingH : public Error {
 public:
  DecreasingH(std::int64_t h_start, std::int64_t h_end)
      : Error("h-index cannot decrease (" + std::to_string(h_start) + " -> " +
              std::to_string(h_end) + ")") {}
};

class NonPositiveInput : public Error {
 public:
  explicit NonPositiveInput(const std::string& what_input)
      : Error("input must be positive: " + what_input) {}
};

class InvalidWeight : public Error {
 public:
  explicit InvalidWeight(const std::string& detail)
      : Error("invalid weight: " + detail) {}
};

// Strict mode only: the collaboration correction is undefined for N < n.
class NotApplicable : public Error {
 public:
  NotApplicable(std::int64_t collaboration_size, std::int64_t n)
      : Error("calibration not applicable: N=" + std::to_string(collaboration_size) +
              " < n=" + std::to_string(n)) {}
};

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& detail)
      : Error("invalid scenario spec: " + detail) {}
};

}  // namespace calib

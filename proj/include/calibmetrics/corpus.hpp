#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "calibmetrics/errors.hpp"
#include "calibmetrics/types.hpp"

namespace calib {

// One publication. `collaboration_size` is stored explicitly: giant
// collaborations list thousands of members while corpus files usually carry
// a truncated roster. `roster_complete` records which situation applies.
struct PaperRecord {
  std::string paper_id;
  std::string title;
  int year = 0;
  std::vector<std::string> author_ids;   // ordered, nonempty
  std::int64_t collaboration_size = 1;   // N
  bool roster_complete = true;
  std::int64_t citation_count = 0;
  std::vector<std::string> subfield_codes;  // opaque PACS-style codes, <= 10

  bool operator==(const PaperRecord&) const = default;
};

struct AuthorProfile {
  std::string author_id;
  std::string name;
  int first_publication_year = 0;  // academic-age anchor

  bool operator==(const AuthorProfile&) const = default;
};

struct Diagnostic {
  enum class Class { parse, validation };
  enum class Rule {
    malformed_line,
    duplicate_paper_id,
    duplicate_author_id,
    dangling_author,
    field_invariant,
    first_publication_year,
  };

  Class cls = Class::parse;
  Rule rule = Rule::malformed_line;
  std::string file;
  std::size_t line = 0;
  std::string record_id;  // empty for parse failures
  std::string message;

  std::string format() const;
};

// Validated, immutable collection of papers and authors. Construction
// succeeds only when every invariant holds; afterward the corpus is safe for
// concurrent reads.
class Corpus {
 public:
  // Validates, sorts, and builds the indexes; throws ValidationError /
  // DanglingAuthor on the first violation.
  static Corpus from_records(std::vector<PaperRecord> papers,
                             std::vector<AuthorProfile> authors,
                             int as_of_year);

  const std::vector<PaperRecord>& papers() const { return papers_; }      // sorted by paper_id
  const std::vector<AuthorProfile>& authors() const { return authors_; }  // sorted by author_id
  int as_of_year() const { return as_of_year_; }

  const AuthorProfile* find_author(const std::string& author_id) const;
  const PaperRecord* find_paper(const std::string& paper_id) const;

  // paper_ids sorted by (year, paper_id); empty vector for unknown keys.
  const std::vector<std::string>& papers_by_author(const std::string& author_id) const;
  const std::vector<std::string>& papers_by_subfield(const std::string& code) const;
  std::vector<std::string> subfield_codes() const;

  // as_of_year - first_publication_year + 1, floored at 1.
  int academic_age(const std::string& author_id) const;

  // Rebuilds both indexes from the paper collection and compares; throws
  // ValidationError on mismatch.
  void check_integrity() const;

  bool operator==(const Corpus& o) const {
    return papers_ == o.papers_ && authors_ == o.authors_ && as_of_year_ == o.as_of_year_;
  }

 private:
  Corpus() = default;

  std::vector<PaperRecord> papers_;
  std::vector<AuthorProfile> authors_;
  int as_of_year_ = 0;
  std::map<std::string, std::vector<std::string>> by_author_;
  std::map<std::string, std::vector<std::string>> by_subfield_;
};

// Reads line-delimited JSON record files and returns the validated corpus.
// Throws ParseError / ValidationError / DanglingAuthor on the first problem.
// The result does not depend on the ordering of `paths`.
Corpus load_corpus(const std::vector<std::filesystem::path>& paths, int as_of_year);

// Same input as load_corpus but collects every problem instead of stopping
// at the first one. Parse failures skip the line; all other checks still run.
std::vector<Diagnostic> validate_files(const std::vector<std::filesystem::path>& paths);

// Canonical serialization: author lines sorted by author_id, then paper
// lines sorted by paper_id, fixed key order, "\n" endings. Reloading the
// output reproduces the corpus field by field.
std::string serialize_corpus(const Corpus& corpus);

// Parses corpus text (used by load_corpus; exposed for round-trip tests).
Corpus parse_corpus_text(const std::string& text, int as_of_year,
                         const std::string& origin = "<memory>");

// All and only papers listing `author_id` with year inside `window`,
// ordered by (year, paper_id). Throws UnknownAuthor.
std::vector<PaperRecord> papers_of(const Corpus& corpus, const std::string& author_id,
                                   YearRange window);

// Largest paper year present, if any. Handy default for as_of_year.
std::optional<int> max_paper_year(const std::vector<PaperRecord>& papers);

}  // namespace calib

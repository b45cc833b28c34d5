#include "calibmetrics/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace calib {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;
constexpr std::size_t kMaxSubfields = 10;

// Identifiers end up unquoted in CSV cells, so the charset is restricted.
bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

struct SourceRef {
  std::string file;
  std::size_t line = 0;
};

struct ParsedFiles {
  std::vector<std::pair<PaperRecord, SourceRef>> papers;
  std::vector<std::pair<AuthorProfile, SourceRef>> authors;
  std::vector<Diagnostic> diagnostics;
};

void add_parse_diag(ParsedFiles& out, const SourceRef& ref, const std::string& message) {
  out.diagnostics.push_back({Diagnostic::Class::parse, Diagnostic::Rule::malformed_line,
                             ref.file, ref.line, "", message});
}

void add_validation_diag(ParsedFiles& out, Diagnostic::Rule rule, const SourceRef& ref,
                         const std::string& record_id, const std::string& message) {
  out.diagnostics.push_back({Diagnostic::Class::validation, rule, ref.file, ref.line,
                             record_id, message});
}

std::string require_string(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw std::runtime_error(std::string(key) + " must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw std::runtime_error(std::string(key) + " must be an integer");
  return v.get<std::int64_t>();
}

bool require_bool(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw std::runtime_error(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

std::vector<std::string> require_string_array(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw std::runtime_error(std::string(key) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw std::runtime_error(std::string(key) + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) throw std::runtime_error("unknown key '" + key + "'");
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw std::runtime_error("missing key '" + key + "'");
  }
}

void parse_line(const std::string& text, const SourceRef& ref, ParsedFiles& out) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    add_parse_diag(out, ref, e.what());
    return;
  }
  if (!j.is_object()) {
    add_parse_diag(out, ref, "record must be a JSON object");
    return;
  }
  try {
    std::string kind = require_string(j, "kind");
    if (kind == "paper") {
      check_keys(j, {"kind", "paper_id", "title", "year", "author_ids", "collaboration_size",
                     "roster_complete", "citation_count", "subfield_codes"});
      PaperRecord p;
      p.paper_id = require_string(j, "paper_id");
      p.title = require_string(j, "title");
      p.year = static_cast<int>(require_int(j, "year"));
      p.author_ids = require_string_array(j, "author_ids");
      p.collaboration_size = require_int(j, "collaboration_size");
      p.roster_complete = require_bool(j, "roster_complete");
      p.citation_count = require_int(j, "citation_count");
      p.subfield_codes = require_string_array(j, "subfield_codes");
      out.papers.emplace_back(std::move(p), ref);
    } else if (kind == "author") {
      check_keys(j, {"kind", "author_id", "name", "first_publication_year"});
      AuthorProfile a;
      a.author_id = require_string(j, "author_id");
      a.name = require_string(j, "name");
      a.first_publication_year = static_cast<int>(require_int(j, "first_publication_year"));
      out.authors.emplace_back(std::move(a), ref);
    } else {
      throw std::runtime_error("kind must be \"paper\" or \"author\"");
    }
  } catch (const json::exception& e) {
    add_parse_diag(out, ref, e.what());
  } catch (const std::runtime_error& e) {
    add_parse_diag(out, ref, e.what());
  }
}

void parse_text(const std::string& text, const std::string& origin, ParsedFiles& out) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;  // blank lines are permitted between records
    parse_line(line, {origin, line_no}, out);
  }
}

void validate_paper_fields(const PaperRecord& p, const SourceRef& ref, ParsedFiles& out) {
  auto bad = [&](const std::string& msg) {
    add_validation_diag(out, Diagnostic::Rule::field_invariant, ref, p.paper_id, msg);
  };
  if (!valid_identifier(p.paper_id)) bad("paper_id must match [A-Za-z0-9_-]+");
  if (p.citation_count < 0) bad("citation_count must be nonnegative");
  if (p.year < kMinYear || p.year > kMaxYear) {
    bad("year must lie in [" + std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) + "]");
  }
  if (p.author_ids.empty()) bad("author_ids must be nonempty");
  for (const auto& a : p.author_ids) {
    if (!valid_identifier(a)) bad("author id '" + a + "' must match [A-Za-z0-9_-]+");
  }
  if (p.collaboration_size < 1) bad("collaboration_size must be positive");
  auto roster = static_cast<std::int64_t>(p.author_ids.size());
  if (p.roster_complete && p.collaboration_size != roster) {
    bad("roster_complete requires collaboration_size == number of listed authors");
  }
  if (!p.roster_complete && p.collaboration_size < roster) {
    bad("collaboration_size must be >= number of listed authors");
  }
  if (p.subfield_codes.size() > kMaxSubfields) bad("at most 10 subfield codes per paper");
  for (const auto& c : p.subfield_codes) {
    if (!valid_identifier(c)) bad("subfield code '" + c + "' must match [A-Za-z0-9_-]+");
  }
}

void validate_author_fields(const AuthorProfile& a, const SourceRef& ref, ParsedFiles& out) {
  auto bad = [&](const std::string& msg) {
    add_validation_diag(out, Diagnostic::Rule::field_invariant, ref, a.author_id, msg);
  };
  if (!valid_identifier(a.author_id)) bad("author_id must match [A-Za-z0-9_-]+");
  if (a.first_publication_year < kMinYear || a.first_publication_year > kMaxYear) {
    bad("first_publication_year must lie in [" + std::to_string(kMinYear) + ", " +
        std::to_string(kMaxYear) + "]");
  }
}

// Cross-record checks: duplicate ids, dangling author references, and the
// first-publication-year anchor.
void validate_cross(ParsedFiles& parsed) {
  std::unordered_map<std::string, const SourceRef*> paper_ids;
  for (const auto& [p, ref] : parsed.papers) {
    auto [it, inserted] = paper_ids.emplace(p.paper_id, &ref);
    (void)it;
    if (!inserted) {
      add_validation_diag(parsed, Diagnostic::Rule::duplicate_paper_id, ref, p.paper_id,
                          "duplicate paper_id");
    }
  }
  std::unordered_map<std::string, const AuthorProfile*> author_by_id;
  for (const auto& [a, ref] : parsed.authors) {
    auto [it, inserted] = author_by_id.emplace(a.author_id, &a);
    (void)it;
    if (!inserted) {
      add_validation_diag(parsed, Diagnostic::Rule::duplicate_author_id, ref, a.author_id,
                          "duplicate author_id");
    }
  }
  for (const auto& [p, ref] : parsed.papers) {
    std::unordered_set<std::string> seen;
    for (const auto& author_id : p.author_ids) {
      if (!seen.insert(author_id).second) {
        add_validation_diag(parsed, Diagnostic::Rule::field_invariant, ref, p.paper_id,
                            "author '" + author_id + "' listed twice");
        continue;
      }
      auto it = author_by_id.find(author_id);
      if (it == author_by_id.end()) {
        add_validation_diag(parsed, Diagnostic::Rule::dangling_author, ref, p.paper_id,
                            "references unknown author '" + author_id + "'");
      } else if (it->second->first_publication_year > p.year) {
        add_validation_diag(parsed, Diagnostic::Rule::first_publication_year, ref, p.paper_id,
                            "author '" + author_id + "' has first_publication_year " +
                                std::to_string(it->second->first_publication_year) +
                                " after paper year " + std::to_string(p.year));
      }
    }
  }
}

ParsedFiles parse_files(const std::vector<std::filesystem::path>& paths) {
  ParsedFiles parsed;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) {
      add_parse_diag(parsed, {path.string(), 0}, "cannot open file");
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    parse_text(buf.str(), path.string(), parsed);
  }
  validate_cross(parsed);
  return parsed;
}

[[noreturn]] void throw_first(const Diagnostic& d) {
  switch (d.rule) {
    case Diagnostic::Rule::malformed_line:
      throw ParseError(d.file, d.line, d.message);
    case Diagnostic::Rule::dangling_author: {
      // message carries the id in quotes; extract it back out
      auto from = d.message.find('\'');
      auto to = d.message.rfind('\'');
      std::string author_id = (from != std::string::npos && to > from)
                                  ? d.message.substr(from + 1, to - from - 1)
                                  : d.message;
      throw DanglingAuthor(author_id, d.record_id);
    }
    default:
      throw ValidationError(d.record_id, d.message);
  }
}

Corpus build_from_parsed(ParsedFiles parsed, int as_of_year) {
  if (!parsed.diagnostics.empty()) throw_first(parsed.diagnostics.front());
  std::vector<PaperRecord> papers;
  papers.reserve(parsed.papers.size());
  for (auto& [p, ref] : parsed.papers) {
    (void)ref;
    papers.push_back(std::move(p));
  }
  std::vector<AuthorProfile> authors;
  authors.reserve(parsed.authors.size());
  for (auto& [a, ref] : parsed.authors) {
    (void)ref;
    authors.push_back(std::move(a));
  }
  return Corpus::from_records(std::move(papers), std::move(authors), as_of_year);
}

ordered_json paper_to_json(const PaperRecord& p) {
  ordered_json j;
  j["kind"] = "paper";
  j["paper_id"] = p.paper_id;
  j["title"] = p.title;
  j["year"] = p.year;
  j["author_ids"] = p.author_ids;
  j["collaboration_size"] = p.collaboration_size;
  j["roster_complete"] = p.roster_complete;
  j["citation_count"] = p.citation_count;
  j["subfield_codes"] = p.subfield_codes;
  return j;
}

ordered_json author_to_json(const AuthorProfile& a) {
  ordered_json j;
  j["kind"] = "author";
  j["author_id"] = a.author_id;
  j["name"] = a.name;
  j["first_publication_year"] = a.first_publication_year;
  return j;
}

}  // namespace

std::string Diagnostic::format() const {
  std::string cls_name = cls == Class::parse ? "parse" : "validation";
  std::string where = file + ":" + std::to_string(line);
  std::string id = record_id.empty() ? "" : " [" + record_id + "]";
  return where + ": " + cls_name + id + ": " + message;
}

Corpus Corpus::from_records(std::vector<PaperRecord> papers, std::vector<AuthorProfile> authors,
                            int as_of_year) {
  // Re-run the full rule set so directly constructed record vectors get the
  // same checks as file loads.
  ParsedFiles parsed;
  for (auto& p : papers) parsed.papers.emplace_back(std::move(p), SourceRef{"<records>", 0});
  for (auto& a : authors) parsed.authors.emplace_back(std::move(a), SourceRef{"<records>", 0});
  for (const auto& [p, ref] : parsed.papers) validate_paper_fields(p, ref, parsed);
  for (const auto& [a, ref] : parsed.authors) validate_author_fields(a, ref, parsed);
  validate_cross(parsed);
  if (!parsed.diagnostics.empty()) throw_first(parsed.diagnostics.front());

  Corpus c;
  c.as_of_year_ = as_of_year;
  for (auto& [p, ref] : parsed.papers) {
    (void)ref;
    c.papers_.push_back(std::move(p));
  }
  for (auto& [a, ref] : parsed.authors) {
    (void)ref;
    c.authors_.push_back(std::move(a));
  }
  std::sort(c.papers_.begin(), c.papers_.end(),
            [](const auto& x, const auto& y) { return x.paper_id < y.paper_id; });
  std::sort(c.authors_.begin(), c.authors_.end(),
            [](const auto& x, const auto& y) { return x.author_id < y.author_id; });

  std::vector<const PaperRecord*> by_date(c.papers_.size());
  for (std::size_t i = 0; i < c.papers_.size(); ++i) by_date[i] = &c.papers_[i];
  std::sort(by_date.begin(), by_date.end(), [](const PaperRecord* x, const PaperRecord* y) {
    return std::tie(x->year, x->paper_id) < std::tie(y->year, y->paper_id);
  });
  for (const PaperRecord* p : by_date) {
    for (const auto& a : p->author_ids) c.by_author_[a].push_back(p->paper_id);
    for (const auto& s : p->subfield_codes) c.by_subfield_[s].push_back(p->paper_id);
  }
  c.check_integrity();
  return c;
}

const AuthorProfile* Corpus::find_author(const std::string& author_id) const {
  auto it = std::lower_bound(authors_.begin(), authors_.end(), author_id,
                             [](const AuthorProfile& a, const std::string& id) {
                               return a.author_id < id;
                             });
  if (it == authors_.end() || it->author_id != author_id) return nullptr;
  return &*it;
}

const PaperRecord* Corpus::find_paper(const std::string& paper_id) const {
  auto it = std::lower_bound(papers_.begin(), papers_.end(), paper_id,
                             [](const PaperRecord& p, const std::string& id) {
                               return p.paper_id < id;
                             });
  if (it == papers_.end() || it->paper_id != paper_id) return nullptr;
  return &*it;
}

const std::vector<std::string>& Corpus::papers_by_author(const std::string& author_id) const {
  static const std::vector<std::string> empty;
  auto it = by_author_.find(author_id);
  return it == by_author_.end() ? empty : it->second;
}

const std::vector<std::string>& Corpus::papers_by_subfield(const std::string& code) const {
  static const std::vector<std::string> empty;
  auto it = by_subfield_.find(code);
  return it == by_subfield_.end() ? empty : it->second;
}

std::vector<std::string> Corpus::subfield_codes() const {
  std::vector<std::string> codes;
  codes.reserve(by_subfield_.size());
  for (const auto& [code, ids] : by_subfield_) {
    (void)ids;
    codes.push_back(code);
  }
  return codes;
}

int Corpus::academic_age(const std::string& author_id) const {
  const AuthorProfile* a = find_author(author_id);
  if (a == nullptr) throw UnknownAuthor(author_id);
  return std::max(1, as_of_year_ - a->first_publication_year + 1);
}

void Corpus::check_integrity() const {
  std::map<std::string, std::vector<std::string>> by_author;
  std::map<std::string, std::vector<std::string>> by_subfield;
  std::vector<const PaperRecord*> by_date(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) by_date[i] = &papers_[i];
  std::sort(by_date.begin(), by_date.end(), [](const PaperRecord* x, const PaperRecord* y) {
    return std::tie(x->year, x->paper_id) < std::tie(y->year, y->paper_id);
  });
  for (const PaperRecord* p : by_date) {
    for (const auto& a : p->author_ids) {
      if (find_author(a) == nullptr) throw DanglingAuthor(a, p->paper_id);
      by_author[a].push_back(p->paper_id);
    }
    for (const auto& s : p->subfield_codes) by_subfield[s].push_back(p->paper_id);
  }
  if (by_author != by_author_ || by_subfield != by_subfield_) {
    throw ValidationError("<corpus>", "index rebuild mismatch");
  }
}

Corpus load_corpus(const std::vector<std::filesystem::path>& paths, int as_of_year) {
  return build_from_parsed(parse_files(paths), as_of_year);
}

std::vector<Diagnostic> validate_files(const std::vector<std::filesystem::path>& paths) {
  ParsedFiles parsed = parse_files(paths);
  for (const auto& [p, ref] : parsed.papers) validate_paper_fields(p, ref, parsed);
  for (const auto& [a, ref] : parsed.authors) validate_author_fields(a, ref, parsed);
  return std::move(parsed.diagnostics);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& a : corpus.authors()) out += author_to_json(a).dump() + "\n";
  for (const auto& p : corpus.papers()) out += paper_to_json(p).dump() + "\n";
  return out;
}

Corpus parse_corpus_text(const std::string& text, int as_of_year, const std::string& origin) {
  ParsedFiles parsed;
  parse_text(text, origin, parsed);
  validate_cross(parsed);
  return build_from_parsed(std::move(parsed), as_of_year);
}

std::vector<PaperRecord> papers_of(const Corpus& corpus, const std::string& author_id,
                                   YearRange window) {
  if (corpus.find_author(author_id) == nullptr) throw UnknownAuthor(author_id);
  std::vector<PaperRecord> out;
  for (const auto& paper_id : corpus.papers_by_author(author_id)) {
    const PaperRecord* p = corpus.find_paper(paper_id);
    if (p != nullptr && window.contains(p->year)) out.push_back(*p);
  }
  return out;
}

std::optional<int> max_paper_year(const std::vector<PaperRecord>& papers) {
  std::optional<int> best;
  for (const auto& p : papers) {
    if (!best || p.year > *best) best = p.year;
  }
  return best;
}

}  // namespace calib

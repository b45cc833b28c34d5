#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calibmetrics/calibration.hpp"
#include "calibmetrics/corpus.hpp"
#include "calibmetrics/metrics.hpp"
#include "calibmetrics/report.hpp"
#include "calibmetrics/scale.hpp"
#include "calibmetrics/synth.hpp"

namespace {

// Failure classes, fixed so shell pipelines can branch on them.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUnknownAuthor = 3;
constexpr int kExitEmptySubfield = 4;
constexpr int kExitOther = 5;

struct FileConfig {
  std::optional<std::int64_t> n;
  std::optional<std::string> mode;
  std::optional<bool> strict_not_applicable;
  std::optional<std::string> format;
};

FileConfig read_config(const std::optional<std::string>& config_flag) {
  std::optional<std::string> path = config_flag;
  if (!path) {
    if (const char* env = std::getenv("CALIBMETRICS_CONFIG"); env != nullptr && *env != '\0') {
      path = std::string(env);
    }
  }
  FileConfig cfg;
  if (!path) return cfg;
  std::ifstream in(*path);
  if (!in) throw calib::Error("cannot open config file: " + *path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw calib::Error("config file " + *path + ": " + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "n") {
      cfg.n = value.get<std::int64_t>();
    } else if (key == "mode") {
      cfg.mode = value.get<std::string>();
    } else if (key == "strict_not_applicable") {
      cfg.strict_not_applicable = value.get<bool>();
    } else if (key == "format") {
      cfg.format = value.get<std::string>();
    } else {
      throw calib::Error("config file " + *path + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& files) {
  return {files.begin(), files.end()};
}

// Loads the corpus, defaulting as_of_year to the largest paper year on file.
calib::Corpus load(const std::vector<std::string>& files, std::optional<int> as_of) {
  if (as_of) return calib::load_corpus(to_paths(files), *as_of);
  calib::Corpus probe = calib::load_corpus(to_paths(files), 0);
  int year = calib::max_paper_year(probe.papers()).value_or(1900);
  return calib::Corpus::from_records(probe.papers(), probe.authors(), year);
}

calib::YearRange resolve_window(const calib::Corpus& corpus, std::optional<int> from,
                                std::optional<int> to) {
  int end = to.value_or(corpus.as_of_year());
  int start = end;
  if (from) {
    start = *from;
  } else if (!corpus.papers().empty()) {
    start = corpus.papers().front().year;
    for (const auto& p : corpus.papers()) start = std::min(start, p.year);
  }
  return {start, end};
}

int run_validate(const std::vector<std::string>& files) {
  std::vector<calib::Diagnostic> diags = calib::validate_files(to_paths(files));
  std::stable_sort(diags.begin(), diags.end(),
                   [](const calib::Diagnostic& a, const calib::Diagnostic& b) {
                     return std::tie(a.file, a.line) < std::tie(b.file, b.line);
                   });
  bool parse_failed = false;
  bool validation_failed = false;
  for (const auto& d : diags) {
    std::cout << d.format() << "\n";
    if (d.cls == calib::Diagnostic::Class::parse) {
      parse_failed = true;
    } else {
      validation_failed = true;
    }
  }
  if (parse_failed) return kExitParse;
  if (validation_failed) return kExitValidation;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibmetrics: author-output indices with collaboration-size calibration"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  auto add_config_option = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "JSON config file (fallback: CALIBMETRICS_CONFIG env var)");
  };

  std::vector<std::string> files;
  std::optional<int> as_of;
  std::optional<int> from_year;
  std::optional<int> to_year;
  std::optional<std::string> format_flag;

  auto add_corpus_options = [&](CLI::App* cmd, bool with_window) {
    add_config_option(cmd);
    cmd->add_option("files", files, "corpus files (line-delimited JSON records)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--as-of", as_of, "evaluation horizon (default: largest paper year)");
    if (with_window) {
      cmd->add_option("--from", from_year, "window start year (default: earliest paper year)");
      cmd->add_option("--to", to_year, "window end year (default: as-of year)");
    }
  };

  CLI::App* validate = app.add_subcommand("validate", "check corpus files and list violations");
  add_config_option(validate);
  validate->add_option("files", files, "corpus files")->required()->check(CLI::ExistingFile);

  CLI::App* index = app.add_subcommand("index", "compute an author's measures");
  add_corpus_options(index, true);
  std::string author_id;
  index->add_option("--author", author_id, "author id")->required();
  bool calibrate = false;
  index->add_flag("--calibrate", calibrate, "apply the collaboration-size correction");
  std::optional<std::int64_t> n_flag;
  index->add_option("--n", n_flag, "interdependent team size n (default 10)");
  std::optional<std::string> mode_flag;
  index->add_option("--mode", mode_flag, "calibration mode: aggregate|fractional");
  bool strict_flag = false;
  index->add_flag("--strict", strict_flag, "raise instead of clamping when N < n");
  std::optional<std::string> scale_subfield;
  index->add_option("--scale", scale_subfield, "add the centennial bin for this subfield code");
  std::string scale_on = "raw";
  index->add_option("--scale-on", scale_on, "bin raw or calibrated values")
      ->check(CLI::IsMember({"raw", "calibrated"}));
  index->add_option("--format", format_flag, "output format: csv|json");

  CLI::App* evolution =
      app.add_subcommand("annual-evolution", "per-year paper counts for an author or group");
  add_corpus_options(evolution, true);
  std::string group;
  evolution->add_option("--group", group, "author id or collaboration label (paper-id prefix)")
      ->required();
  evolution->add_option("--format", format_flag, "output format: csv|json");

  CLI::App* scale_table_cmd =
      app.add_subcommand("scale-table", "build a per-subfield min/max table");
  add_corpus_options(scale_table_cmd, true);
  std::string subfield_code;
  scale_table_cmd->add_option("--subfield", subfield_code, "subfield code")->required();
  std::string kind_name = "total_papers";
  scale_table_cmd->add_option("--kind", kind_name, "measure kind (default total_papers)");

  CLI::App* synth = app.add_subcommand("synth", "write a synthetic corpus");
  add_config_option(synth);
  std::optional<std::string> spec_path;
  synth->add_option("--spec", spec_path, "scenario spec JSON file")->check(CLI::ExistingFile);
  bool three_scientists = false;
  synth->add_flag("--three-scientists", three_scientists, "emit the built-in three-scientist corpus");
  std::optional<std::string> out_path;
  synth->add_option("--out", out_path, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    FileConfig cfg = read_config(config_path);
    std::string format = format_flag.value_or(cfg.format.value_or("csv"));
    if (format != "csv" && format != "json") {
      throw calib::Error("format must be csv or json, got '" + format + "'");
    }

    if (validate->parsed()) return run_validate(files);

    if (index->parsed()) {
      calib::Corpus corpus = load(files, as_of);
      calib::YearRange window = resolve_window(corpus, from_year, to_year);
      calib::ReportOptions options;
      options.calibrate = calibrate;
      options.config.n = n_flag.value_or(cfg.n.value_or(10));
      options.config.mode = calib::calibration_mode_from_name(
          mode_flag.value_or(cfg.mode.value_or("aggregate")));
      options.config.strict_not_applicable =
          strict_flag || cfg.strict_not_applicable.value_or(false);
      options.scale_subfield = scale_subfield;
      options.scale_on =
          scale_on == "calibrated" ? calib::ScaleInput::calibrated : calib::ScaleInput::raw;
      if (options.scale_on == calib::ScaleInput::calibrated && !options.calibrate) {
        throw calib::Error("--scale-on calibrated requires --calibrate");
      }
      auto rows = calib::index_report(corpus, author_id, window, options);
      std::cout << (format == "csv" ? calib::render_report_csv(rows)
                                    : calib::render_report_json(rows));
      return kExitOk;
    }

    if (evolution->parsed()) {
      calib::Corpus corpus = load(files, as_of);
      calib::YearRange window = resolve_window(corpus, from_year, to_year);
      auto rows = calib::annual_evolution(corpus, group, window);
      std::cout << (format == "csv" ? calib::render_evolution_csv(rows)
                                    : calib::render_evolution_json(rows));
      return kExitOk;
    }

    if (scale_table_cmd->parsed()) {
      calib::Corpus corpus = load(files, as_of);
      calib::YearRange window = resolve_window(corpus, from_year, to_year);
      calib::ScaleTable table = calib::build_scale_table(
          corpus, subfield_code, calib::measure_kind_from_name(kind_name), window);
      std::cout << calib::scale_table_to_json(table) << "\n";
      return kExitOk;
    }

    if (synth->parsed()) {
      if (three_scientists == spec_path.has_value()) {
        throw calib::Error("synth needs exactly one of --spec or --three-scientists");
      }
      auto make_corpus = [&]() -> calib::Corpus {
        if (three_scientists) return calib::three_scientists_fixture();
        std::ifstream in(*spec_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return calib::generate(calib::scenario_from_json_text(buf.str()));
      };
      std::string text = calib::serialize_corpus(make_corpus());
      if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw calib::Error("cannot open output file: " + *out_path);
        out << text;
      } else {
        std::cout << text;
      }
      return kExitOk;
    }
  } catch (const calib::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const calib::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const calib::UnknownAuthor& e) {
    std::cerr << e.what() << "\n";
    return kExitUnknownAuthor;
  } catch (const calib::UnknownGroup& e) {
    std::cerr << e.what() << "\n";
    return kExitUnknownAuthor;
  } catch (const calib::EmptySubfield& e) {
    std::cerr << e.what() << "\n";
    return kExitEmptySubfield;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitOther;
  }
  return kExitOk;
}

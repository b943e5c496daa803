// termkit: terminology toolkit for machine translation pipelines.
//
// Subcommands cover the full flow: filter a raw term collection, build IDF
// statistics, train a lexical translation model, select one equivalent per
// term, recognize terms in text, annotate text for factored MT input, and
// evaluate hypotheses with terminology-aware metrics.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "termkit/aligner.hpp"
#include "termkit/annotator.hpp"
#include "termkit/errors.hpp"
#include "termkit/evalsuite.hpp"
#include "termkit/filters.hpp"
#include "termkit/recognizer.hpp"
#include "termkit/termbank.hpp"
#include "termkit/version.hpp"

namespace {

using namespace termkit;

std::ifstream open_input(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw ConfigError("cannot open input file: " + path);
  return input;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) throw ConfigError("cannot open output file: " + path);
  return output;
}

// "-" or empty selects the standard stream.
struct InputTarget {
  std::ifstream file;
  std::istream* stream = nullptr;
};

InputTarget make_input(const std::string& path) {
  InputTarget target;
  if (path.empty() || path == "-") {
    target.stream = &std::cin;
  } else {
    target.file = open_input(path);
    target.stream = &target.file;
  }
  return target;
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = nullptr;
};

OutputTarget make_output(const std::string& path) {
  OutputTarget target;
  if (path.empty() || path == "-") {
    target.stream = &std::cout;
  } else {
    target.file = open_output(path);
    target.stream = &target.file;
  }
  return target;
}

std::string format_number(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) pieces.emplace_back(text.substr(start, i - start));
  }
  return pieces;
}

std::string join(std::span<const std::string> tokens, char sep = ' ') {
  std::string out;
  for (const std::string& token : tokens) {
    if (!out.empty()) out += sep;
    out += token;
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> columns;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      columns.push_back(line.substr(start));
      break;
    }
    columns.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return columns;
}

// Calls fn(line, line_no) per line, attaching line numbers to parse
// errors that lack one (UTF-8 decoding reports byte offsets only).
template <typename Fn>
void for_each_line(std::istream& input, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      fn(line, line_no);
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    }
  }
}

void echo_config(const CLI::App& app, std::ostream& output,
                 bool with_metric_stamp = false) {
  output << "# termkit " << kVersion << '\n';
  if (with_metric_stamp) output << "# " << kMetricStamp << '\n';
  std::istringstream config(app.config_to_str(false, false));
  std::string line;
  while (std::getline(config, line))
    if (!line.empty()) output << "# " << line << '\n';
}

StemmerRuleSet load_stemmer_or_identity(const std::string& path) {
  return path.empty() ? StemmerRuleSet::identity()
                      : StemmerRuleSet::load_file(path);
}

std::size_t parse_index(const std::string& text, std::size_t line_no,
                        const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string("malformed ") + what + ": " + text, line_no);
  return value;
}

// Streams parallel sentences from two line-aligned files or one
// two-column TSV, without tokenizing.
class RawPairReader {
 public:
  RawPairReader(const std::string& source_path, const std::string& target_path)
      : tsv_(target_path.empty()) {
    source_ = open_input(source_path);
    if (!tsv_) target_ = open_input(target_path);
  }

  bool next(std::string& source, std::string& target) {
    std::string line;
    if (!std::getline(source_, line)) {
      if (!tsv_) {
        std::string leftover;
        if (std::getline(target_, leftover))
          throw ParseError("target file is longer than source file",
                           line_no_ + 1);
      }
      return false;
    }
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (tsv_) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos ||
          line.find('\t', tab + 1) != std::string::npos)
        throw ParseError("expected two tab-separated columns", line_no_);
      source = line.substr(0, tab);
      target = line.substr(tab + 1);
    } else {
      source = std::move(line);
      if (!std::getline(target_, target))
        throw ParseError("source file is longer than target file", line_no_);
      if (!target.empty() && target.back() == '\r') target.pop_back();
    }
    return true;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::ifstream source_;
  std::ifstream target_;
  bool tsv_ = false;
  std::size_t line_no_ = 0;
};

ParallelCorpus load_corpus(const std::string& source_path,
                           const std::string& target_path) {
  FilePairSource reader(source_path, target_path);
  ParallelCorpus corpus;
  while (auto pair = reader.next()) corpus.pairs.push_back(std::move(*pair));
  return corpus;
}

void require_corpus_flags(const std::string& tsv, const std::string& source,
                          const std::string& target, const char* prefix) {
  const bool two_file = !source.empty() || !target.empty();
  if (tsv.empty() && !two_file)
    throw ConfigError(std::string("no corpus given: pass --") + prefix +
                      "-tsv or --" + prefix + "-source/--" + prefix +
                      "-target");
  if (!tsv.empty() && two_file)
    throw ConfigError(std::string("--") + prefix +
                      "-tsv excludes the two-file corpus flags");
  if (two_file && (source.empty() || target.empty()))
    throw ConfigError(std::string("--") + prefix + "-source and --" + prefix +
                      "-target must be given together");
}

// ---------------------------------------------------------------- filter

struct FilterArgs {
  std::string terms;
  std::string output;
  std::string report;
  std::string source_lang = "src";
  std::string target_lang = "tgt";
  bool no_symbol = false;
  bool no_containment = false;
  double idf_threshold = -1.0;  // < 0 means off
  std::string idf_table;
  std::string stemmer;
};

void run_filter(const FilterArgs& args, const CLI::App& app) {
  const TermCollection collection = parse_term_collection_file(
      args.terms, args.source_lang, args.target_lang);

  FilterConfig config;
  config.symbol = !args.no_symbol;
  config.containment = !args.no_containment;
  IdfTable table;
  StemmerRuleSet stemmer = StemmerRuleSet::identity();
  if (args.idf_threshold >= 0.0) {
    if (args.idf_table.empty())
      throw ConfigError("--idf-threshold needs --idf-table");
    table = IdfTable::load_file(args.idf_table);
    stemmer = load_stemmer_or_identity(args.stemmer);
    config.idf_threshold = args.idf_threshold;
    config.idf_table = &table;
    config.stemmer = &stemmer;
  }

  const auto [kept, report] = run_filter_pipeline(collection, config);

  OutputTarget out = make_output(args.output);
  write_term_collection(kept, *out.stream);
  if (!args.report.empty()) {
    std::ofstream report_out = open_output(args.report);
    echo_config(app, report_out);
    report.write(report_out);
  }
}

// ------------------------------------------------------------------- idf

struct IdfArgs {
  std::string corpus;
  std::string stemmer;
  std::string output;
};

void run_idf(const IdfArgs& args) {
  const StemmerRuleSet stemmer = load_stemmer_or_identity(args.stemmer);
  InputTarget in = make_input(args.corpus);
  const IdfTable table = build_idf_from_lines(*in.stream, stemmer);
  OutputTarget out = make_output(args.output);
  table.save(*out.stream);
}

// ----------------------------------------------------------- align-train

struct AlignTrainArgs {
  std::string source;
  std::string target;
  std::string tsv;
  std::string output;
  int iterations = 5;
  double prune = 1e-6;
};

void run_align_train(const AlignTrainArgs& args) {
  require_corpus_flags(args.tsv, args.source, args.target, "train");
  FilePairSource corpus(args.tsv.empty() ? args.source : args.tsv,
                        args.tsv.empty() ? args.target : std::string());
  const LexiconModel model = train_lexicon(corpus, args.iterations);
  OutputTarget out = make_output(args.output);
  model.save(*out.stream, args.prune);
}

// ---------------------------------------------------------------- select

struct SelectArgs {
  std::string terms;
  std::string strategy = "first";
  std::string model;
  std::string output;
  std::string report;
  double floor = 1e-9;
};

void run_select(const SelectArgs& args) {
  if (args.strategy != "first" && args.strategy != "alignment")
    throw ConfigError("--strategy must be 'first' or 'alignment'");
  const bool by_alignment = args.strategy == "alignment";
  if (by_alignment && args.model.empty())
    throw ConfigError("--strategy alignment needs --model");

  const TermCollection collection =
      parse_term_collection_file(args.terms, "src", "tgt");
  LexiconModel model;
  if (by_alignment) model = LexiconModel::load_file(args.model);

  ScoreOptions score_options;
  score_options.floor = args.floor;

  TermCollection selected;
  selected.source_lang = collection.source_lang;
  selected.target_lang = collection.target_lang;
  std::vector<SelectionResult> results;
  results.reserve(collection.entries.size());
  for (const TermEntry& entry : collection.entries) {
    const SelectionResult result =
        by_alignment ? select_by_alignment(entry, model, score_options)
                     : select_first(entry);
    TermEntry out_entry;
    out_entry.id = entry.id;
    out_entry.source_surface = entry.source_surface;
    out_entry.equivalents = {
        {entry.equivalents[result.chosen_rank].surface, 0}};
    selected.entries.push_back(std::move(out_entry));
    results.push_back(result);
  }

  OutputTarget out = make_output(args.output);
  write_term_collection(selected, *out.stream);

  if (!args.report.empty()) {
    std::ofstream report_out = open_output(args.report);
    for (const SelectionResult& result : results) {
      report_out << result.entry_id << '\t' << result.chosen_rank << '\t';
      std::string scores;
      for (const double score : result.scores) {
        if (!scores.empty()) scores += ' ';
        scores += format_number(score);
      }
      report_out << scores << '\n';
    }
  }
}

// ----------------------------------------------- recognize and annotate

TermIndex make_index(const TermCollection& collection,
                     const StemmerRuleSet& stemmer) {
  std::vector<SelectionResult> selections;
  selections.reserve(collection.entries.size());
  for (const TermEntry& entry : collection.entries)
    selections.push_back(select_first(entry));
  TermIndex index = build_index(collection, selections, stemmer);
  for (const auto& warning : index.warnings())
    std::cerr << "warning: stem key '" << warning.key << "' of entry "
              << warning.dropped_entry_id << " already mapped to entry "
              << warning.kept_entry_id << "; first entry wins\n";
  return index;
}

struct RecognizeArgs {
  std::string terms;
  std::string stemmer;
  std::string input;
  std::string output;
};

void run_recognize(const RecognizeArgs& args) {
  const TermCollection collection =
      parse_term_collection_file(args.terms, "src", "tgt");
  const StemmerRuleSet stemmer = load_stemmer_or_identity(args.stemmer);
  const TermIndex index = make_index(collection, stemmer);

  InputTarget in = make_input(args.input);
  OutputTarget out = make_output(args.output);
  for_each_line(*in.stream, [&](const std::string& line, std::size_t line_no) {
    const std::vector<std::string> tokens = tokenize_text(line);
    for (const TermMatch& match : recognize(tokens, index, stemmer))
      *out.stream << line_no - 1 << '\t' << match.begin << '\t' << match.end
                  << '\t' << match.entry_id << '\t' << match.selected_target
                  << '\n';
  });
}

struct AnnotateArgs {
  std::string terms;
  std::string stemmer;
  std::string input;
  std::string output;
  std::size_t max_len = 196;
};

// '|' delimits factors in annotated output, so it cannot appear in tokens
// headed into annotation; flag it as an input error, not a broken invariant.
void reject_factor_separator(const std::vector<std::string>& tokens,
                             std::size_t line_no) {
  for (const std::string& token : tokens)
    if (token.find('|') != std::string::npos)
      throw ParseError("input token contains the factor separator: " + token,
                       line_no);
}

void run_annotate(const AnnotateArgs& args) {
  const TermCollection collection =
      parse_term_collection_file(args.terms, "src", "tgt");
  const StemmerRuleSet stemmer = load_stemmer_or_identity(args.stemmer);
  const TermIndex index = make_index(collection, stemmer);
  AnnotateOptions options;
  options.max_len = args.max_len;

  InputTarget in = make_input(args.input);
  OutputTarget out = make_output(args.output);
  for_each_line(*in.stream, [&](const std::string& line, std::size_t line_no) {
    const std::vector<std::string> tokens = tokenize_text(line);
    reject_factor_separator(tokens, line_no);
    const std::vector<TermMatch> matches = recognize(tokens, index, stemmer);
    *out.stream << render_factored(annotate_inference(tokens, matches,
                                                      options))
                << '\n';
  });
}

// ---------------------------------------------------------- annotate-train

struct AnnotateTrainArgs {
  std::string source;
  std::string target;
  std::string tsv;
  std::string model;
  std::string lemmas;
  std::string output;
  double rate = 0.1;
  double floor = 0.5;
  std::uint64_t seed = 0;
};

LemmaTable load_lemma_table(const std::string& path) {
  LemmaTable lemmas;
  if (path.empty()) return lemmas;
  std::ifstream input = open_input(path);
  for_each_line(input, [&](const std::string& line, std::size_t line_no) {
    if (line.empty()) return;
    const auto columns = split_tabs(line);
    if (columns.size() != 2 || columns[0].empty())
      throw ParseError("expected token<TAB>lemma", line_no);
    lemmas.emplace(columns[0], columns[1]);
  });
  return lemmas;
}

void run_annotate_train(const AnnotateTrainArgs& args) {
  require_corpus_flags(args.tsv, args.source, args.target, "train");
  const LexiconModel model = LexiconModel::load_file(args.model);
  const LemmaTable lemmas = load_lemma_table(args.lemmas);
  TrainingAnnotateOptions options;
  options.rate = args.rate;
  options.confidence_floor = args.floor;
  options.seed = args.seed;

  RawPairReader reader(args.tsv.empty() ? args.source : args.tsv,
                       args.tsv.empty() ? args.target : std::string());
  OutputTarget out = make_output(args.output);
  std::string source_line;
  std::string target_line;
  std::size_t sentence_index = 0;
  while (reader.next(source_line, target_line)) {
    SentencePair pair;
    try {
      pair.source = tokenize_text(source_line);
      pair.target = tokenize_text(target_line);
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), reader.line_no());
    }
    reject_factor_separator(pair.source, reader.line_no());
    reject_factor_separator(pair.target, reader.line_no());
    const AnnotatedSentence annotated =
        annotate_training(pair, model, lemmas, options, sentence_index);
    *out.stream << render_factored(annotated) << '\t' << join(pair.target)
                << '\n';
    ++sentence_index;
  }
}

// -------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string source;
  std::string hypothesis;
  std::string reference;
  std::string sidecar;
  std::string stemmer;
  std::string output;
  double term_weight = kDefaultTermWeight;
};

std::vector<std::vector<std::string>> read_tokenized(const std::string& path) {
  std::ifstream input = open_input(path);
  std::vector<std::vector<std::string>> lines;
  for_each_line(input, [&](const std::string& line, std::size_t) {
    lines.push_back(split_whitespace(line));
  });
  return lines;
}

void run_evaluate(const EvaluateArgs& args, const CLI::App& app) {
  const auto sources = read_tokenized(args.source);
  const auto hypotheses = read_tokenized(args.hypothesis);
  const auto references = read_tokenized(args.reference);
  if (sources.size() != hypotheses.size() ||
      sources.size() != references.size())
    throw ParseError("source/hypothesis/reference line counts differ (" +
                     std::to_string(sources.size()) + "/" +
                     std::to_string(hypotheses.size()) + "/" +
                     std::to_string(references.size()) + ")");

  std::vector<EvalInstance> instances(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    instances[i].source = sources[i];
    instances[i].hypothesis = hypotheses[i];
    instances[i].reference = references[i];
  }

  std::ifstream sidecar = open_input(args.sidecar);
  for_each_line(sidecar, [&](const std::string& line, std::size_t line_no) {
    if (line.empty() || line[0] == '#') return;
    const auto columns = split_tabs(line);
    if (columns.size() != 4)
      throw ParseError("expected sentence_id<TAB>start<TAB>end<TAB>variants",
                       line_no);
    TermAnnotation term;
    const std::size_t sentence_id =
        parse_index(columns[0], line_no, "sentence id");
    term.begin = parse_index(columns[1], line_no, "span start");
    term.end = parse_index(columns[2], line_no, "span end");
    if (sentence_id >= instances.size())
      throw ParseError("sentence id out of range: " + columns[0], line_no);
    EvalInstance& instance = instances[sentence_id];
    if (term.begin >= term.end || term.end > instance.source.size())
      throw ParseError("term span outside the source sentence", line_no);
    std::string_view rest = columns[3];
    while (true) {
      const std::size_t sep = rest.find(kEquivalentDelimiter);
      const std::string_view piece =
          sep == std::string_view::npos ? rest : rest.substr(0, sep);
      const std::string variant = std::string(trim(piece));
      if (variant.empty())
        throw ParseError("empty acceptable variant", line_no);
      term.variants.push_back(variant);
      if (sep == std::string_view::npos) break;
      rest = rest.substr(sep + kEquivalentDelimiter.size());
    }
    instance.terms.push_back(std::move(term));
  });

  const StemmerRuleSet stemmer = load_stemmer_or_identity(args.stemmer);
  EvalOptions options;
  options.term_weight = args.term_weight;
  const EvalReport report = evaluate(instances, stemmer, options);

  OutputTarget out = make_output(args.output);
  echo_config(app, *out.stream, /*with_metric_stamp=*/true);
  write_report(report, *out.stream);
}

// -------------------------------------------------------------- coverage

struct CoverageArgs {
  std::string terms;
  std::string train_source;
  std::string train_target;
  std::string train_tsv;
  std::string eval_source;
  std::string eval_target;
  std::string eval_tsv;
  std::string source_stemmer;
  std::string target_stemmer;
  std::string output;
};

void run_coverage(const CoverageArgs& args, const CLI::App& app) {
  require_corpus_flags(args.train_tsv, args.train_source, args.train_target,
                       "train");
  std::vector<BilingualTerm> terms;
  std::ifstream terms_in = open_input(args.terms);
  for_each_line(terms_in, [&](const std::string& line, std::size_t line_no) {
    if (line.empty()) return;
    const auto columns = split_tabs(line);
    if (columns.size() != 2)
      throw ParseError("expected source<TAB>target", line_no);
    const std::string source = std::string(trim(columns[0]));
    const std::string target = std::string(trim(columns[1]));
    if (source.empty() || target.empty())
      throw ParseError("empty term side", line_no);
    if (target.find(kEquivalentDelimiter) != std::string::npos)
      throw ParseError("coverage wants one target per line", line_no);
    terms.push_back({source, target});
  });

  const ParallelCorpus training =
      load_corpus(args.train_tsv.empty() ? args.train_source : args.train_tsv,
                  args.train_tsv.empty() ? args.train_target : std::string());
  std::optional<ParallelCorpus> eval_data;
  const bool has_eval = !args.eval_tsv.empty() || !args.eval_source.empty() ||
                        !args.eval_target.empty();
  if (has_eval) {
    require_corpus_flags(args.eval_tsv, args.eval_source, args.eval_target,
                         "eval");
    eval_data =
        load_corpus(args.eval_tsv.empty() ? args.eval_source : args.eval_tsv,
                    args.eval_tsv.empty() ? args.eval_target : std::string());
  }

  const StemmerRuleSet source_stemmer =
      load_stemmer_or_identity(args.source_stemmer);
  const StemmerRuleSet target_stemmer =
      load_stemmer_or_identity(args.target_stemmer);

  const CoverageReport report =
      coverage(terms, training, eval_data ? &*eval_data : nullptr,
               source_stemmer, target_stemmer);
  OutputTarget out = make_output(args.output);
  echo_config(app, *out.stream);
  write_report(report, *out.stream);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"terminology toolkit for machine translation pipelines"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "INI file with defaults; flags override");
  app.require_subcommand(1);

  FilterArgs filter_args;
  CLI::App* filter = app.add_subcommand(
      "filter", "drop noisy term entries (symbol/containment/IDF filters)");
  filter->add_option("--terms", filter_args.terms, "term collection TSV")
      ->required();
  filter->add_option("--output", filter_args.output,
                     "filtered collection (default stdout)");
  filter->add_option("--report", filter_args.report, "drop report TSV");
  filter->add_option("--source-lang", filter_args.source_lang,
                     "source language code");
  filter->add_option("--target-lang", filter_args.target_lang,
                     "target language code");
  filter->add_flag("--no-symbol", filter_args.no_symbol,
                   "disable the symbol filter");
  filter->add_flag("--no-containment", filter_args.no_containment,
                   "disable the containment filter");
  filter->add_option("--idf-threshold", filter_args.idf_threshold,
                     "drop entries whose min source-token IDF is below this");
  filter->add_option("--idf-table", filter_args.idf_table,
                     "IDF table built by 'termkit idf'");
  filter->add_option("--stemmer", filter_args.stemmer,
                     "stemmer rules for IDF lookups");
  filter->callback([&] { run_filter(filter_args, app); });

  IdfArgs idf_args;
  CLI::App* idf = app.add_subcommand(
      "idf", "build an IDF table from text (one document per line)");
  idf->add_option("--corpus", idf_args.corpus, "text file (default stdin)");
  idf->add_option("--stemmer", idf_args.stemmer, "stemmer rule file");
  idf->add_option("--output", idf_args.output, "IDF table (default stdout)");
  idf->callback([&] { run_idf(idf_args); });

  AlignTrainArgs align_args;
  CLI::App* align = app.add_subcommand(
      "align-train", "train a lexical translation model on parallel text");
  align->add_option("--train-source", align_args.source,
                    "source side, one sentence per line");
  align->add_option("--train-target", align_args.target,
                    "target side, one sentence per line");
  align->add_option("--train-tsv", align_args.tsv,
                    "two-column TSV corpus instead of two files");
  align->add_option("--iterations", align_args.iterations,
                    "EM iterations (default 5)");
  align->add_option("--prune", align_args.prune,
                    "omit probabilities below this when saving");
  align->add_option("--output", align_args.output,
                    "model file (default stdout)");
  align->callback([&] { run_align_train(align_args); });

  SelectArgs select_args;
  CLI::App* select = app.add_subcommand(
      "select", "pick one translation equivalent per term entry");
  select->add_option("--terms", select_args.terms, "term collection TSV")
      ->required();
  select->add_option("--strategy", select_args.strategy,
                     "'first' or 'alignment'");
  select->add_option("--model", select_args.model,
                     "lexicon model (alignment strategy)");
  select->add_option("--floor", select_args.floor,
                     "probability floor for alignment scores");
  select->add_option("--output", select_args.output,
                     "single-equivalent TSV (default stdout)");
  select->add_option("--report", select_args.report,
                     "per-entry rank/score report TSV");
  select->callback([&] { run_select(select_args); });

  RecognizeArgs recognize_args;
  CLI::App* recognize = app.add_subcommand(
      "recognize", "locate collection terms in text via stemmed matching");
  recognize
      ->add_option("--terms", recognize_args.terms,
                   "selected (single-equivalent) term TSV")
      ->required();
  recognize->add_option("--stemmer", recognize_args.stemmer,
                        "stemmer rule file");
  recognize->add_option("--input", recognize_args.input,
                        "text, one sentence per line (default stdin)");
  recognize->add_option("--output", recognize_args.output,
                        "match TSV (default stdout)");
  recognize->callback([&] { run_recognize(recognize_args); });

  AnnotateArgs annotate_args;
  CLI::App* annotate = app.add_subcommand(
      "annotate", "produce factored inference input with target lemmas");
  annotate
      ->add_option("--terms", annotate_args.terms,
                   "selected (single-equivalent) term TSV")
      ->required();
  annotate->add_option("--stemmer", annotate_args.stemmer,
                       "stemmer rule file");
  annotate->add_option("--input", annotate_args.input,
                       "text, one sentence per line (default stdin)");
  annotate->add_option("--output", annotate_args.output,
                       "factored text (default stdout)");
  annotate->add_option("--max-len", annotate_args.max_len,
                       "annotated token budget (default 196)");
  annotate->callback([&] { run_annotate(annotate_args); });

  AnnotateTrainArgs train_args;
  CLI::App* annotate_train = app.add_subcommand(
      "annotate-train", "stochastically annotate parallel training data");
  annotate_train->add_option("--train-source", train_args.source,
                             "source side, one sentence per line");
  annotate_train->add_option("--train-target", train_args.target,
                             "target side, one sentence per line");
  annotate_train->add_option("--train-tsv", train_args.tsv,
                             "two-column TSV corpus instead of two files");
  annotate_train->add_option("--model", train_args.model, "lexicon model")
      ->required();
  annotate_train->add_option("--lemmas", train_args.lemmas,
                             "token<TAB>lemma table (identity fallback)");
  annotate_train->add_option("--rate", train_args.rate,
                             "per-token annotation probability");
  annotate_train->add_option("--floor", train_args.floor,
                             "model confidence floor");
  annotate_train->add_option("--seed", train_args.seed, "RNG seed");
  annotate_train->add_option("--output", train_args.output,
                             "factored_source<TAB>target (default stdout)");
  annotate_train->callback([&] { run_annotate_train(train_args); });

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "terminology-aware evaluation of MT hypotheses");
  evaluate->add_option("--source", eval_args.source, "source text, tokenized")
      ->required();
  evaluate
      ->add_option("--hypothesis", eval_args.hypothesis,
                   "hypothesis text, tokenized")
      ->required();
  evaluate
      ->add_option("--reference", eval_args.reference,
                   "reference text, tokenized")
      ->required();
  evaluate
      ->add_option("--terms-sidecar", eval_args.sidecar,
                   "sentence_id<TAB>start<TAB>end<TAB>variants TSV")
      ->required();
  evaluate->add_option("--stemmer", eval_args.stemmer, "stemmer rule file");
  evaluate->add_option("--term-weight", eval_args.term_weight,
                       "TER weight on term tokens (default 2)");
  evaluate->add_option("--output", eval_args.output,
                       "report (default stdout)");
  evaluate->callback([&] { run_evaluate(eval_args, app); });

  CoverageArgs coverage_args;
  CLI::App* coverage = app.add_subcommand(
      "coverage", "bilingual term coverage of a training corpus");
  coverage
      ->add_option("--terms", coverage_args.terms, "source<TAB>target TSV")
      ->required();
  coverage->add_option("--train-source", coverage_args.train_source,
                       "training source side");
  coverage->add_option("--train-target", coverage_args.train_target,
                       "training target side");
  coverage->add_option("--train-tsv", coverage_args.train_tsv,
                       "two-column TSV training corpus");
  coverage->add_option("--eval-source", coverage_args.eval_source,
                       "evaluation source side (running-count weights)");
  coverage->add_option("--eval-target", coverage_args.eval_target,
                       "evaluation target side");
  coverage->add_option("--eval-tsv", coverage_args.eval_tsv,
                       "two-column TSV evaluation corpus");
  coverage->add_option("--source-stemmer", coverage_args.source_stemmer,
                       "stemmer for the source language");
  coverage->add_option("--target-stemmer", coverage_args.target_stemmer,
                       "stemmer for the target language");
  coverage->add_option("--output", coverage_args.output,
                       "report (default stdout)");
  coverage->callback([&] { run_coverage(coverage_args, app); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;  // bad flags are configuration errors
  } catch (const termkit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}

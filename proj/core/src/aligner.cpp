#include "termkit/aligner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "termkit/errors.hpp"
#include "termkit/recognizer.hpp"

namespace termkit {

namespace {

// Shortest round-trip decimal form.
std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("malformed probability: " + text, line_no);
  return value;
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

}  // namespace

std::optional<SentencePair> MemoryPairSource::next() {
  if (index_ >= corpus_.pairs.size()) return std::nullopt;
  return corpus_.pairs[index_++];
}

struct FilePairSource::Impl {
  std::string source_path;
  std::string target_path;  // empty means two-column TSV in source_path
  std::ifstream source;
  std::ifstream target;
  std::size_t line_no = 0;

  bool tsv() const { return target_path.empty(); }

  void open() {
    source.open(source_path, std::ios::binary);
    if (!source)
      throw ConfigError("cannot open parallel corpus: " + source_path);
    if (!tsv()) {
      target.open(target_path, std::ios::binary);
      if (!target)
        throw ConfigError("cannot open parallel corpus: " + target_path);
    }
  }
};

FilePairSource::FilePairSource(std::string source_path,
                               std::string target_path)
    : impl_(new Impl) {
  impl_->source_path = std::move(source_path);
  impl_->target_path = std::move(target_path);
  impl_->open();
}

FilePairSource::~FilePairSource() { delete impl_; }

void FilePairSource::reset() {
  impl_->source.close();
  impl_->source.clear();
  impl_->target.close();
  impl_->target.clear();
  impl_->line_no = 0;
  impl_->open();
}

std::optional<SentencePair> FilePairSource::next() {
  std::string source_line;
  SentencePair pair;
  if (!std::getline(impl_->source, source_line)) {
    if (!impl_->tsv()) {
      std::string leftover;
      if (std::getline(impl_->target, leftover))
        throw ParseError("target file is longer than source file",
                         impl_->line_no + 1);
    }
    return std::nullopt;
  }
  ++impl_->line_no;
  if (!source_line.empty() && source_line.back() == '\r')
    source_line.pop_back();

  try {
    if (impl_->tsv()) {
      const std::size_t tab = source_line.find('\t');
      if (tab == std::string::npos ||
          source_line.find('\t', tab + 1) != std::string::npos)
        throw ParseError("expected two tab-separated columns");
      pair.source = tokenize_folded(
          std::string_view(source_line).substr(0, tab));
      pair.target = tokenize_folded(
          std::string_view(source_line).substr(tab + 1));
    } else {
      std::string target_line;
      if (!std::getline(impl_->target, target_line))
        throw ParseError("source file is longer than target file");
      if (!target_line.empty() && target_line.back() == '\r')
        target_line.pop_back();
      pair.source = tokenize_folded(source_line);
      pair.target = tokenize_folded(target_line);
    }
    if (pair.source.empty()) throw ParseError("empty source side");
    if (pair.target.empty()) throw ParseError("empty target side");
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    throw ParseError(e.what(), impl_->line_no);
  }
  return pair;
}

std::uint32_t LexiconModel::source_id(std::string_view token) const {
  const auto it = source_ids_.find(std::string(token));
  return it == source_ids_.end()
             ? std::numeric_limits<std::uint32_t>::max()
             : it->second;
}

std::uint32_t LexiconModel::target_id(std::string_view token) const {
  const auto it = target_ids_.find(std::string(token));
  return it == target_ids_.end()
             ? std::numeric_limits<std::uint32_t>::max()
             : it->second;
}

double LexiconModel::prob(std::string_view source,
                          std::string_view target) const {
  const std::uint32_t sid = source_id(source);
  const std::uint32_t tid = target_id(target);
  constexpr std::uint32_t kMissing =
      std::numeric_limits<std::uint32_t>::max();
  if (sid == kMissing || tid == kMissing || sid >= rows_.size()) return 0.0;
  const auto& row = rows_[sid];
  const auto it = std::lower_bound(
      row.begin(), row.end(), tid,
      [](const auto& cell, std::uint32_t id) { return cell.first < id; });
  if (it == row.end() || it->first != tid) return 0.0;
  return it->second;
}

bool LexiconModel::knows_target(std::string_view target) const {
  return target_ids_.count(std::string(target)) > 0;
}

LexiconModel train_lexicon(PairSource& corpus, int iterations) {
  if (iterations < 1)
    throw ConfigError("EM needs at least one iteration");

  LexiconModel model;
  model.source_tokens_.emplace_back(LexiconModel::kNullToken);
  model.source_ids_.emplace(LexiconModel::kNullToken, 0u);

  const auto intern = [](std::vector<std::string>& tokens,
                         std::unordered_map<std::string, std::uint32_t>& ids,
                         const std::string& token) {
    const auto [it, inserted] =
        ids.emplace(token, static_cast<std::uint32_t>(tokens.size()));
    if (inserted) tokens.push_back(token);
    return it->second;
  };

  // Vocabulary pass.
  corpus.reset();
  std::size_t pair_count = 0;
  while (auto pair = corpus.next()) {
    if (pair->source.empty() || pair->target.empty())
      throw InvariantError("sentence pair " + std::to_string(pair_count) +
                           " has an empty side");
    for (const auto& token : pair->source)
      intern(model.source_tokens_, model.source_ids_, token);
    for (const auto& token : pair->target)
      intern(model.target_tokens_, model.target_ids_, token);
    ++pair_count;
  }
  if (pair_count == 0) throw ConfigError("parallel corpus is empty");

  const std::size_t source_vocab = model.source_tokens_.size();
  const double uniform = 1.0 / static_cast<double>(model.target_tokens_.size());
  model.rows_.assign(source_vocab, {});

  const auto lookup = [&](std::uint32_t sid, std::uint32_t tid,
                          bool first_iteration) -> double {
    if (first_iteration) return uniform;
    const auto& row = model.rows_[sid];
    const auto it = std::lower_bound(
        row.begin(), row.end(), tid,
        [](const auto& cell, std::uint32_t id) { return cell.first < id; });
    return (it == row.end() || it->first != tid) ? 0.0 : it->second;
  };

  std::vector<std::unordered_map<std::uint32_t, double>> counts(source_vocab);
  std::vector<std::uint32_t> source_ids;
  std::vector<std::uint32_t> target_ids;
  std::vector<double> posteriors;

  for (int iteration = 0; iteration < iterations; ++iteration) {
    const bool first = iteration == 0;
    for (auto& row : counts) row.clear();
    double log_likelihood = 0.0;

    corpus.reset();
    while (auto pair = corpus.next()) {
      source_ids.clear();
      source_ids.push_back(0);  // NULL
      for (const auto& token : pair->source)
        source_ids.push_back(model.source_ids_.at(token));
      target_ids.clear();
      for (const auto& token : pair->target)
        target_ids.push_back(model.target_ids_.at(token));

      const double length_prior =
          1.0 / static_cast<double>(source_ids.size());
      for (const std::uint32_t tid : target_ids) {
        posteriors.clear();
        double denominator = 0.0;
        for (const std::uint32_t sid : source_ids) {
          const double p = lookup(sid, tid, first);
          posteriors.push_back(p);
          denominator += p;
        }
        log_likelihood += std::log(denominator * length_prior);
        for (std::size_t k = 0; k < source_ids.size(); ++k)
          counts[source_ids[k]][tid] += posteriors[k] / denominator;
      }
    }
    model.likelihood_history_.push_back(log_likelihood);

    // M-step: renormalize per source token; fixed summation order keeps
    // training bit-for-bit reproducible.
    for (std::size_t sid = 0; sid < source_vocab; ++sid) {
      auto& row = model.rows_[sid];
      row.assign(counts[sid].begin(), counts[sid].end());
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double total = 0.0;
      for (const auto& cell : row) total += cell.second;
      if (total > 0)
        for (auto& cell : row) cell.second /= total;
    }
    model.trained_iterations_ = iteration + 1;
  }
  return model;
}

LexiconModel train_lexicon(const ParallelCorpus& corpus, int iterations) {
  MemoryPairSource source(corpus);
  return train_lexicon(source, iterations);
}

double score_equivalent(const LexiconModel& model,
                        std::span<const std::string> source_term,
                        std::span<const std::string> equivalent,
                        const ScoreOptions& options) {
  if (source_term.empty() || equivalent.empty())
    throw InvariantError("scoring requires non-empty token sequences");

  const double length_prior =
      1.0 / static_cast<double>(source_term.size() + 1);
  double total = 0.0;
  for (const auto& target : equivalent) {
    double mass = model.prob(LexiconModel::kNullToken, target);
    for (const auto& source : source_term) mass += model.prob(source, target);
    total += std::log(length_prior * std::max(mass, options.floor));
  }
  return total / static_cast<double>(equivalent.size());
}

SelectionResult select_first(const TermEntry& entry) {
  if (entry.equivalents.empty())
    throw InvariantError("entry " + std::to_string(entry.id) +
                         " has no equivalents");
  return {entry.id, 0, {}, SelectionStrategy::kFirst};
}

SelectionResult select_by_alignment(const TermEntry& entry,
                                    const LexiconModel& model,
                                    const ScoreOptions& options) {
  if (entry.equivalents.empty())
    throw InvariantError("entry " + std::to_string(entry.id) +
                         " has no equivalents");
  SelectionResult result{entry.id, 0, {}, SelectionStrategy::kAlignment};
  if (entry.equivalents.size() == 1) return result;

  const std::vector<std::string> source_tokens =
      tokenize_folded(entry.source_surface);
  if (source_tokens.empty())
    throw InvariantError("source term of entry " + std::to_string(entry.id) +
                         " tokenizes to nothing");

  result.scores.reserve(entry.equivalents.size());
  for (const auto& eq : entry.equivalents) {
    const std::vector<std::string> target_tokens =
        tokenize_folded(eq.surface);
    result.scores.push_back(
        score_equivalent(model, source_tokens, target_tokens, options));
  }
  result.chosen_rank = static_cast<int>(
      std::max_element(result.scores.begin(), result.scores.end()) -
      result.scores.begin());
  return result;
}

void LexiconModel::save(std::ostream& output,
                        double prune_threshold) const {
  output << "# lexicon-model iterations=" << trained_iterations_ << '\n';

  std::vector<std::uint32_t> source_order(source_tokens_.size());
  for (std::uint32_t i = 0; i < source_order.size(); ++i)
    source_order[i] = i;
  std::sort(source_order.begin(), source_order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              return source_tokens_[a] < source_tokens_[b];
            });

  std::vector<std::pair<std::string_view, double>> cells;
  for (const std::uint32_t sid : source_order) {
    if (sid >= rows_.size()) continue;
    cells.clear();
    for (const auto& [tid, p] : rows_[sid])
      if (p >= prune_threshold) cells.emplace_back(target_tokens_[tid], p);
    std::sort(cells.begin(), cells.end());
    for (const auto& [target, p] : cells)
      output << source_tokens_[sid] << '\t' << target << '\t'
             << format_double(p) << '\n';
  }
}

LexiconModel LexiconModel::from_rows(const std::vector<ProbRow>& rows) {
  LexiconModel model;
  model.source_tokens_.emplace_back(kNullToken);
  model.source_ids_.emplace(kNullToken, 0u);
  model.rows_.emplace_back();

  for (const ProbRow& row : rows) {
    auto [sit, s_inserted] = model.source_ids_.emplace(
        row.source, static_cast<std::uint32_t>(model.source_tokens_.size()));
    if (s_inserted) {
      model.source_tokens_.push_back(row.source);
      model.rows_.emplace_back();
    }
    auto [tit, t_inserted] = model.target_ids_.emplace(
        row.target, static_cast<std::uint32_t>(model.target_tokens_.size()));
    if (t_inserted) model.target_tokens_.push_back(row.target);
    model.rows_[sit->second].emplace_back(tit->second, row.prob);
  }
  for (auto& row : model.rows_)
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  return model;
}

LexiconModel LexiconModel::load(std::istream& input) {
  std::vector<ProbRow> rows;
  int iterations = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t marker = line.find("iterations=");
      if (marker != std::string::npos)
        iterations = std::stoi(line.substr(marker + 11));
      continue;
    }
    const auto columns = split_tabs(line);
    if (columns.size() != 3)
      throw ParseError("expected source<TAB>target<TAB>prob", line_no);
    const double p = parse_double(columns[2], line_no);
    if (p < 0.0 || p > 1.0)
      throw ParseError("probability out of [0,1]: " + columns[2], line_no);
    rows.push_back({columns[0], columns[1], p});
  }
  LexiconModel model = from_rows(rows);
  model.trained_iterations_ = iterations;
  return model;
}

LexiconModel LexiconModel::load_file(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw ConfigError("cannot open lexicon model: " + path);
  return load(input);
}

void LexiconModel::for_each_probability(
    const std::function<void(std::string_view, std::string_view, double)>&
        visit) const {
  std::vector<std::uint32_t> source_order(source_tokens_.size());
  for (std::uint32_t i = 0; i < source_order.size(); ++i)
    source_order[i] = i;
  std::sort(source_order.begin(), source_order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              return source_tokens_[a] < source_tokens_[b];
            });
  for (const std::uint32_t sid : source_order) {
    if (sid >= rows_.size()) continue;
    std::vector<std::pair<std::string_view, double>> cells;
    for (const auto& [tid, p] : rows_[sid])
      cells.emplace_back(target_tokens_[tid], p);
    std::sort(cells.begin(), cells.end());
    for (const auto& [target, p] : cells)
      visit(source_tokens_[sid], target, p);
  }
}

}  // namespace termkit

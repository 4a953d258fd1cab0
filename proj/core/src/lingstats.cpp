#include "citekit/lingstats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace citekit {
namespace {

bool is_token_byte(unsigned char c) {
  // ASCII alphanumerics plus any multi-byte UTF-8 unit. Everything else
  // (punctuation, hyphens, whitespace) separates tokens.
  return std::isalnum(c) || c >= 0x80;
}

std::string fold(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Codepoint count of a UTF-8 string (continuation bytes excluded).
std::size_t codepoints(std::string_view token) {
  std::size_t n = 0;
  for (unsigned char c : token)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

void load_word_file(const std::filesystem::path& path,
                    std::unordered_set<std::string>& out, bool required) {
  std::ifstream in(path);
  if (!in) {
    if (required) throw std::runtime_error("cannot open lexicon file: " + path.string());
    return;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    if (start >= line.size()) continue;
    out.insert(fold(std::string_view(line).substr(start)));
  }
}

void check_disjoint(const std::unordered_set<std::string>& a,
                    const std::unordered_set<std::string>& b, const char* what) {
  for (const auto& token : a) {
    if (b.contains(token))
      throw std::runtime_error(std::string("lexicon conflict: '") + token + "' appears in " + what);
  }
}

}  // namespace

Lexicon load_lexicon(const std::filesystem::path& dir) {
  Lexicon lex;
  load_word_file(dir / "verbs.txt", lex.verbs, true);
  load_word_file(dir / "nouns.txt", lex.nouns, true);
  load_word_file(dir / "stopwords.txt", lex.stopwords, false);
  check_disjoint(lex.verbs, lex.nouns, "both verbs and nouns");
  check_disjoint(lex.verbs, lex.stopwords, "both verbs and stopwords");
  check_disjoint(lex.nouns, lex.stopwords, "both nouns and stopwords");
  return lex;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_token_byte(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(fold(text.substr(start, i - start)));
  }
  return tokens;
}

std::uint32_t title_length(std::string_view title) {
  std::uint32_t count = 0;
  std::size_t i = 0;
  while (i < title.size()) {
    while (i < title.size() && !is_token_byte(static_cast<unsigned char>(title[i]))) ++i;
    std::size_t start = i;
    while (i < title.size() && is_token_byte(static_cast<unsigned char>(title[i]))) ++i;
    if (i > start) ++count;
  }
  return count;
}

FreqTable token_frequencies(std::span<const std::string> docs, const Lexicon& lexicon) {
  FreqTable table;
  for (const std::string& doc : docs) {
    for (std::string& token : tokenize(doc)) {
      ++table.total_tokens;
      if (codepoints(token) <= 1) {
        ++table.short_dropped;
        continue;
      }
      if (lexicon.stopwords.contains(token)) {
        ++table.stopwords_dropped;
        continue;
      }
      if (lexicon.verbs.contains(token)) ++table.verbs[std::move(token)];
      else if (lexicon.nouns.contains(token)) ++table.nouns[std::move(token)];
      else ++table.other[std::move(token)];
    }
  }
  return table;
}

namespace {

std::vector<std::pair<std::string, std::uint64_t>> top_n(
    const std::unordered_map<std::string, std::uint64_t>& counts, std::size_t n) {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts.begin(), counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (entries.size() > n) entries.resize(n);
  return entries;
}

GroupLinguistics summarize(std::span<const PaperMeta> group, const Lexicon& lexicon) {
  GroupLinguistics out;
  out.n_papers = group.size();
  std::vector<std::string> docs;
  docs.reserve(group.size());
  double length_sum = 0.0;
  for (const PaperMeta& meta : group) {
    if (meta.label == Label::Nobel) ++out.nobel_count;
    double len = static_cast<double>(title_length(meta.title));
    out.title_lengths.push_back(len);
    length_sum += len;
    docs.push_back(meta.title);
    if (meta.abstract) docs.push_back(*meta.abstract);
  }
  out.mean_title_length = length_sum / static_cast<double>(group.size());
  out.frequencies = token_frequencies(docs, lexicon);
  out.top_verbs = top_n(out.frequencies.verbs, 20);
  out.top_nouns = top_n(out.frequencies.nouns, 20);
  return out;
}

}  // namespace

LinguisticReport compare_groups_linguistic(std::span<const PaperMeta> high,
                                           std::span<const PaperMeta> low,
                                           const Lexicon& lexicon) {
  if (high.empty() || low.empty())
    throw std::invalid_argument("compare_groups_linguistic: empty group");
  LinguisticReport report;
  report.high = summarize(high, lexicon);
  report.low = summarize(low, lexicon);
  report.title_length_test =
      mann_whitney_u(report.high.title_lengths, report.low.title_lengths);
  return report;
}

}  // namespace citekit

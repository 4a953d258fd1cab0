#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citekit/evalstats.hpp"
#include "citekit/graph.hpp"

namespace citekit {

/// Token class lists. The three sets must be pairwise disjoint; load_lexicon
/// rejects conflicts.
struct Lexicon {
  std::unordered_set<std::string> verbs;
  std::unordered_set<std::string> nouns;
  std::unordered_set<std::string> stopwords;
};

/// Reads a lexicon directory holding verbs.txt, nouns.txt and optionally
/// stopwords.txt (UTF-8, one token per line, # comments). Tokens are
/// lowercased on load. Throws std::runtime_error on a missing file or a token
/// present in two sets.
Lexicon load_lexicon(const std::filesystem::path& dir);

/// Lowercased word tokens of `text`: maximal runs of alphanumeric characters
/// (ASCII case-folded; multi-byte UTF-8 sequences pass through as letters).
/// Hyphens and other punctuation separate tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Number of word tokens in a title; hyphenated compounds count per part.
std::uint32_t title_length(std::string_view title);

enum class TokenClass { Verb, Noun, Other };

struct FreqTable {
  std::unordered_map<std::string, std::uint64_t> verbs;
  std::unordered_map<std::string, std::uint64_t> nouns;
  std::unordered_map<std::string, std::uint64_t> other;
  std::uint64_t total_tokens = 0;       // before any filtering
  std::uint64_t stopwords_dropped = 0;
  std::uint64_t short_dropped = 0;      // single-character tokens
};

/// Aggregated token counts over all documents, classified by the lexicon.
/// Stopwords and single-character tokens are dropped (counted).
FreqTable token_frequencies(std::span<const std::string> docs, const Lexicon& lexicon);

struct GroupLinguistics {
  std::size_t n_papers = 0;
  std::size_t nobel_count = 0;
  std::vector<double> title_lengths;
  double mean_title_length = 0.0;
  // (token, count), count descending then token ascending; at most 20 each.
  std::vector<std::pair<std::string, std::uint64_t>> top_verbs;
  std::vector<std::pair<std::string, std::uint64_t>> top_nouns;
  FreqTable frequencies;
};

struct LinguisticReport {
  GroupLinguistics high;
  GroupLinguistics low;
  TestResult title_length_test;  // Mann-Whitney, high vs low title lengths
};

/// Compares two groups of papers: nobel counts, title-length distributions
/// under a two-tailed Mann-Whitney U test, and top-20 verb/noun frequencies
/// over titles plus abstracts where present. Throws on an empty group.
LinguisticReport compare_groups_linguistic(std::span<const PaperMeta> high,
                                           std::span<const PaperMeta> low,
                                           const Lexicon& lexicon);

}  // namespace citekit

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace citekit {

/// Dense node index, contiguous 0..N-1 within one CitationGraph.
using PaperId = std::uint32_t;
/// Source identifier (e.g. MAG paper id).
using ExternalId = std::uint64_t;

/// One directed citation: `citing` cites `cited`.
struct Edge {
  ExternalId citing = 0;
  ExternalId cited = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Input error carrying the 1-based line number it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest round-trip decimal form of `v` (stable across runs, locale-free).
std::string format_double(double v);

/// Splits [0, n) into contiguous blocks and runs fn(begin, end) on up to
/// `threads` workers. Callers get determinism by writing to pre-assigned
/// output slots; per-worker scratch lives inside fn. threads <= 1 runs inline.
void parallel_blocks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace citekit

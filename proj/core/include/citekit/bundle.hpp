#pragma once

#include <filesystem>

#include "citekit/graph.hpp"

namespace citekit {

/// Writes the graph as a versioned little-endian binary bundle. The citer
/// side is not stored; load_bundle rebuilds it by transposition. Output is a
/// pure function of the graph, so identical graphs give identical bytes.
void save_bundle(const std::filesystem::path& path, const CitationGraph& g);

/// Reads a bundle written by save_bundle. Throws std::runtime_error on a
/// missing file, bad magic, or unsupported version.
CitationGraph load_bundle(const std::filesystem::path& path);

}  // namespace citekit

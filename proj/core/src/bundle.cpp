#include "citekit/bundle.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace citekit {
namespace {

constexpr char kMagic[4] = {'C', 'K', 'G', 'B'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void scalar(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    out_.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  template <typename T>
  void array(const std::vector<T>& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    scalar<std::uint64_t>(v.size());
    out_.write(reinterpret_cast<const char*>(v.data()),
               static_cast<std::streamsize>(v.size() * sizeof(T)));
  }
  void str(const std::string& s) {
    scalar<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T scalar() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in_) throw std::runtime_error("bundle: truncated file");
    return v;
  }
  template <typename T>
  std::vector<T> array() {
    auto size = scalar<std::uint64_t>();
    std::vector<T> v(size);
    in_.read(reinterpret_cast<char*>(v.data()),
             static_cast<std::streamsize>(size * sizeof(T)));
    if (!in_) throw std::runtime_error("bundle: truncated file");
    return v;
  }
  std::string str() {
    auto size = scalar<std::uint32_t>();
    std::string s(size, '\0');
    in_.read(s.data(), size);
    if (!in_) throw std::runtime_error("bundle: truncated file");
    return s;
  }

 private:
  std::istream& in_;
};

constexpr std::uint8_t kHasYear = 1 << 0;
constexpr std::uint8_t kHasTeam = 1 << 1;
constexpr std::uint8_t kHasPages = 1 << 2;
constexpr std::uint8_t kHasAbstract = 1 << 3;

void write_meta(Writer& w, const PaperMeta& m) {
  std::uint8_t flags = 0;
  if (m.pub_year) flags |= kHasYear;
  if (m.team_size) flags |= kHasTeam;
  if (m.page_length) flags |= kHasPages;
  if (m.abstract) flags |= kHasAbstract;
  w.scalar(flags);
  w.scalar(static_cast<std::uint8_t>(m.label));
  if (m.pub_year) w.scalar(*m.pub_year);
  if (m.team_size) w.scalar(*m.team_size);
  if (m.page_length) w.scalar(*m.page_length);
  w.str(m.venue_id);
  w.str(m.volume);
  w.str(m.issue);
  w.str(m.field_code);
  w.str(m.title);
  if (m.abstract) w.str(*m.abstract);
}

PaperMeta read_meta(Reader& r) {
  PaperMeta m;
  auto flags = r.scalar<std::uint8_t>();
  m.label = static_cast<Label>(r.scalar<std::uint8_t>());
  if (flags & kHasYear) m.pub_year = r.scalar<std::int32_t>();
  if (flags & kHasTeam) m.team_size = r.scalar<std::int32_t>();
  if (flags & kHasPages) m.page_length = r.scalar<std::int32_t>();
  m.venue_id = r.str();
  m.volume = r.str();
  m.issue = r.str();
  m.field_code = r.str();
  m.title = r.str();
  if (flags & kHasAbstract) m.abstract = r.str();
  return m;
}

}  // namespace

void save_bundle(const std::filesystem::path& path, const CitationGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write bundle: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  Writer w(out);
  w.scalar(kVersion);
  const PaperId n = g.paper_count();
  w.scalar<std::uint32_t>(n);
  w.scalar<std::uint64_t>(g.edge_count());
  w.scalar<std::uint64_t>(g.self_loops_dropped());
  w.scalar<std::uint64_t>(g.duplicate_edges_dropped());

  std::vector<ExternalId> ids(g.external_ids().begin(), g.external_ids().end());
  w.array(ids);
  std::vector<std::uint64_t> offsets;
  offsets.reserve(n + 1);
  std::vector<PaperId> targets;
  targets.reserve(g.edge_count());
  offsets.push_back(0);
  for (PaperId p = 0; p < n; ++p) {
    auto refs = g.references(p);
    targets.insert(targets.end(), refs.begin(), refs.end());
    offsets.push_back(targets.size());
  }
  w.array(offsets);
  w.array(targets);
  for (PaperId p = 0; p < n; ++p) write_meta(w, g.meta(p));
  if (!out) throw std::runtime_error("bundle write failed: " + path.string());
}

CitationGraph load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open bundle: " + path.string());
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a citekit graph bundle: " + path.string());
  Reader r(in);
  auto version = r.scalar<std::uint32_t>();
  if (version != kVersion)
    throw std::runtime_error("unsupported bundle version " + std::to_string(version));

  CitationGraph::Parts parts;
  auto n = r.scalar<std::uint32_t>();
  auto edge_count = r.scalar<std::uint64_t>();
  parts.self_loops_dropped = r.scalar<std::uint64_t>();
  parts.duplicates_dropped = r.scalar<std::uint64_t>();
  parts.external_ids = r.array<ExternalId>();
  parts.ref_offsets = r.array<std::uint64_t>();
  parts.ref_targets = r.array<PaperId>();
  if (parts.external_ids.size() != n || parts.ref_targets.size() != edge_count)
    throw std::runtime_error("bundle: inconsistent section sizes");
  parts.metas.reserve(n);
  for (std::uint32_t p = 0; p < n; ++p) parts.metas.push_back(read_meta(r));
  return CitationGraph::from_parts(std::move(parts));
}

}  // namespace citekit

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gkc/enumeration.hpp"
#include "gkc/errors.hpp"

namespace gkc {

namespace {

constexpr char kMagic[4] = {'G', 'K', 'C', 'B'};
constexpr std::uint32_t kFormatVersion = 1;
// Bump when enumeration or canonical-form output changes; stale records are
// then simply never matched.
constexpr const char* kCodeVersion = "gkc-enum-1";

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void put_u32(std::string& s, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u64(std::string& s, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_i32(std::string& s, std::int32_t x) { put_u32(s, static_cast<std::uint32_t>(x)); }
void put_bytes(std::string& s, const std::string& b) {
  put_u64(s, b.size());
  s += b;
}
void put_ints(std::string& s, const std::vector<int>& v) {
  put_u64(s, v.size());
  for (int x : v) put_i32(s, x);
}

struct Reader {
  const std::string& data;
  std::size_t at = 0;

  void need(std::size_t n) const {
    if (at + n > data.size()) throw parse_error("cache record truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[at + i])) << (8 * i);
    at += 4;
    return x;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[at + i])) << (8 * i);
    at += 8;
    return x;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::string bytes() {
    const auto n = u64();
    need(n);
    std::string b = data.substr(at, n);
    at += n;
    return b;
  }
  std::vector<int> ints() {
    const auto n = u64();
    std::vector<int> v(n);
    for (auto& x : v) x = i32();
    return v;
  }
};

void put_graph(std::string& s, const StableGraph& g) {
  put_ints(s, g.weights());
  put_ints(s, g.vertex_map());
  put_ints(s, g.pairing());
  put_ints(s, g.labels());
}

StableGraph get_graph(Reader& r) {
  auto weights = r.ints();
  auto vertex_of = r.ints();
  auto pairing = r.ints();
  auto labels = r.ints();
  return StableGraph(std::move(weights), std::move(vertex_of), std::move(pairing),
                     std::move(labels));
}

}  // namespace

std::string cache_file_name(int g, int n, Mode mode, int max_edges) {
  std::ostringstream name;
  name << "basis-g" << g << "-n" << n << "-" << mode_name(mode) << "-e" << max_edges << "-"
       << kCodeVersion << ".gkc";
  return name.str();
}

void save_basis(const std::string& path, const GraphBasis& basis) {
  std::string payload;
  put_bytes(payload, kCodeVersion);
  put_i32(payload, basis.g);
  put_i32(payload, basis.n);
  put_u32(payload, basis.mode == Mode::labeled ? 0 : 1);
  put_i32(payload, basis.max_edges);
  put_u64(payload, basis.by_edges.size());
  for (const auto& level : basis.by_edges) {
    put_u64(payload, level.size());
    for (const auto& cls : level) {
      put_graph(payload, cls.rep);
      put_bytes(payload, cls.key);
      put_u64(payload, cls.aut.order);
      put_u32(payload, cls.aut.orientation_reversing ? 1 : 0);
      put_u64(payload, cls.aut.generators.size());
      for (const auto& gen : cls.aut.generators) put_ints(payload, gen);
    }
  }

  std::string out(kMagic, 4);
  put_u32(out, kFormatVersion);
  put_u64(out, fnv1a(payload));
  out += payload;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw parse_error("cannot open cache file for writing: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

std::optional<GraphBasis> load_basis(const std::string& path, std::string* error) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    if (error) *error = "cache file missing: " + path;
    return std::nullopt;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string data = ss.str();
  try {
    Reader r{data};
    r.need(4);
    if (std::memcmp(data.data(), kMagic, 4) != 0) throw parse_error("bad cache magic");
    r.at = 4;
    if (r.u32() != kFormatVersion) throw parse_error("unsupported cache format version");
    const std::uint64_t checksum = r.u64();
    const std::string payload = data.substr(r.at);
    if (fnv1a(payload) != checksum) throw checksum_error("cache checksum mismatch: " + path);

    Reader p{payload};
    if (p.bytes() != kCodeVersion) throw parse_error("cache from a different code version");
    GraphBasis basis;
    basis.g = p.i32();
    basis.n = p.i32();
    basis.mode = p.u32() == 0 ? Mode::labeled : Mode::hairy;
    basis.max_edges = p.i32();
    basis.by_edges.resize(p.u64());
    for (auto& level : basis.by_edges) {
      level.resize(p.u64());
      for (auto& cls : level) {
        cls.rep = get_graph(p);
        cls.key = p.bytes();
        cls.aut.order = p.u64();
        cls.aut.orientation_reversing = p.u32() != 0;
        cls.aut.generators.resize(p.u64());
        for (auto& gen : cls.aut.generators) gen = p.ints();
      }
    }
    return basis;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

GraphBasis enumerate_cached(int g, int n, Mode mode, int max_edges,
                            const std::string& cache_dir) {
  if (max_edges < 0) max_edges = 3 * g - 3 + n;
  if (cache_dir.empty()) return enumerate_graphs(g, n, mode, max_edges);

  namespace fs = std::filesystem;
  fs::create_directories(cache_dir);
  const auto path = (fs::path(cache_dir) / cache_file_name(g, n, mode, max_edges)).string();
  if (auto basis = load_basis(path)) return std::move(*basis);
  auto basis = enumerate_graphs(g, n, mode, max_edges);
  save_basis(path, basis);
  return basis;
}

}  // namespace gkc

#include "vertexlab/suite_cache.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace vertexlab {
namespace {

constexpr std::array<char, 8> kMagic{'V', 'X', 'L', 'S', 'U', 'I', 'T', 'E'};

struct Header {
  std::array<char, 8> magic{};
  std::uint32_t version = 0;
  std::uint32_t zero_count = 0;
  std::uint32_t coeff_order = 0;
  std::uint32_t reserved = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double step = 0.0;
  std::uint64_t nodes = 0;
};

Header header_for(const SuiteConfig& c, std::uint64_t nodes) {
  Header h;
  h.magic = kMagic;
  h.version = SuiteCache::kFormatVersion;
  h.zero_count = static_cast<std::uint32_t>(c.zero_count);
  h.coeff_order = static_cast<std::uint32_t>(c.coeff_order);
  h.x_min = c.x_min;
  h.x_max = c.x_max;
  h.step = c.step;
  h.nodes = nodes;
  return h;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t node_count(const SuiteConfig& c) {
  return static_cast<std::uint64_t>(std::llround((c.x_max - c.x_min) / c.step)) + 1;
}

}  // namespace

std::filesystem::path SuiteCache::path_for(const SuiteConfig& c) const {
  char key[160];
  std::snprintf(key, sizeof key, "v%u|%.17g|%.17g|%.17g|%d|%d", kFormatVersion, c.x_min, c.x_max, c.step,
                c.zero_count, c.coeff_order);
  char name[64];
  std::snprintf(name, sizeof name, "suite-%016llx.bin", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

std::optional<CoreFnSuite> SuiteCache::load(const SuiteConfig& config) const {
  std::ifstream in(path_for(config), std::ios::binary);
  if (!in) return std::nullopt;
  Header h;
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  const Header want = header_for(config, node_count(config));
  if (!in || std::memcmp(&h, &want, sizeof h) != 0) return std::nullopt;
  std::vector<double> log_g(h.nodes), phi(h.nodes);
  in.read(reinterpret_cast<char*>(log_g.data()), static_cast<std::streamsize>(h.nodes * sizeof(double)));
  in.read(reinterpret_cast<char*>(phi.data()), static_cast<std::streamsize>(h.nodes * sizeof(double)));
  if (!in) return std::nullopt;
  return CoreFnSuite::from_tables(config, std::move(log_g), std::move(phi));
}

void SuiteCache::store(const CoreFnSuite& suite) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(suite.config());
  const auto tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const auto& lg = suite.log_g_table().values();
    const auto& phi = suite.phi_table().values();
    const Header h = header_for(suite.config(), lg.size());
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    out.write(reinterpret_cast<const char*>(lg.data()), static_cast<std::streamsize>(lg.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(phi.data()), static_cast<std::streamsize>(phi.size() * sizeof(double)));
    if (!out) return;  // a cache that cannot be written is not an error
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
}

CoreFnSuite SuiteCache::load_or_build(const SuiteConfig& config, bool* hit) const {
  if (auto cached = load(config)) {
    if (hit) *hit = true;
    return std::move(*cached);
  }
  if (hit) *hit = false;
  CoreFnSuite suite = CoreFnSuite::build(config);
  try {
    store(suite);
  } catch (const std::filesystem::filesystem_error&) {
  }
  return suite;
}

}  // namespace vertexlab

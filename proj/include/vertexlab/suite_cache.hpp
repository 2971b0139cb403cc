#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vertexlab/special_fns.hpp"

namespace vertexlab {

/// Binary cache of the log g and phi tables. The header carries a magic tag, a
/// format version and the build parameters; a file whose header does not match
/// the requested configuration is ignored. The payload itself is not checksummed.
class SuiteCache {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  explicit SuiteCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// File name derived from the configuration.
  std::filesystem::path path_for(const SuiteConfig& config) const;

  /// nullopt on a missing, foreign or mismatched file.
  std::optional<CoreFnSuite> load(const SuiteConfig& config) const;
  void store(const CoreFnSuite& suite) const;

  /// Load, or build and store. Sets *hit when the cache was used.
  CoreFnSuite load_or_build(const SuiteConfig& config, bool* hit = nullptr) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace vertexlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "netloc/params.hpp"

namespace netloc {

inline constexpr const char* kToolVersion = "1.0.0";

// Flat key=value configuration covering MarginalParams. dB-valued inputs may
// use *_db keys (gamma_db, beta_db); mixing a linear key with its _db twin is
// rejected. Unknown keys are rejected.
struct RunConfig {
  MarginalParams mp;
  std::set<std::string> provided;  // canonical names of explicitly set keys

  static RunConfig from_file(const std::string& path);
  static RunConfig from_stream(std::istream& in, const std::string& origin);
  void apply(const std::map<std::string, std::string>& kv);

  bool has(const std::string& key) const { return provided.count(key) > 0; }

  // Canonical key=value rendering (sorted keys, linear values).
  std::string canonical() const;
};

// Sidecar manifest for every CLI output. The hash covers command, canonical
// parameters, seed and tool version; timestamps stay outside the hash so
// identical runs produce byte-identical data files.
struct RunManifest {
  std::string command;
  std::string params_canonical;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  std::vector<std::string> outputs;

  std::string hash_hex() const;
  void write_sidecar(const std::string& path) const;
};

std::uint64_t fnv1a64(const std::string& bytes);

void write_csv(const std::string& path, const std::string& manifest_hash,
               const std::string& header,
               const std::vector<std::string>& rows);

}  // namespace netloc

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kent/sep_eigenvalue.hpp"
#include "kent/tensor.hpp"

namespace kent {

inline constexpr std::uint32_t kDbFormatVersion = 1;

struct RecordMeta {
  int restarts_used = 0;
  double max_residual = 0.0;      // worst convergence residual in the profile
  std::string source = "random";  // "random" | "seeded"
};

/// One positive contraction together with its separability-eigenvalue
/// profile over every valid partition.
struct WitnessRecord {
  std::uint64_t id = 0;
  Matrix contraction;                     // unit spectral norm
  std::map<std::string, double> profile;  // PartitionKey -> g
  RecordMeta meta;
};

struct DatabaseHeader {
  std::uint32_t format_version = kDbFormatVersion;
  int n_qubits = 0;
  std::uint64_t count = 0;
  std::uint64_t master_seed = 0;
  GConfig g_config;
  std::string created_utc;  // left empty by builders so equal inputs give equal bytes
};

struct Database {
  DatabaseHeader header;
  std::vector<WitnessRecord> records;

  RegisterLayout layout() const { return RegisterLayout::qubits(header.n_qubits); }
};

/// L = GG^dagger / ||GG^dagger|| for a complex Ginibre G of width drawn
/// uniformly from {1..2^n}; Hermitian PSD with unit spectral norm,
/// bit-stable per seed.
Matrix sample_contraction(int n, std::uint64_t seed);

/// Record i uses sample seed mix_seed(cfg.seed, i); the result is
/// independent of `threads`.
Database build_db(int n, std::uint64_t count, const GConfig& cfg, int threads = 0);

/// Append seeded contractions (normalized to unit spectral norm) with
/// freshly computed profiles; existing records are untouched.
Database augment_db(const Database& db, const std::vector<Matrix>& extra, const GConfig& cfg);

std::string serialize_db(const Database& db);
Database deserialize_db(const std::string& bytes);

void save_db(const Database& db, const std::string& path);
Database load_db(const std::string& path);

}  // namespace kent

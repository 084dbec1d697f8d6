#include "kent/witness_db.hpp"

#include <atomic>
#include <bit>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

namespace kent {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  std::uint64_t u64() { return raw(8); }
  double f64() { return std::bit_cast<double>(raw(8)); }

  std::string text(std::size_t len) {
    need(len);
    std::string s = bytes_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  std::uint64_t raw(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += width;
    return v;
  }

  void need(std::size_t width) {
    if (pos_ + width > bytes_.size())
      throw IntegrityError("database file is truncated");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::string> all_partition_keys(int n) {
  std::vector<std::string> keys;
  for (int k = 2; k <= n; ++k)
    for (const Partition& p : enumerate_valid(n, k)) keys.push_back(canonical_key(p));
  return keys;
}

void validate_record(const WitnessRecord& rec, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (rec.contraction.rows() != dim || rec.contraction.cols() != dim)
    throw IntegrityError("record dimension does not match header");
  const double norm = spectral_norm(rec.contraction);
  if (norm < 1.0 - 1e-9 || norm > 1.0 + 1e-9)
    throw IntegrityError("record is not a normalized contraction");
  for (const auto& key : all_partition_keys(n)) {
    const auto it = rec.profile.find(key);
    if (it == rec.profile.end())
      throw IntegrityError("record profile is missing partition " + key);
    if (it->second < 0.0 || it->second > 1.0 + 1e-9)
      throw IntegrityError("profile value out of range for " + key);
  }
}

WitnessRecord profiled_record(std::uint64_t id, Matrix l, const RegisterLayout& layout,
                              const GConfig& cfg, const std::string& source) {
  WitnessRecord rec;
  rec.id = id;
  rec.contraction = std::move(l);
  ProfileResult profile = g_profile(rec.contraction, layout, cfg);
  rec.profile = std::move(profile.values);
  rec.meta.restarts_used = profile.restarts_used;
  rec.meta.max_residual = profile.max_residual;
  rec.meta.source = source;
  return rec;
}

}  // namespace

namespace {

// Orthonormal GHZ-type basis: (|x> +- |~x>)/sqrt(2) over complement pairs.
// Every element is maximally entangled across every cut of the register.
Matrix ghz_type_basis(Eigen::Index dim) {
  Matrix b = Matrix::Zero(dim, dim);
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Index col = 0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    const Eigen::Index xc = dim - 1 - x;  // bitwise complement
    if (x > xc) continue;
    b(x, col) = s;
    b(xc, col) = s;
    ++col;
    b(x, col) = s;
    b(xc, col) = -s;
    ++col;
  }
  return b;
}

Matrix haar_local_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

}  // namespace

Matrix sample_contraction(int n, std::uint64_t seed) {
  if (n < 2 || n > 6) throw InvalidParameter("sample_contraction supports 2 <= n <= 6");
  const Eigen::Index dim = Eigen::Index(1) << n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rank_dist(1, static_cast<int>(dim));
  const int rank = rank_dist(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Equal mixture of three draw families. Isotropic Wishart alone almost
  // never lands near the entangled extreme points of the contraction body,
  // so desk-scale databases built from it detect essentially nothing; the
  // rotated GHZ-eigenbasis and GHZ-projector branches keep those
  // directions populated while staying i.i.d. and state-agnostic.
  const std::uint64_t branch = rng() % 3;

  Matrix l;
  if (branch == 2) {
    // projector onto a locally rotated GHZ-type basis state
    Matrix rotation = haar_local_unitary(rng);
    for (int q = 1; q < n; ++q)
      rotation = tensor_product(rotation, haar_local_unitary(rng));
    const Eigen::Index which =
        static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(dim));
    const Vector psi = rotation * ghz_type_basis(dim).col(which);
    l = psi * psi.adjoint();
  } else {
    Matrix g(dim, rank);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < rank; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        g(i, j) = Complex(re, im);
      }
    l = hermitize(g * g.adjoint());
    if (branch == 1) {
      // same Wishart spectrum on a locally rotated GHZ-type eigenbasis
      Eigen::SelfAdjointEigenSolver<Matrix> es(l);
      const Eigen::VectorXd spectrum = es.eigenvalues().reverse();
      Matrix rotation = haar_local_unitary(rng);
      for (int q = 1; q < n; ++q)
        rotation = tensor_product(rotation, haar_local_unitary(rng));
      const Matrix basis = rotation * ghz_type_basis(dim);
      l = hermitize(basis * spectrum.asDiagonal() * basis.adjoint());
    }
  }
  l /= spectral_norm(l);
  return l;
}

Database build_db(int n, std::uint64_t count, const GConfig& cfg, int threads) {
  if (count < 1) throw InvalidParameter("database needs at least one record");
  Database db;
  db.header.n_qubits = n;
  db.header.count = count;
  db.header.master_seed = cfg.seed;
  db.header.g_config = cfg;
  db.records.resize(count);

  const RegisterLayout layout = RegisterLayout::qubits(n);
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        db.records[i] = profiled_record(i, sample_contraction(n, mix_seed(cfg.seed, i)),
                                        layout, cfg, "random");
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true))
          first_error = "record " + std::to_string(i) + ": " + e.what();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) throw IntegrityError(first_error);
  return db;
}

Database augment_db(const Database& db, const std::vector<Matrix>& extra, const GConfig& cfg) {
  Database out = db;
  const RegisterLayout layout = db.layout();
  const Eigen::Index dim = layout.dim();
  for (const auto& raw : extra) {
    if (raw.rows() != dim || raw.cols() != dim)
      throw DimensionError("seeded contraction dimension mismatch");
    Matrix l = hermitize(raw);
    if (min_eigenvalue(l) < -1e-8) throw NotPositive("seeded matrix is not PSD");
    const double norm = spectral_norm(l);
    if (norm > 1.0 + 1e-9) throw NotPositive("seeded matrix is not a contraction");
    if (norm < 1e-12) throw InvalidParameter("seeded matrix is zero");
    l /= norm;
    out.records.push_back(
        profiled_record(out.records.size(), std::move(l), layout, cfg, "seeded"));
  }
  out.header.count = out.records.size();
  return out;
}

std::string serialize_db(const Database& db) {
  nlohmann::json header;
  header["format_version"] = db.header.format_version;
  header["n_qubits"] = db.header.n_qubits;
  header["count"] = db.header.count;
  header["master_seed"] = db.header.master_seed;
  header["g_config"] = {{"tol", db.header.g_config.tol},
                        {"max_sweeps", db.header.g_config.max_sweeps},
                        {"restarts", db.header.g_config.restarts},
                        {"seed", db.header.g_config.seed}};
  header["created_utc"] = db.header.created_utc;
  const std::string header_text = header.dump();

  std::string out;
  out += "KENT";
  put_u32(out, db.header.format_version);
  put_u64(out, header_text.size());
  out += header_text;

  for (const auto& rec : db.records) {
    put_u64(out, rec.id);
    out.push_back(rec.meta.source == "seeded" ? char(1) : char(0));
    put_u32(out, static_cast<std::uint32_t>(rec.meta.restarts_used));
    put_f64(out, rec.meta.max_residual);
    for (Eigen::Index i = 0; i < rec.contraction.rows(); ++i)
      for (Eigen::Index j = 0; j < rec.contraction.cols(); ++j) {
        put_f64(out, rec.contraction(i, j).real());
        put_f64(out, rec.contraction(i, j).imag());
      }
    put_u32(out, static_cast<std::uint32_t>(rec.profile.size()));
    for (const auto& [key, value] : rec.profile) {
      put_u32(out, static_cast<std::uint32_t>(key.size()));
      out += key;
      put_f64(out, value);
    }
  }
  return out;
}

Database deserialize_db(const std::string& bytes) {
  Reader in(bytes);
  if (in.text(4) != "KENT") throw FormatError("bad magic; not a witness database");
  const std::uint32_t version = in.u32();
  if (version > kDbFormatVersion)
    throw VersionError("database format " + std::to_string(version) + " is newer than " +
                       std::to_string(kDbFormatVersion));
  if (version < 1) throw FormatError("invalid format version 0");

  const std::uint64_t header_len = in.u64();
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(in.text(header_len));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("header is not valid JSON: ") + e.what());
  }

  Database db;
  try {
    db.header.format_version = header.at("format_version").get<std::uint32_t>();
    db.header.n_qubits = header.at("n_qubits").get<int>();
    db.header.count = header.at("count").get<std::uint64_t>();
    db.header.master_seed = header.at("master_seed").get<std::uint64_t>();
    const auto& cfg = header.at("g_config");
    db.header.g_config.tol = cfg.at("tol").get<double>();
    db.header.g_config.max_sweeps = cfg.at("max_sweeps").get<int>();
    db.header.g_config.restarts = cfg.at("restarts").get<int>();
    db.header.g_config.seed = cfg.at("seed").get<std::uint64_t>();
    db.header.created_utc = header.value("created_utc", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("header field missing or mistyped: ") + e.what());
  }
  if (db.header.format_version != version)
    throw FormatError("header/container version mismatch");
  if (db.header.n_qubits < 2) throw FormatError("invalid qubit count in header");

  const Eigen::Index dim = Eigen::Index(1) << db.header.n_qubits;
  db.records.reserve(db.header.count);
  for (std::uint64_t r = 0; r < db.header.count; ++r) {
    WitnessRecord rec;
    rec.id = in.u64();
    rec.meta.source = in.text(1) == std::string(1, char(1)) ? "seeded" : "random";
    rec.meta.restarts_used = static_cast<int>(in.u32());
    rec.meta.max_residual = in.f64();
    rec.contraction.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double re = in.f64();
        const double im = in.f64();
        rec.contraction(i, j) = Complex(re, im);
      }
    const std::uint32_t entries = in.u32();
    for (std::uint32_t e = 0; e < entries; ++e) {
      const std::uint32_t key_len = in.u32();
      const std::string key = in.text(key_len);
      rec.profile[key] = in.f64();
    }
    validate_record(rec, db.header.n_qubits);
    db.records.push_back(std::move(rec));
  }
  if (!in.exhausted()) throw IntegrityError("trailing bytes after final record");
  return db;
}

void save_db(const Database& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  const std::string bytes = serialize_db(db);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed writing '" + path + "'");
}

Database load_db(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_db(bytes);
}

}  // namespace kent

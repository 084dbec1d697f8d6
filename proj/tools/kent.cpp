#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "kent/matrix_io.hpp"
#include "kent/measures.hpp"
#include "kent/scan.hpp"
#include "kent/sep_eigenvalue.hpp"
#include "kent/states.hpp"
#include "kent/witness_db.hpp"

namespace {

using namespace kent;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// --db lookups fall back to $KENT_DB_DIR when the path does not exist as given
std::string resolve_db_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (!fs::path(path).is_absolute()) {
    if (const char* dir = std::getenv("KENT_DB_DIR")) {
      const fs::path candidate = fs::path(dir) / path;
      if (fs::exists(candidate)) return candidate.string();
    }
  }
  return path;
}

Matrix load_state_arg(const std::string& arg) {
  if (arg.rfind("family:", 0) == 0) return family_state(parse_family_spec(arg));
  return read_matrix_file(arg);
}

int infer_qubits(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim) throw DimensionError("dimension is not a power of two");
  return n;
}

void print_measure(const MeasureResult& r) {
  std::cout << "context=" << r.partition_context << " k=" << r.k << " value=" << fmt(r.value)
            << " margin=" << fmt(r.raw_margin);
  if (r.best_witness_id)
    std::cout << " witness=" << *r.best_witness_id << " partition=" << r.best_partition;
  std::cout << "\n";
}

nlohmann::json measure_json(const MeasureResult& r) {
  nlohmann::json j;
  j["context"] = r.partition_context;
  j["k"] = r.k;
  j["value"] = r.value;
  j["margin"] = r.raw_margin;
  if (r.best_witness_id) {
    j["witness"] = *r.best_witness_id;
    j["partition"] = r.best_partition;
  }
  return j;
}

struct CliOptions {
  // gen-db
  int qubits = 2;
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
  std::string out;
  double tol = GConfig{}.tol;
  int max_sweeps = GConfig{}.max_sweeps;
  int restarts = GConfig{}.restarts;
  int threads = 0;
  std::vector<std::string> augment_names;
  // g-eval
  std::string in_path;
  std::string partition_key;
  bool oracle = false;
  // measure/scan/curve
  std::string db_path;
  std::string state_arg;
  int k = 0;
  std::string family_name;
  double ptol = 1e-7;
  double plo = 0.0;
  double phi = 1.0;
  std::string grid_spec;
  std::vector<int> k_list;
  bool json = false;
  // neg-bench
  std::uint64_t samples = 0;
  int rank = 0;  // 0 = uniform in {1..4}
  // state
  std::string state_name;
  std::string family_spec;
  int state_qubits = 0;  // 0 = infer for fixed-size states
};

GConfig cli_gconfig(const CliOptions& opt) {
  GConfig cfg;
  cfg.tol = opt.tol;
  cfg.max_sweeps = opt.max_sweeps;
  cfg.restarts = opt.restarts;
  cfg.seed = opt.seed;
  return cfg;
}

int run_gen_db(const CliOptions& opt) {
  const GConfig cfg = cli_gconfig(opt);
  Database db = build_db(opt.qubits, opt.count, cfg, opt.threads);
  if (!opt.augment_names.empty()) {
    std::vector<Matrix> seeds;
    for (const auto& name : opt.augment_names) {
      const Vector psi = named_pure(name, opt.qubits);
      seeds.push_back(psi * psi.adjoint());
    }
    db = augment_db(db, seeds, cfg);
  }
  save_db(db, opt.out);
  std::cout << "db: n_qubits=" << db.header.n_qubits << " count=" << db.header.count
            << " master_seed=" << db.header.master_seed << " tol=" << fmt(cfg.tol)
            << " max_sweeps=" << cfg.max_sweeps << " restarts=" << cfg.restarts << "\n";
  return 0;
}

int run_g_eval(const CliOptions& opt) {
  const Matrix l = read_matrix_file(opt.in_path);
  const int n = infer_qubits(l.rows());
  const RegisterLayout layout = RegisterLayout::qubits(n);
  const Partition p = parse_partition_key(opt.partition_key, n);
  const GConfig cfg = cli_gconfig(opt);
  const GResult r = g_partition(l, layout, p, cfg);
  std::cout << "g=" << fmt(r.value) << " sweeps=" << r.sweeps_used
            << " restarts=" << r.restarts_used << "\n";
  if (opt.oracle) {
    if (p.k() != 2) throw InvalidK("--oracle needs a two-block partition");
    const EigPair top = dominant_eigpair(l);
    const Matrix residue = l - top.value * (top.vector * top.vector.adjoint());
    if (residue.cwiseAbs().maxCoeff() > 1e-8)
      throw InvalidParameter("--oracle needs a rank-one operator");
    const double oracle = top.value * g_pure_bipartite_oracle(top.vector, layout, p);
    std::cout << "oracle=" << fmt(oracle) << "\n";
  }
  return 0;
}

int run_measure(const CliOptions& opt) {
  const Database db = load_db(resolve_db_path(opt.db_path));
  const Matrix rho = load_state_arg(opt.state_arg);
  std::vector<MeasureResult> results;
  if (!opt.partition_key.empty()) {
    const Partition context = parse_partition_key(opt.partition_key, db.header.n_qubits);
    if (opt.k > 0) {
      results.push_back(e_w_subpartition(rho, db, context, opt.k));
    } else {
      for (int k = context.k(); k >= 2; --k)
        results.push_back(e_w_subpartition(rho, db, context, k));
    }
  } else if (opt.k > 0) {
    results.push_back(e_w_k(rho, db, opt.k));
  } else {
    results = measure_tuple(rho, db);
  }
  for (const auto& r : results) print_measure(r);
  if (opt.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(measure_json(r));
    std::cout << arr.dump() << "\n";
  }
  return 0;
}

int run_scan(const CliOptions& opt) {
  const Database db = load_db(resolve_db_path(opt.db_path));
  ScanSpec spec;
  spec.family.base = opt.family_name;
  spec.family.n = opt.qubits;
  spec.measure.k = opt.k;
  if (!opt.partition_key.empty())
    spec.measure.context = parse_partition_key(opt.partition_key, db.header.n_qubits);
  spec.p_lo = opt.plo;
  spec.p_hi = opt.phi;
  spec.p_tol = opt.ptol;
  const ThresholdResult r = threshold_bisect(spec, db);
  std::cout << "threshold " << spec.measure.label() << " in [" << fmt(r.low) << ", "
            << fmt(r.high) << "] iterations=" << r.iterations << "\n";
  return 0;
}

int run_curve(const CliOptions& opt) {
  const Database db = load_db(resolve_db_path(opt.db_path));
  NoisyFamily family;
  family.base = opt.family_name;
  family.n = opt.qubits;

  std::vector<MeasureSpec> measures;
  std::optional<Partition> context;
  if (!opt.partition_key.empty())
    context = parse_partition_key(opt.partition_key, db.header.n_qubits);
  std::vector<int> ks = opt.k_list;
  if (ks.empty()) {
    const int top = context ? context->k() : db.header.n_qubits;
    for (int k = top; k >= 2; --k) ks.push_back(k);
  }
  for (int k : ks) measures.push_back(MeasureSpec{k, context});

  const Curve c = curve(family, measures, db, parse_grid(opt.grid_spec));
  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + opt.out + "' for writing");
  write_curve_csv(c, out);
  std::cout << "wrote " << c.grid.size() << " rows to " << opt.out << "\n";
  return 0;
}

int run_neg_bench(const CliOptions& opt) {
  const Database db = load_db(resolve_db_path(opt.db_path));
  if (db.header.n_qubits != 2)
    throw InvalidParameter("neg-bench compares against 2-qubit negativity");
  const RegisterLayout layout = RegisterLayout::qubits(2);
  const Partition split = parse_partition_key("1|2", 2);

  std::uint64_t neg_entangled = 0, sw_entangled = 0, disagree = 0;
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    const int rank = opt.rank > 0 ? opt.rank : 1 + static_cast<int>(mix_seed(opt.seed + 1, i) % 4);
    const Matrix rho = random_density(2, rank, mix_seed(opt.seed, i));
    const bool by_neg = negativity(rho, layout, split) > kDetectionMargin;
    const bool by_sw = e_w_k(rho, db, 2).value > 0.0;
    neg_entangled += by_neg ? 1 : 0;
    sw_entangled += by_sw ? 1 : 0;
    disagree += (by_neg != by_sw) ? 1 : 0;
  }
  const auto m = opt.samples;
  const double error_pct =
      100.0 * (static_cast<double>(neg_entangled) - static_cast<double>(sw_entangled)) /
      static_cast<double>(m);
  std::cout << "quantity | negativity entangled | negativity separable | software entangled | "
               "software separable | detection error (%)\n";
  std::cout << m << " | " << neg_entangled << " | " << (m - neg_entangled) << " | "
            << sw_entangled << " | " << (m - sw_entangled) << " | " << fmt(error_pct) << "\n";
  std::cout << "disagreements=" << disagree << " rate=" << fmt(100.0 * disagree / m) << "%\n";
  return 0;
}

int run_state(const CliOptions& opt) {
  std::ostringstream text;
  if (!opt.state_name.empty()) {
    const Vector psi = named_pure(opt.state_name, opt.state_qubits);
    write_vector(text, psi);
  } else if (!opt.family_spec.empty()) {
    write_matrix(text, family_state(parse_family_spec(opt.family_spec)));
  } else {
    throw InvalidParameter("state needs --name or --family");
  }
  if (!opt.out.empty()) {
    std::ofstream out(opt.out, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + opt.out + "' for writing");
    out << text.str();
  } else {
    std::cout << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"witness-database k-entanglement measures for n-qubit states"};
  app.require_subcommand(1);
  CliOptions opt;

  auto* gen = app.add_subcommand("gen-db", "generate a witness database");
  gen->add_option("--qubits", opt.qubits, "register size")->required()->check(CLI::Range(2, 6));
  gen->add_option("--count", opt.count, "number of random contractions")->required();
  gen->add_option("--seed", opt.seed, "master seed");
  gen->add_option("--out", opt.out, "output file")->required();
  gen->add_option("--tol", opt.tol, "convergence tolerance");
  gen->add_option("--max-sweeps", opt.max_sweeps, "sweep cap per restart");
  gen->add_option("--restarts", opt.restarts, "random restarts per partition");
  gen->add_option("--threads", opt.threads, "worker cap (0 = hardware)");
  gen->add_option("--augment", opt.augment_names, "named pure states to seed as projectors")
      ->delimiter(',');

  auto* geval = app.add_subcommand("g-eval", "separability eigenvalue of a stored operator");
  geval->add_option("--in", opt.in_path, "operator file")->required();
  geval->add_option("--partition", opt.partition_key, "partition key, e.g. 12|3")->required();
  geval->add_flag("--oracle", opt.oracle, "also print the Schmidt oracle (rank-one input)");
  geval->add_option("--seed", opt.seed, "restart seed");
  geval->add_option("--tol", opt.tol, "convergence tolerance");
  geval->add_option("--max-sweeps", opt.max_sweeps, "sweep cap per restart");
  geval->add_option("--restarts", opt.restarts, "random restarts");

  auto* measure = app.add_subcommand("measure", "k-entanglement measures of a state");
  measure->add_option("--db", opt.db_path, "witness database")->required();
  measure->add_option("--state", opt.state_arg, "matrix file or family:<name>,n=<int>,p=<float>")
      ->required();
  measure->add_option("--k", opt.k, "single k (default: full tuple)");
  measure->add_option("--partition", opt.partition_key, "sub-partition context");
  measure->add_flag("--json", opt.json, "also print JSON");

  auto* scan = app.add_subcommand("scan", "bisect a noisy-family onset threshold");
  scan->add_option("--db", opt.db_path, "witness database")->required();
  scan->add_option("--family", opt.family_name, "family name (werner, w, cl4, d24, singlet4)")
      ->required();
  scan->add_option("--qubits", opt.qubits, "family size")->required();
  scan->add_option("--k", opt.k, "measure index")->required();
  scan->add_option("--partition", opt.partition_key, "sub-partition context");
  scan->add_option("--ptol", opt.ptol, "interval width target");
  scan->add_option("--plo", opt.plo, "bracket lower end");
  scan->add_option("--phi", opt.phi, "bracket upper end");

  auto* curve_cmd = app.add_subcommand("curve", "measure-vs-p table for a noisy family");
  curve_cmd->add_option("--db", opt.db_path, "witness database")->required();
  curve_cmd->add_option("--family", opt.family_name, "family name")->required();
  curve_cmd->add_option("--qubits", opt.qubits, "family size")->required();
  curve_cmd->add_option("--grid", opt.grid_spec, "lo:hi:step")->required();
  curve_cmd->add_option("--out", opt.out, "CSV output path")->required();
  curve_cmd->add_option("--k", opt.k_list, "measure indices")->delimiter(',');
  curve_cmd->add_option("--partition", opt.partition_key, "sub-partition context");

  auto* bench = app.add_subcommand("neg-bench", "agreement with 2-qubit negativity");
  bench->add_option("--db", opt.db_path, "witness database")->required();
  bench->add_option("--samples", opt.samples, "number of random states")->required();
  bench->add_option("--seed", opt.seed, "sampling seed");
  bench->add_option("--rank", opt.rank, "fixed state rank (default: uniform 1..4)");

  auto* state = app.add_subcommand("state", "emit a named state or noisy family");
  state->add_option("--name", opt.state_name, "named pure state");
  state->add_option("--qubits", opt.state_qubits, "register size (needed for ghz/w)");
  state->add_option("--family", opt.family_spec, "family:<name>,n=<int>,p=<float>");
  state->add_option("--out", opt.out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen_db(opt);
    if (geval->parsed()) return run_g_eval(opt);
    if (measure->parsed()) return run_measure(opt);
    if (scan->parsed()) return run_scan(opt);
    if (curve_cmd->parsed()) return run_curve(opt);
    if (bench->parsed()) return run_neg_bench(opt);
    if (state->parsed()) return run_state(opt);
  } catch (const kent::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

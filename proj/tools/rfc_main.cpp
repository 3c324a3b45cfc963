// rfc: file-level tool for the systematic rateless code with sparse parities.
// Subcommands: encode, decode, repair, simulate.
// Exit codes: 0 success, 2 decode/repair failure (mathematically singular),
// 3 I/O or format error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "rfc/codec.hpp"
#include "rfc/error.hpp"
#include "rfc/repair.hpp"
#include "rfc/shard.hpp"
#include "rfc/sim.hpp"

namespace fs = std::filesystem;
using rfc::Errc;
using rfc::Error;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDecodeFailure = 2;
constexpr int kExitIoOrFormat = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::RankDeficient:
    case Errc::NoLocalGroup:
    case Errc::MissingFootprintSymbol:
      return kExitDecodeFailure;
    default:
      return kExitIoOrFormat;
  }
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    if (text.starts_with("0x") || text.starts_with("0X")) {
      return std::stoull(text.substr(2), nullptr, 16);
    }
    return std::stoull(text, nullptr, 10);
  } catch (const std::exception&) {
    rfc::raise(Errc::ConfigInvalid, "bad seed: " + text);
  }
}

// c as "6", "9/2" or a decimal like "4.5"
std::pair<std::uint32_t, std::uint32_t> parse_rational(const std::string& text) {
  try {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      const auto num = std::stoul(text.substr(0, slash));
      const auto den = std::stoul(text.substr(slash + 1));
      if (num == 0 || den == 0) throw std::invalid_argument("zero");
      return {static_cast<std::uint32_t>(num), static_cast<std::uint32_t>(den)};
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      std::uint64_t den = 1;
      for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
      const std::uint64_t num = std::stoull(digits);
      if (num == 0) throw std::invalid_argument("zero");
      const std::uint64_t g = std::gcd(num, den);
      return {static_cast<std::uint32_t>(num / g), static_cast<std::uint32_t>(den / g)};
    }
    const auto num = std::stoul(text);
    if (num == 0) throw std::invalid_argument("zero");
    return {static_cast<std::uint32_t>(num), 1};
  } catch (const std::exception&) {
    rfc::raise(Errc::ConfigInvalid, "bad rational constant: " + text);
  }
}

// "start:end:step" (inclusive) or a single value
std::vector<double> parse_grid(const std::string& text) {
  try {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return {std::stod(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("missing step");
    const double start = std::stod(text.substr(0, c1));
    const double end = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (step <= 0.0 || end < start) throw std::invalid_argument("bad range");
    const auto count = static_cast<std::size_t>(std::llround((end - start) / step)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + static_cast<double>(i) * step;
    return grid;
  } catch (const std::exception&) {
    rfc::raise(Errc::ConfigInvalid, "bad grid (want start:end:step): " + text);
  }
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) rfc::raise(Errc::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) rfc::raise(Errc::IoError, "cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) rfc::raise(Errc::IoError, "write failed: " + path.string());
}

rfc::shard::ShardHeader read_header_only(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) rfc::raise(Errc::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes(rfc::shard::kHeaderSize);
  is.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (is.gcount() != static_cast<std::streamsize>(bytes.size())) {
    rfc::raise(Errc::HeaderMismatch, "header truncated: " + path.string());
  }
  return rfc::shard::parse(bytes);
}

void emit_warnings(const rfc::code::CodeConfig& cfg) {
  for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << "\n";
}

std::ostream& open_output(std::ofstream& file, const std::string& out) {
  if (out.empty() || out == "-") return std::cout;
  file.open(out, std::ios::trunc);
  if (!file) rfc::raise(Errc::IoError, "cannot open " + out + " for writing");
  return file;
}

struct EncodeArgs {
  std::string input;
  std::string out_dir;
  std::uint32_t k = 0;
  double rate = 0.5;
  std::string c = "6";
  std::string seed;
  std::string field = "gf256";
  std::string log_base = "natural";
  std::uint64_t extend = 0;
};

rfc::code::CodeConfig config_from_flags(std::uint32_t k, const std::string& c,
                                        const std::string& field,
                                        const std::string& log_base,
                                        std::uint64_t seed) {
  rfc::code::CodeConfig cfg;
  cfg.k = k;
  std::tie(cfg.c_num, cfg.c_den) = parse_rational(c);
  if (field == "gf256") {
    cfg.field = rfc::galois::FieldSpec::gf256();
  } else if (field == "gf65536") {
    cfg.field = rfc::galois::FieldSpec::gf65536();
  } else {
    rfc::raise(Errc::ConfigInvalid, "field must be gf256 or gf65536");
  }
  if (log_base == "natural") {
    cfg.log_base = rfc::code::LogBase::Natural;
  } else if (log_base == "base2") {
    cfg.log_base = rfc::code::LogBase::Base2;
  } else {
    rfc::raise(Errc::ConfigInvalid, "log-base must be natural or base2");
  }
  cfg.master_seed = seed;
  cfg.validate();
  return cfg;
}

void write_one_shard(const fs::path& dir, const rfc::code::CodeConfig& cfg,
                     const rfc::codec::SourceBlock& block, std::uint64_t index,
                     std::uint64_t file_len, std::ofstream& manifest) {
  const auto symbol = rfc::codec::encode_symbol(cfg, block, rfc::code::ColumnId{index});
  const auto header = rfc::shard::ShardHeader::from_config(
      cfg, rfc::code::ColumnId{index}, block.symbol_size, file_len);
  const std::string name = rfc::shard::shard_filename(index);
  rfc::shard::write_shard(dir / name, header, symbol.payload);
  rfc::shard::ManifestEntry entry{name, index, symbol.payload.size(),
                                  rfc::shard::crc32(symbol.payload)};
  manifest << rfc::shard::manifest_line(entry) << "\n";
}

int cmd_encode(const EncodeArgs& args) {
  const fs::path out_dir(args.out_dir);
  fs::create_directories(out_dir);
  const std::vector<std::uint8_t> input = read_file(args.input);

  if (args.extend > 0) {
    // Config comes from the existing shard set; the input must be the file
    // that produced it.
    const fs::path manifest_path = out_dir / "manifest.txt";
    std::ifstream mf(manifest_path);
    if (!mf) rfc::raise(Errc::IoError, "no manifest at " + manifest_path.string());
    std::string line;
    std::uint64_t max_index = 0;
    std::string any_name;
    while (std::getline(mf, line)) {
      if (line.empty()) continue;
      const auto entry = rfc::shard::parse_manifest_line(line);
      max_index = std::max(max_index, entry.index);
      any_name = entry.name;
    }
    if (any_name.empty()) rfc::raise(Errc::IoError, "manifest is empty");

    const auto header = read_header_only(out_dir / any_name);
    if (!args.seed.empty() && parse_seed(args.seed) != header.master_seed) {
      rfc::raise(Errc::HeaderMismatch, "--seed does not match the existing shard set");
    }
    if (input.size() != header.original_file_len) {
      rfc::raise(Errc::HeaderMismatch, "input length differs from the encoded file");
    }
    const rfc::code::CodeConfig cfg = header.to_config();
    const auto block = rfc::codec::make_source_block(cfg, input, header.symbol_size);

    std::ofstream manifest(manifest_path, std::ios::app);
    for (std::uint64_t i = 0; i < args.extend; ++i) {
      write_one_shard(out_dir, cfg, block, max_index + 1 + i, input.size(), manifest);
    }
    std::cerr << "extended with " << args.extend << " shards after index "
              << max_index << "\n";
    return kExitOk;
  }

  if (args.k == 0) rfc::raise(Errc::ConfigInvalid, "--k is required");
  if (!(args.rate > 0.0) || args.rate > 1.0) {
    rfc::raise(Errc::ConfigInvalid, "--rate must be in (0, 1]");
  }
  std::uint64_t seed;
  if (args.seed.empty()) {
    seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
           std::random_device{}();
    std::cerr << "note: no --seed given, using 0x" << std::hex << seed << std::dec
              << "\n";
  } else {
    seed = parse_seed(args.seed);
  }
  const rfc::code::CodeConfig cfg =
      config_from_flags(args.k, args.c, args.field, args.log_base, seed);
  emit_warnings(cfg);

  const unsigned eb = cfg.field->element_bytes();
  std::uint64_t symbol_size = (input.size() + cfg.k - 1) / cfg.k;
  symbol_size = std::max<std::uint64_t>(symbol_size, eb);
  symbol_size = (symbol_size + eb - 1) / eb * eb;
  const auto block = rfc::codec::make_source_block(
      cfg, input, static_cast<std::uint32_t>(symbol_size));

  const auto n = static_cast<std::uint64_t>(std::llround(cfg.k / args.rate));
  std::ofstream manifest(out_dir / "manifest.txt", std::ios::trunc);
  if (!manifest) rfc::raise(Errc::IoError, "cannot write manifest");
  for (std::uint64_t i = 0; i < n; ++i) {
    write_one_shard(out_dir, cfg, block, i, input.size(), manifest);
  }
  std::cerr << "wrote " << n << " shards (k=" << cfg.k
            << ", d(k)=" << rfc::code::degree(cfg) << ", symbol_size=" << symbol_size
            << ") to " << out_dir.string() << "\n";
  return kExitOk;
}

std::vector<fs::path> collect_shard_paths(const std::vector<std::string>& sources) {
  std::vector<fs::path> paths;
  for (const auto& src : sources) {
    const fs::path p(src);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.path().extension() == ".rfc") paths.push_back(entry.path());
      }
    } else if (fs::exists(p)) {
      paths.push_back(p);
    } else {
      rfc::raise(Errc::IoError, "no such file or directory: " + src);
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

int cmd_decode(const std::vector<std::string>& sources, const std::string& out) {
  const auto paths = collect_shard_paths(sources);
  if (paths.empty()) rfc::raise(Errc::IoError, "no shards found");

  std::optional<rfc::shard::ShardHeader> first;
  std::vector<rfc::codec::EncodedSymbol> received;
  for (const auto& path : paths) {
    auto [header, payload] = rfc::shard::read_shard(path);
    if (!first) {
      first = header;
    } else if (!first->same_stream(header)) {
      rfc::raise(Errc::HeaderMismatch, "shard " + path.string() +
                                           " belongs to a different encoding");
    }
    received.push_back(rfc::codec::EncodedSymbol{
        rfc::code::ColumnId{header.column_index}, std::move(payload)});
  }

  const rfc::code::CodeConfig cfg = first->to_config();
  const rfc::codec::DecodeResult res = rfc::codec::decode(cfg, received);
  if (!res.ok()) {
    std::cerr << "decode failed: "
              << (res.report.outcome == rfc::codec::DecodeOutcome::NotEnoughSymbols
                      ? "not enough symbols"
                      : "rank deficient")
              << " (symbols=" << res.report.symbols_used
              << ", rank=" << res.report.rank << "/" << cfg.k
              << ", missing_rows=" << res.report.missing_rows.size() << ")\n";
    return kExitDecodeFailure;
  }

  std::vector<std::uint8_t> bytes(res.block->data.begin(),
                                  res.block->data.begin() +
                                      static_cast<std::ptrdiff_t>(first->original_file_len));
  write_file(out, bytes);
  std::cerr << "decoded " << bytes.size() << " bytes from " << received.size()
            << " shards (peeled=" << res.report.peel_count
            << ", eliminated=" << res.report.elimination_dim << ")\n";
  return kExitOk;
}

int cmd_repair(const std::string& dir_arg, std::uint64_t target,
               const std::string& out) {
  const fs::path dir(dir_arg);
  if (!fs::is_directory(dir)) rfc::raise(Errc::IoError, "not a directory: " + dir_arg);

  // Available shards by index; the target itself is ignored if still present.
  std::map<std::uint64_t, fs::path> present;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".rfc") continue;
    const auto header = read_header_only(entry.path());
    if (header.column_index != target) present[header.column_index] = entry.path();
  }
  if (present.empty()) rfc::raise(Errc::IoError, "no usable shards in " + dir_arg);

  const auto base = read_header_only(present.begin()->second);
  for (const auto& [idx, path] : present) {
    const auto h = read_header_only(path);
    if (!base.same_stream(h)) {
      rfc::raise(Errc::HeaderMismatch, "shard " + path.string() +
                                           " belongs to a different encoding");
    }
  }
  const rfc::code::CodeConfig cfg = base.to_config();
  const std::uint32_t limit = rfc::code::degree(cfg) + 1;

  std::size_t reads = 0;
  auto read_payload = [&](std::uint64_t index) {
    ++reads;
    return rfc::shard::read_shard(present.at(index)).second;
  };

  std::vector<std::uint8_t> payload;
  if (target >= cfg.k) {
    // Parity: recompute from its systematic support.
    const auto col = rfc::code::parity_column(cfg, rfc::code::ColumnId{target});
    for (const auto& e : col.entries) {
      if (!present.contains(e.row)) {
        rfc::raise(Errc::NoLocalGroup,
                   "systematic shard " + std::to_string(e.row) + " missing");
      }
    }
    rfc::repair::PayloadMap sys;
    for (const auto& e : col.entries) sys[e.row] = read_payload(e.row);
    payload = rfc::repair::repair_parity(cfg, rfc::code::ColumnId{target}, sys);
  } else {
    // Systematic: use a covering parity whose footprint is fully present.
    std::vector<rfc::code::ColumnId> parity_ids;
    for (const auto& [idx, path] : present) {
      if (idx >= cfg.k) parity_ids.push_back(rfc::code::ColumnId{idx});
    }
    auto groups = rfc::repair::find_covering_parities(
        cfg, static_cast<std::uint32_t>(target), parity_ids);
    std::sort(groups.begin(), groups.end(),
              [](const rfc::repair::LocalGroup& a, const rfc::repair::LocalGroup& b) {
                return a.footprint.size() < b.footprint.size();
              });
    const rfc::repair::LocalGroup* usable = nullptr;
    for (const auto& g : groups) {
      const bool complete = std::all_of(
          g.footprint.begin(), g.footprint.end(),
          [&](const rfc::code::ParityEntry& e) { return present.contains(e.row); });
      if (complete) {
        usable = &g;
        break;
      }
    }
    if (usable == nullptr) {
      rfc::raise(Errc::NoLocalGroup,
                 "no covering parity with a complete footprint; fall back to decode");
    }
    const auto parity_payload = read_payload(usable->parity_id.index);
    rfc::repair::PayloadMap footprint;
    for (const auto& e : usable->footprint) footprint[e.row] = read_payload(e.row);
    payload = rfc::repair::repair_symbol(*cfg.field, *usable, parity_payload, footprint);
  }

  const auto header = rfc::shard::ShardHeader::from_config(
      cfg, rfc::code::ColumnId{target}, base.symbol_size, base.original_file_len);
  const fs::path out_path =
      out.empty() ? dir / rfc::shard::shard_filename(target) : fs::path(out);
  rfc::shard::write_shard(out_path, header, payload);
  std::cout << "repaired shard " << target << " reading " << reads
            << " shards (locality bound d(k)+1 = " << limit << ")\n";
  return kExitOk;
}

struct SimArgs {
  std::uint32_t k = 100;
  std::string c = "6";
  std::string field = "gf256";
  std::string log_base = "natural";
  std::string seed = "0";
  double rate = 0.5;
  std::string pe = "0.1:0.5:0.05";
  std::string eps = "0:0.3:0.05";
  double r = 1.0;
  std::size_t seeds = 50;
  std::size_t instances = 200;
  std::size_t trials = 100;
  std::size_t xtrials = 500;
  std::string s_list = "0";
  double xeps = 0.0;
  unsigned threads = 0;
  std::string out;
};

int cmd_simulate_sweep(const SimArgs& args, rfc::sim::SweepMode mode) {
  rfc::sim::ErasureExperiment exp;
  exp.cfg = config_from_flags(args.k, args.c, args.field, args.log_base, 0);
  exp.rate = args.rate;
  exp.mode = mode;
  exp.instances = args.instances;
  exp.trials = args.trials;
  exp.sweep_seed = parse_seed(args.seed);
  exp.threads = args.threads;
  emit_warnings(exp.cfg);

  const auto grid =
      parse_grid(mode == rfc::sim::SweepMode::IidErasure ? args.pe : args.eps);
  const auto result = rfc::sim::run_erasure_sweep(exp, grid);

  std::ofstream file;
  rfc::sim::write_csv(open_output(file, args.out), result);
  std::cerr << "swept " << grid.size() << " grid points in " << result.wall_seconds
            << " s (log_base=" << args.log_base << ")\n";
  return kExitOk;
}

int cmd_simulate_coverage(const SimArgs& args) {
  const auto cfg = config_from_flags(args.k, args.c, args.field, args.log_base, 0);
  const auto stats =
      rfc::sim::coverage_stats(cfg, args.r, args.seeds, parse_seed(args.seed));
  std::ofstream file;
  stats.write_csv(open_output(file, args.out));
  std::cerr << "mean |P_u| = " << stats.mean << " (bounds [" << stats.bound_lo << ", "
            << stats.bound_hi << "], stderr " << stats.stderr_mean
            << "), min = " << stats.min_coverage << "\n";
  return kExitOk;
}

int cmd_simulate_availability(const SimArgs& args) {
  const auto cfg = config_from_flags(args.k, args.c, args.field, args.log_base,
                                     parse_seed(args.seed));
  const auto parities = static_cast<std::uint64_t>(std::llround(args.r * cfg.k));
  std::vector<rfc::code::ColumnId> ids;
  ids.reserve(parities);
  for (std::uint64_t j = 0; j < parities; ++j) {
    ids.push_back(rfc::code::ColumnId{cfg.k + j});
  }
  const auto report = rfc::repair::availability_report(cfg, ids);
  std::ofstream file;
  report.write_csv(open_output(file, args.out));
  std::cerr << "availability: min = " << report.min_availability
            << ", mean = " << report.mean_availability << " over " << parities
            << " parities\n";
  return kExitOk;
}

int cmd_simulate_crosscheck(const SimArgs& args) {
  const auto cfg = config_from_flags(args.k, args.c, args.field, args.log_base, 0);
  std::vector<std::uint32_t> s_values;
  std::stringstream ss(args.s_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) s_values.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (s_values.empty()) rfc::raise(Errc::ConfigInvalid, "--s list is empty");
  const auto report = rfc::sim::matching_rank_crosscheck(
      cfg, args.xeps, s_values, args.xtrials, parse_seed(args.seed));
  std::ofstream file;
  report.write_csv(open_output(file, args.out));
  std::cerr << "forward direction "
            << (report.forward_direction_holds() ? "holds" : "VIOLATED")
            << "; singular fraction given matching = "
            << report.singular_given_matching() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systematic rateless erasure code with logarithmic-degree parities"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "chunk a file into shards");
  encode->add_option("input", enc.input, "input file")->required();
  encode->add_option("--k", enc.k, "input symbol count");
  encode->add_option("--rate", enc.rate, "target rate; n = round(k/rate)");
  encode->add_option("--c", enc.c, "sparsity constant (integer, a/b or decimal)");
  encode->add_option("--seed", enc.seed, "64-bit master seed (decimal or 0x hex)");
  encode->add_option("--field", enc.field, "gf256 or gf65536");
  encode->add_option("--log-base", enc.log_base, "natural or base2");
  encode->add_option("--out", enc.out_dir, "output directory")->required();
  encode->add_option("--extend", enc.extend,
                     "append this many extra parity shards to an existing set");

  std::vector<std::string> dec_sources;
  std::string dec_out;
  auto* decode = app.add_subcommand("decode", "reconstruct the file from shards");
  decode->add_option("sources", dec_sources, "shard directory or shard files")
      ->required();
  decode->add_option("--out", dec_out, "output file")->required();

  std::string rep_dir, rep_out;
  std::uint64_t rep_target = 0;
  auto* repair = app.add_subcommand("repair", "regenerate one missing shard");
  repair->add_option("dir", rep_dir, "shard directory")->required();
  repair->add_option("--target", rep_target, "column index to regenerate")->required();
  repair->add_option("--out", rep_out, "output path (default: dir/shard_<i>.rfc)");

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "monte-carlo experiments");
  simulate->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", sim.k, "input symbol count");
    sub->add_option("--c", sim.c, "sparsity constant");
    sub->add_option("--field", sim.field, "gf256 or gf65536");
    sub->add_option("--log-base", sim.log_base, "natural or base2");
    sub->add_option("--seed", sim.seed, "sweep seed");
    sub->add_option("--threads", sim.threads, "worker threads (0 = all)");
    sub->add_option("--out", sim.out, "csv output file (default stdout)");
  };
  auto* erasure = simulate->add_subcommand("erasure-sweep",
                                           "decoding failure vs erasure probability");
  add_common(erasure);
  erasure->add_option("--rate", sim.rate, "code rate");
  erasure->add_option("--pe", sim.pe, "erasure grid start:end:step");
  erasure->add_option("--instances", sim.instances, "code instances per point");
  erasure->add_option("--trials", sim.trials, "trials per instance");

  auto* overhead = simulate->add_subcommand("overhead-sweep",
                                            "decoding failure vs overhead epsilon");
  add_common(overhead);
  overhead->add_option("--rate", sim.rate, "code rate");
  overhead->add_option("--eps", sim.eps, "overhead grid start:end:step");
  overhead->add_option("--instances", sim.instances, "code instances per point");
  overhead->add_option("--trials", sim.trials, "trials per instance");

  auto* coverage = simulate->add_subcommand("coverage", "|P_u| distribution");
  add_common(coverage);
  coverage->add_option("--r", sim.r, "parities per input symbol");
  coverage->add_option("--seeds", sim.seeds, "independent code instances");

  auto* avail = simulate->add_subcommand("availability",
                                         "pairwise-isolated group counts per symbol");
  add_common(avail);
  avail->add_option("--r", sim.r, "parities per input symbol");

  auto* crosscheck = simulate->add_subcommand("crosscheck",
                                              "matching vs rank contingency table");
  add_common(crosscheck);
  crosscheck->add_option("--eps", sim.xeps, "overhead epsilon");
  crosscheck->add_option("--s", sim.s_list, "comma list of systematic column counts");
  crosscheck->add_option("--trials", sim.xtrials, "samples per s value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIoOrFormat;
  }

  try {
    if (encode->parsed()) return cmd_encode(enc);
    if (decode->parsed()) return cmd_decode(dec_sources, dec_out);
    if (repair->parsed()) return cmd_repair(rep_dir, rep_target, rep_out);
    if (simulate->parsed()) {
      if (erasure->parsed()) {
        return cmd_simulate_sweep(sim, rfc::sim::SweepMode::IidErasure);
      }
      if (overhead->parsed()) {
        return cmd_simulate_sweep(sim, rfc::sim::SweepMode::FixedSubset);
      }
      if (coverage->parsed()) return cmd_simulate_coverage(sim);
      if (avail->parsed()) return cmd_simulate_availability(sim);
      if (crosscheck->parsed()) return cmd_simulate_crosscheck(sim);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoOrFormat;
  }
  return kExitOk;
}

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "npsp/audit.hpp"
#include "npsp/engine.hpp"
#include "npsp/io.hpp"
#include "npsp/oracle.hpp"
#include "npsp/replay.hpp"
#include "npsp/runtime.hpp"

namespace {

using namespace npsp;
using io::ordered_json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
  int parties = 3;
  std::size_t length = 10;
  std::uint64_t seed = 0;
  long long data_min = 0;
  long long data_max = 2;
  std::string mode = "full";
  std::string strategy = "pool";
  std::string modulus;
  unsigned threads = 1;
  std::vector<std::string> inputs;
  std::string format = "json";
  bool verify = false;
  bool replay_appendix_b = false;
  std::string transcript_path;
  bool audit_payloads = false;
  bool run_audit = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_data = true) {
  cmd->add_option("-p,--parties", o.parties, "number of data-owning parties");
  cmd->add_option("-m,--length", o.length, "vector length");
  cmd->add_option("-s,--seed", o.seed, "RNG seed");
  cmd->add_option("--mode", o.mode, "execution mode: full|shortcut")
      ->check(CLI::IsMember({"full", "shortcut"}));
  cmd->add_option("--strategy", o.strategy, "commodity strategy: pool|reuse")
      ->check(CLI::IsMember({"pool", "reuse"}));
  cmd->add_option("--modulus", o.modulus, "optional prime modulus (decimal)");
  cmd->add_option("--threads", o.threads, "parallel subprotocol resolution");
  if (with_data) {
    cmd->add_option("--data-min", o.data_min, "synthetic data lower bound (incl.)");
    cmd->add_option("--data-max", o.data_max, "synthetic data upper bound (excl.)");
    cmd->add_option("-i,--input", o.inputs,
                    "per-party vector files (CSV or .json), exactly n of them");
    cmd->add_flag("--replay-appendix-b", o.replay_appendix_b,
                  "replay the published 3-party walkthrough (fixed shares, v2=3)");
  }
  cmd->add_option("-f,--format", o.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

DiagVec load_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open input file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return io::diagvec_from_json(nlohmann::json::parse(buf.str()));
  }
  return io::diagvec_from_csv(buf.str());
}

std::vector<DiagVec> build_data(const CommonOpts& o) {
  if (o.replay_appendix_b && o.inputs.empty()) {
    return appendix_b_fixture().data;
  }
  if (!o.inputs.empty()) {
    std::vector<DiagVec> data;
    for (const std::string& path : o.inputs) {
      data.push_back(load_vector(path));
    }
    return data;
  }
  std::vector<DiagVec> data;
  Rng rng(derive_seed(o.seed, "data"));
  for (int i = 0; i < o.parties; ++i) {
    std::vector<Scalar> entries(o.length);
    for (auto& e : entries) {
      e = rng.uniform(Scalar(o.data_min), Scalar(o.data_max));
    }
    data.emplace_back(std::move(entries));
  }
  return data;
}

SimulationConfig build_config(const CommonOpts& o) {
  SimulationConfig cfg;
  cfg.mode = o.mode == "full" ? ExecutionMode::FULL_RECURSIVE : ExecutionMode::SHORTCUT;
  cfg.strategy = o.strategy == "pool" ? CommodityStrategy::NAIVE_POOL
                                      : CommodityStrategy::PARTY_REUSE;
  cfg.rand.seed = o.seed;
  cfg.threads = o.threads;
  if (!o.modulus.empty()) {
    cfg.modulus = Modulus{io::scalar_from_decimal(o.modulus)};
  }
  if (o.replay_appendix_b) {
    const ReplayFixture fixture = appendix_b_fixture();
    cfg.root_shares = fixture.shares;
    cfg.root_v2 = fixture.v2;
  }
  return cfg;
}

void emit(const ordered_json& doc, const std::string& format) {
  if (format == "csv") {
    // flat single-row CSV: header line then values
    std::string header, row;
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object() || value.is_array()) continue;
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      row += value.is_string() ? value.get<std::string>() : value.dump();
    }
    std::cout << header << '\n' << row << '\n';
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

int cmd_run(const CommonOpts& o, bool force_verify) {
  const std::vector<DiagVec> data = build_data(o);
  const SimulationConfig cfg = build_config(o);

  const auto start = std::chrono::steady_clock::now();
  const SimulationOutput out = run_simulation(data, cfg);
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "elapsed_ms=" << elapsed.count() << '\n';

  ordered_json doc;
  doc["command"] = "run";
  doc["parties"] = data.size();
  doc["length"] = data.front().size();
  doc["seed"] = o.seed;
  doc["mode"] = io::to_string(cfg.mode);
  doc["strategy"] = io::to_string(cfg.strategy);
  if (cfg.modulus) doc["modulus"] = io::to_decimal(cfg.modulus->p);
  doc["result"] = io::to_decimal(out.result.value);
  doc["protocols"] = out.result.stats.protocols;
  doc["messages"] = out.result.stats.messages;

  bool ok = true;
  if (o.verify || force_verify) {
    const Scalar expected = oracle::plaintext_scalar_product(data);
    doc["oracle"] = io::to_decimal(expected);
    doc["verified"] = (expected == out.result.value);
    ok = ok && expected == out.result.value;
  }
  if (o.run_audit) {
    const audit::AuditReport report = audit::audit_transcript(out.transcript);
    doc["audit"] = io::audit_report_to_json(report);
    ok = ok && report.clean();
  }
  if (!o.transcript_path.empty()) {
    std::ofstream ts(o.transcript_path);
    ts << io::transcript_to_jsonl(out.transcript, o.audit_payloads);
  }
  emit(doc, o.format);
  return ok ? 0 : kExitVerifyFailure;
}

int cmd_counts(int max_parties, const std::string& format) {
  if (max_parties < 2) {
    throw ArgumentError("counts: need --max-parties >= 2");
  }
  if (format == "csv") {
    std::cout << "n,protocols,messages\n";
    for (int n = 2; n <= max_parties; ++n) {
      std::cout << n << ',' << count_protocols(n) << ',' << count_messages(n)
                << '\n';
    }
  } else {
    ordered_json rows = ordered_json::array();
    for (int n = 2; n <= max_parties; ++n) {
      ordered_json row;
      row["n"] = n;
      row["protocols"] = io::to_decimal(count_protocols(n));
      row["messages"] = io::to_decimal(count_messages(n));
      rows.push_back(std::move(row));
    }
    std::cout << rows.dump(2) << '\n';
  }
  return 0;
}

int cmd_bench(const CommonOpts& o, int parties_min, int parties_max,
              std::vector<std::size_t> lengths, int reps) {
  if (lengths.empty()) lengths = {100, 1000, 10000};
  if (o.format == "csv") {
    std::cout << "parties,length,mean_ms\n";
  }
  ordered_json rows = ordered_json::array();
  for (int n = parties_min; n <= parties_max; ++n) {
    for (std::size_t m : lengths) {
      CommonOpts local = o;
      local.parties = n;
      local.length = m;
      const std::vector<DiagVec> data = build_data(local);
      SimulationConfig cfg = build_config(local);
      cfg.record_payloads = false;
      double total_ms = 0;
      for (int rep = 0; rep < reps; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        run_simulation(data, cfg);
        total_ms += std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      }
      const double mean = total_ms / reps;
      if (o.format == "csv") {
        std::cout << n << ',' << m << ',' << mean << '\n';
      } else {
        ordered_json row;
        row["parties"] = n;
        row["length"] = m;
        row["mean_ms"] = mean;
        rows.push_back(std::move(row));
      }
    }
  }
  if (o.format != "csv") {
    std::cout << rows.dump(2) << '\n';
  }
  return 0;
}

int cmd_attack(const CommonOpts& o, std::vector<int> coalition_ids,
               bool with_commodity, int target_id) {
  const std::vector<DiagVec> data = build_data(o);
  SimulationConfig cfg = build_config(o);
  cfg.record_payloads = true;
  const SimulationOutput out = run_simulation(data, cfg);

  const int n = static_cast<int>(data.size());
  std::vector<PartyId> members;
  for (int id : coalition_ids) members.push_back(PartyId{id});
  if (with_commodity) members.push_back(pool_server(n));
  const audit::CollusionCoalition coalition =
      audit::make_coalition(out.transcript, members);
  const PartyId target{target_id};
  const std::optional<DiagVec> recovered =
      audit::collusion_recover(coalition, target);

  // preconditions: the commodity is in the coalition and some other data
  // owner in it saw the target's masked matrix
  bool has_owner = false;
  for (int id : coalition_ids) {
    if (id != target_id && id >= 0 && id < n) has_owner = true;
  }
  const bool preconditions = with_commodity && has_owner;

  ordered_json doc;
  doc["command"] = "attack";
  doc["seed"] = o.seed;
  doc["target"] = target_id;
  doc["commodity_in_coalition"] = with_commodity;
  doc["recovered"] = recovered ? io::diagvec_to_json(*recovered) : ordered_json();
  doc["success"] = recovered.has_value();
  doc["matches_input"] =
      recovered.has_value() && target_id >= 0 && target_id < n &&
      *recovered == data[target_id];
  emit(doc, o.format);
  if (preconditions && (!recovered || *recovered != data[target_id])) {
    return kExitVerifyFailure;
  }
  return 0;
}

int cmd_expand(int parties, const std::string& format) {
  const std::vector<oracle::FormalMonomial> monomials =
      oracle::symbolic_expand_protocol(parties);
  if (format == "json") {
    ordered_json terms = ordered_json::array();
    for (const auto& mono : monomials) {
      ordered_json term;
      term["coefficient"] = io::to_decimal(mono.coefficient);
      std::string factors;
      for (int i = 0; i < parties; ++i) {
        if (mono.d_mask >> i & 1u) factors += "D" + std::to_string(i + 1);
        if (mono.r_mask >> i & 1u) factors += "R" + std::to_string(i + 1);
      }
      term["factors"] = factors;
      terms.push_back(std::move(term));
    }
    std::cout << terms.dump(2) << '\n';
  } else {
    for (const auto& mono : monomials) {
      std::cout << (mono.coefficient < 0 ? "- " : "+ ");
      Scalar c = abs(mono.coefficient);
      if (c != 1) std::cout << c << "*";
      std::cout << "phi(";
      bool first = true;
      for (int i = 0; i < parties; ++i) {
        if (mono.d_mask >> i & 1u) {
          std::cout << (first ? "" : "*") << "D" << i + 1;
          first = false;
        }
        if (mono.r_mask >> i & 1u) {
          std::cout << (first ? "" : "*") << "R" << i + 1;
          first = false;
        }
      }
      std::cout << ")\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-preserving n-party scalar product protocol"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "execute the protocol");
  add_common(run, run_opts);
  run->add_flag("--verify", run_opts.verify, "cross-check against the plaintext oracle");
  run->add_flag("--audit", run_opts.run_audit, "audit the transcript");
  run->add_option("--transcript", run_opts.transcript_path,
                  "write the transcript as JSON Lines");
  run->add_flag("--audit-payloads", run_opts.audit_payloads,
                "include full payloads in the transcript export");

  CommonOpts verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "run with oracle verification forced");
  add_common(verify, verify_opts);

  int max_parties = 7;
  std::string counts_format = "csv";
  CLI::App* counts = app.add_subcommand("counts", "protocol/message growth table");
  counts->add_option("-n,--max-parties", max_parties, "largest party count");
  counts->add_option("-f,--format", counts_format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CommonOpts bench_opts;
  int bench_min = 2, bench_max = 5, bench_reps = 3;
  std::vector<std::size_t> bench_lengths;
  CLI::App* bench = app.add_subcommand("bench", "wall-time growth table");
  add_common(bench, bench_opts);
  bench->add_option("--parties-min", bench_min, "smallest party count");
  bench->add_option("--parties-max", bench_max, "largest party count");
  bench->add_option("--lengths", bench_lengths, "vector lengths to measure");
  bench->add_option("--reps", bench_reps, "repetitions per cell");

  CommonOpts attack_opts;
  std::vector<int> coalition_ids;
  bool without_commodity = false;
  int target_id = 0;
  CLI::App* attack = app.add_subcommand("attack", "collusion attack demonstrator");
  add_common(attack, attack_opts);
  attack->add_option("--coalition", coalition_ids, "data-owner ids in the coalition");
  attack->add_flag("--without-commodity", without_commodity,
                   "exclude the commodity server from the coalition");
  attack->add_option("--target", target_id, "party whose data to recover");

  int expand_parties = 3;
  std::string expand_format = "text";
  CLI::App* expand = app.add_subcommand("expand", "dump the symbolic expansion");
  expand->add_option("-p,--parties", expand_parties, "party count (2..6)");
  expand->add_option("-f,--format", expand_format, "output format: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts, false);
    if (verify->parsed()) return cmd_run(verify_opts, true);
    if (counts->parsed()) return cmd_counts(max_parties, counts_format);
    if (bench->parsed())
      return cmd_bench(bench_opts, bench_min, bench_max, bench_lengths, bench_reps);
    if (attack->parsed())
      return cmd_attack(attack_opts, coalition_ids, !without_commodity, target_id);
    if (expand->parsed()) return cmd_expand(expand_parties, expand_format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return 0;
}

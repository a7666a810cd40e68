// End-to-end acceptance checks. Each check prints one [PASS]/[FAIL] line;
// the binary exits nonzero if any check fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "npsp/audit.hpp"
#include "npsp/engine.hpp"
#include "npsp/io.hpp"
#include "npsp/oracle.hpp"
#include "npsp/replay.hpp"
#include "npsp/runtime.hpp"

using namespace npsp;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int failures = 0;

struct Check {
  std::string name;
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << "    failed: " << what << '\n';
    }
  }

  ~Check() {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
    if (!ok) {
      std::cout << detail.str();
      ++failures;
    }
    std::cout.flush();
  }
};

std::vector<DiagVec> make_data(std::mt19937_64& rng, int n, std::size_t m,
                                 long long range) {
  std::vector<DiagVec> data;
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> entries(m);
    for (auto& e : entries) e = rng() % range;
    data.emplace_back(std::move(entries));
  }
  return data;
}

void check_golden_replay() {
  Check c{"1. three-party worked-example replay (exact intermediates, < 1 s)"};
  const auto start = Clock::now();

  const ReplayFixture f = appendix_b_fixture();
  std::vector<DiagVec> masked, r_mats;
  std::vector<Scalar> r_scalars;
  for (std::size_t i = 0; i < 3; ++i) {
    masked.push_back(mask(f.data[i], f.shares.pairs[i].r_mat));
    r_mats.push_back(f.shares.pairs[i].r_mat);
    r_scalars.push_back(f.shares.pairs[i].r_scalar);
  }
  c.expect(f.shares.pairs[0].r_scalar == 8015322, "r_1 forced value");
  c.expect(f.shares.pairs[1].r_scalar == 10543269, "r_2 forced value");
  c.expect(f.shares.pairs[2].r_scalar == 30084533, "r_3 solved value");

  const auto us = compute_u_values(masked, f.data[0], r_mats, r_scalars, f.v2);
  c.expect(us.size() == 3 && us[0] == 16264468, "u_1 == 16264468");
  c.expect(us.size() == 3 && us[1] == -11597126, "u_2 == -11597126");
  c.expect(us.size() == 3 && us[2] == -400691, "u_3 == -400691");

  const DiagVec& r1 = f.shares.pairs[0].r_mat;
  const DiagVec& r2 = f.shares.pairs[1].r_mat;
  const DiagVec& r3 = f.shares.pairs[2].r_mat;
  c.expect(solve_single_d_shortcut(f.data[0], hadamard(r2, r3)) == 232946,
           "first leftover == 232946");
  c.expect(solve_single_d_shortcut(f.data[1], hadamard(r1, r3)) == 96135,
           "second leftover == 96135");
  c.expect(solve_single_d_shortcut(f.data[2], hadamard(r1, r2)) == 71608,
           "third leftover == 71608");

  SimulationConfig cfg;
  cfg.rand.seed = 2024;
  cfg.root_shares = f.shares;
  cfg.root_v2 = f.v2;
  const SimulationOutput out = run_simulation(f.data, cfg);
  std::optional<Scalar> h;
  for (const Message& msg : out.transcript) {
    if (msg.protocol_id == "root" && msg.kind == MessageKind::SUBRESULT) {
      h = msg.payload.scalar;
    }
  }
  c.expect(h.has_value() && *h == -2, "closing value h == -2");
  c.expect(out.result.value == 1, "final result == 1");

  const double elapsed = ms_since(start);
  c.expect(elapsed < 1000.0, "runtime < 1 s");
  c.detail << "    (" << elapsed << " ms)\n";
}

void check_count_conformance() {
  Check c{"2. growth-table conformance, closed form and executed (n in [2,5])"};
  const auto start = Clock::now();

  const std::tuple<int, long long, long long> table[] = {
      {2, 1, 6},       {3, 4, 30},       {4, 29, 224},
      {5, 336, 2600},  {6, 5687, 44008}, {7, 132294, 1023736}};
  for (const auto& [n, p, m] : table) {
    c.expect(count_protocols(n) == p,
             "count_protocols(" + std::to_string(n) + ")");
    c.expect(count_messages(n) == m,
             "count_messages(" + std::to_string(n) + ")");
  }

  std::mt19937_64 rng(2);
  RandomnessConfig rc;
  rc.seed = 7;
  for (int n = 2; n <= 5; ++n) {
    const std::vector<DiagVec> data = make_data(rng, n, 10, 1000);
    const ProtocolResult r = n_party_protocol(
        data, ExecutionMode::FULL_RECURSIVE, rc, CommodityStrategy::NAIVE_POOL);
    c.expect(Scalar(r.stats.protocols) == count_protocols(n),
             "executed protocol count, n=" + std::to_string(n));
    c.expect(Scalar(r.stats.messages) == count_messages(n),
             "executed message count, n=" + std::to_string(n));
    c.expect(r.value == oracle::plaintext_scalar_product(data),
             "executed value, n=" + std::to_string(n));
  }
  c.expect(ms_since(start) < 60000.0, "runtime < 1 min");
}

void check_oracle_equivalence() {
  Check c{"3. oracle equivalence on 520 randomized instances"};
  std::mt19937_64 rng(3);
  const Modulus mod{(Scalar(1) << 89) - 1};
  // weighted toward small n; larger instances use shorter vectors to keep
  // full recursion affordable
  const int plan[] = {2, 2, 2, 3, 3, 3, 4, 4, 5, 6};
  int done = 0;
  for (int trial = 0; trial < 520; ++trial) {
    const int n = plan[rng() % 10];
    const std::size_t m_cap = n <= 4 ? 200 : (n == 5 ? 100 : 40);
    const std::size_t m = 1 + rng() % m_cap;
    const ExecutionMode mode = trial % 2 == 0 ? ExecutionMode::FULL_RECURSIVE
                                              : ExecutionMode::SHORTCUT;
    const CommodityStrategy strategy = trial % 4 < 2
                                           ? CommodityStrategy::NAIVE_POOL
                                           : CommodityStrategy::PARTY_REUSE;
    const std::optional<Modulus> maybe_mod =
        trial % 3 == 0 ? std::optional<Modulus>(mod) : std::nullopt;
    const std::vector<DiagVec> data = make_data(rng, n, m, 1000);
    RandomnessConfig rc;
    rc.seed = rng();
    const ProtocolResult r = n_party_protocol(data, mode, rc, strategy, maybe_mod);
    if (r.value != oracle::plaintext_scalar_product(data)) {
      c.expect(false, "mismatch at trial " + std::to_string(trial) +
                          " (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
      return;
    }
    ++done;
  }
  c.expect(done == 520, "all instances verified");
  c.detail << "    (" << done << " instances)\n";
}

void check_symbolic_certification() {
  Check c{"4. symbolic expansion matches the hand expansion and the leftover set"};
  // three parties: + D1D2D3 - D1R2R3 - D2R1R3 - D3R1R2
  const auto three = oracle::symbolic_expand_protocol(3);
  const std::vector<oracle::FormalMonomial> expected{
      {Scalar(-1), 0b001, 0b110},
      {Scalar(-1), 0b010, 0b101},
      {Scalar(-1), 0b100, 0b011},
      {Scalar(1), 0b111, 0b000},
  };
  c.expect(three == expected, "n=3 term-for-term");

  for (int n = 3; n <= 5; ++n) {
    const auto monomials = oracle::symbolic_expand_protocol(n);
    const std::uint32_t all = (1u << n) - 1;
    std::vector<SubprotocolSpec> negatives_as_specs;
    for (const auto& mono : monomials) {
      c.expect((mono.d_mask & mono.r_mask) == 0 &&
                   (mono.d_mask | mono.r_mask) == all,
               "monomial masks partition the parties, n=" + std::to_string(n));
      c.expect(mono.coefficient != 0, "zero coefficients dropped");
      const int x = std::popcount(mono.r_mask);
      c.expect(x != 1, "no single-R monomials, n=" + std::to_string(n));
      if (x == 0) {
        c.expect(mono.coefficient == 1, "pure-D coefficient is +1");
      } else {
        c.expect(mono.coefficient == -(x - 1),
                 "x-R coefficient is -(x-1), n=" + std::to_string(n));
        SubprotocolSpec spec;
        for (int i = 0; i < n; ++i) {
          if (mono.d_mask >> i & 1u) spec.data_indices.push_back(i);
          if (mono.r_mask >> i & 1u) spec.rand_indices.push_back(i);
        }
        spec.multiplicity = x - 1;
        negatives_as_specs.push_back(std::move(spec));
      }
    }
    std::vector<SubprotocolSpec> specs = enumerate_subprotocols(n);
    auto by_masks = [](const SubprotocolSpec& a, const SubprotocolSpec& b) {
      return a.data_indices != b.data_indices ? a.data_indices < b.data_indices
                                              : a.rand_indices < b.rand_indices;
    };
    std::sort(specs.begin(), specs.end(), by_masks);
    std::sort(negatives_as_specs.begin(), negatives_as_specs.end(), by_masks);
    c.expect(specs == negatives_as_specs,
             "leftover enumeration matches the expansion, n=" + std::to_string(n));
  }
}

void check_transcript_audits() {
  Check c{"5. honest transcripts audit clean; injected faults are isolated"};
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 6; ++n) {
    SimulationConfig cfg;
    cfg.rand.seed = 500 + n;
    cfg.record_payloads = false;
    const SimulationOutput out =
        run_simulation(make_data(rng, n, 3, 100), cfg);
    c.expect(audit::audit_transcript(out.transcript).clean(),
             "honest run clean, n=" + std::to_string(n));
  }

  auto fires_exactly = [&c](Transcript t, const Message& fault,
                            audit::ViolationKind kind, const std::string& label) {
    t.push_back(fault);
    const audit::AuditReport report = audit::audit_transcript(t);
    c.expect(!report.violations.empty(), label + ": violation reported");
    for (const audit::Violation& v : report.violations) {
      c.expect(v.kind == kind, label + ": only the intended class fires");
    }
  };

  SimulationConfig cfg;
  cfg.rand.seed = 555;
  cfg.mode = ExecutionMode::SHORTCUT;
  cfg.record_payloads = false;
  const SimulationOutput out = run_simulation(make_data(rng, 3, 3, 100), cfg);

  const Message* shortcut = nullptr;
  for (const Message& msg : out.transcript) {
    if (msg.kind == MessageKind::SHORTCUT_PRODUCT) shortcut = &msg;
  }
  c.expect(shortcut != nullptr, "shortcut message present");
  if (shortcut) {
    Payload scalar_payload;
    scalar_payload.size = 1;
    fires_exactly(out.transcript,
                  Message{shortcut->protocol_id, shortcut->receiver,
                          shortcut->sender, MessageKind::SUBRESULT,
                          scalar_payload},
                  audit::ViolationKind::SHORTCUT_CONFIDENTIALITY,
                  "result leaked to product owner");
  }
  Payload scalar_payload;
  scalar_payload.size = 1;
  fires_exactly(out.transcript,
                Message{"root", PartyId{1}, pool_server(3), MessageKind::U_VALUE,
                        scalar_payload},
                audit::ViolationKind::COMMODITY_BLINDNESS,
                "chain value sent to the dealer");
  Payload mat_payload;
  mat_payload.size = 3;
  fires_exactly(out.transcript,
                Message{"root", pool_server(3), PartyId{0},
                        MessageKind::MASKED_MATRIX, mat_payload},
                audit::ViolationKind::ROLE_EXCLUSIVITY,
                "dealer acting as data owner");
}

void check_collusion() {
  Check c{"6. dealer-plus-neighbour coalition recovers inputs; without the dealer it fails"};
  std::mt19937_64 rng(6);
  for (int n = 3; n <= 5; ++n) {
    SimulationConfig cfg;
    cfg.rand.seed = 600 + n;
    const std::vector<DiagVec> data = make_data(rng, n, 5, 1000);
    const SimulationOutput out = run_simulation(data, cfg);
    for (int target = 0; target < n; ++target) {
      const int owner = (target + 1) % n;
      const auto with_dealer = audit::make_coalition(
          out.transcript, {PartyId{owner}, pool_server(n)});
      const auto recovered =
          audit::collusion_recover(with_dealer, PartyId{target});
      c.expect(recovered.has_value() && *recovered == data[target],
               "recovery, n=" + std::to_string(n) +
                   ", target=" + std::to_string(target));
      const auto without_dealer =
          audit::make_coalition(out.transcript, {PartyId{owner}});
      c.expect(!audit::collusion_recover(without_dealer, PartyId{target})
                    .has_value(),
               "no recovery without the dealer, n=" + std::to_string(n) +
                   ", target=" + std::to_string(target));
    }
  }
}

void check_runtime_growth() {
  Check c{"7. wall time grows with the party count on the measurement grid"};
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  for (std::size_t m : {std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
    double previous = 0.0;
    for (int n = 2; n <= 5; ++n) {
      SimulationConfig cfg;
      cfg.rand.seed = 700 + n;
      cfg.record_payloads = false;
      const std::vector<DiagVec> data = make_data(rng, n, m, 1 << 30);
      const int reps = m <= 1000 ? 3 : 1;
      double best = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        const auto t0 = Clock::now();
        run_simulation(data, cfg);
        const double elapsed = ms_since(t0);
        if (rep == 0 || elapsed < best) best = elapsed;
      }
      c.detail << "    n=" << n << " m=" << m << ": " << best << " ms\n";
      c.expect(best > previous, "time(n=" + std::to_string(n) +
                                    ") > time(n=" + std::to_string(n - 1) +
                                    ") at m=" + std::to_string(m));
      previous = best;
    }
  }
  const double total = ms_since(start);
  c.expect(total < 600000.0, "grid completes in under 10 minutes");
  c.detail << "    (grid total " << total << " ms)\n";
}

void check_determinism() {
  Check c{"8. identical configs give byte-identical outputs, threaded included"};
  std::mt19937_64 rng(8);
  const std::vector<DiagVec> data = make_data(rng, 5, 20, 1000);

  auto document = [&](unsigned threads) {
    SimulationConfig cfg;
    cfg.rand.seed = 808;
    cfg.threads = threads;
    const SimulationOutput out = run_simulation(data, cfg);
    io::ordered_json doc;
    doc["result"] = io::to_decimal(out.result.value);
    doc["protocols"] = out.result.stats.protocols;
    doc["messages"] = out.result.stats.messages;
    return doc.dump() + "\n" + io::transcript_to_jsonl(out.transcript, true);
  };

  const std::string first = document(1);
  c.expect(first == document(1), "sequential rerun is byte-identical");
  c.expect(first == document(4), "threaded run matches the sequential bytes");
  c.expect(document(4) == document(4), "threaded rerun is byte-identical");
}

}  // namespace

int main() {
  check_golden_replay();
  check_count_conformance();
  check_oracle_equivalence();
  check_symbolic_certification();
  check_transcript_audits();
  check_collusion();
  check_runtime_growth();
  check_determinism();

  if (failures > 0) {
    std::cout << failures << " acceptance check(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance checks passed\n";
  return 0;
}

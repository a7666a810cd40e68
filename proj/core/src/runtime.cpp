#include "npsp/runtime.hpp"

#include <future>
#include <utility>

#include "npsp/oracle.hpp"

namespace npsp {

namespace {

struct Participant {
  PartyId id;
  const DiagVec* data;  // raw D_i, or the R-product for an inherited server
};

struct InstanceOutput {
  Scalar value;  // reduced representative when a modulus is active
  Transcript transcript;
  std::uint64_t protocols = 0;
};

class Executor {
 public:
  Executor(const SimulationConfig& cfg, int root_n) : cfg_(cfg), root_n_(root_n) {
    if (cfg_.modulus) {
      // uniform randomness over the residue ring
      effective_rand_ = cfg_.rand;
      effective_rand_.entry_lo = 0;
      effective_rand_.entry_hi = cfg_.modulus->p;
      effective_rand_.scalar_lo = 0;
      effective_rand_.scalar_hi = cfg_.modulus->p;
    } else {
      effective_rand_ = cfg_.rand;
    }
  }

  InstanceOutput run(const std::string& path, const std::vector<Participant>& parties,
                     PartyId commodity, const std::vector<PartyId>& chain,
                     int depth) const;

 private:
  void record(Transcript& t, const std::string& path, PartyId sender,
              PartyId receiver, MessageKind kind, const DiagVec* mat,
              const Scalar* scalar) const {
    Payload p;
    p.size = mat ? mat->size() : 1;
    if (cfg_.record_payloads) {
      if (mat) p.mat = *mat;
      if (scalar) p.scalar = *scalar;
    }
    t.push_back(Message{path, sender, receiver, kind, std::move(p)});
  }

  Scalar draw_v2(const std::string& path) const {
    Rng rng(derive_seed(derive_seed(effective_rand_.seed, path), "v2"));
    return rng.uniform(effective_rand_.scalar_lo, effective_rand_.scalar_hi);
  }

  const SimulationConfig& cfg_;
  int root_n_;
  RandomnessConfig effective_rand_;
};

InstanceOutput Executor::run(const std::string& path,
                             const std::vector<Participant>& parties,
                             PartyId commodity, const std::vector<PartyId>& chain,
                             int depth) const {
  const std::size_t s = parties.size();
  const std::size_t m = parties.front().data->size();
  const std::optional<Modulus>& mod = cfg_.modulus;
  InstanceOutput out;
  out.protocols = 1;

  ShareSet shares;
  if (depth == 0 && cfg_.root_shares) {
    shares = *cfg_.root_shares;
    if (shares.pairs.size() != s) {
      throw ArgumentError("injected root share set has wrong party count");
    }
    for (const SharePair& p : shares.pairs) {
      if (p.r_mat.size() != m) {
        throw DimensionError("injected root share matrix length mismatch");
      }
    }
  } else {
    RandomnessConfig rc = effective_rand_;
    rc.seed = derive_seed(effective_rand_.seed, path);
    shares = generate_share_set(static_cast<int>(s), m, rc);
  }
  for (std::size_t i = 0; i < s; ++i) {
    record(out.transcript, path, commodity, parties[i].id, MessageKind::SHARE_PAIR,
           &shares.pairs[i].r_mat, &shares.pairs[i].r_scalar);
  }

  std::vector<DiagVec> masked(s);
  for (std::size_t i = 0; i < s; ++i) {
    masked[i] = reduce(mask(*parties[i].data, shares.pairs[i].r_mat), mod);
  }

  Scalar v2;
  if (depth == 0 && cfg_.root_v2) {
    v2 = *cfg_.root_v2;
  } else {
    v2 = draw_v2(path);
  }

  if (s == 2) {
    // base protocol: party 1 owns v2 and the result
    record(out.transcript, path, parties[0].id, parties[1].id,
           MessageKind::MASKED_MATRIX, &masked[0], nullptr);
    record(out.transcript, path, parties[1].id, parties[0].id,
           MessageKind::MASKED_MATRIX, &masked[1], nullptr);
    const Scalar u = reduce(phi(masked[0], *parties[1].data) +
                                shares.pairs[1].r_scalar - v2,
                            mod);
    record(out.transcript, path, parties[1].id, parties[0].id,
           MessageKind::U_VALUE, nullptr, &u);
    const Scalar v1 = reduce(u - phi(shares.pairs[0].r_mat, masked[1]) +
                                 shares.pairs[0].r_scalar,
                             mod);
    record(out.transcript, path, parties[0].id, parties[1].id,
           MessageKind::SUBRESULT, nullptr, &v1);
    out.value = reduce(v1 + v2, mod);
  } else {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        if (i == j) continue;
        record(out.transcript, path, parties[i].id, parties[j].id,
               MessageKind::MASKED_MATRIX, &masked[i], nullptr);
      }
    }

    std::vector<DiagVec> r_mats(s);
    std::vector<Scalar> r_scalars(s);
    for (std::size_t i = 0; i < s; ++i) {
      r_mats[i] = shares.pairs[i].r_mat;
      r_scalars[i] = shares.pairs[i].r_scalar;
    }
    const std::vector<Scalar> us =
        compute_u_values(masked, *parties[0].data, r_mats, r_scalars, v2, mod);
    for (std::size_t i = 0; i + 1 < s; ++i) {
      record(out.transcript, path, parties[i].id, parties[i + 1].id,
             MessageKind::U_VALUE, nullptr, &us[i]);
    }

    const std::vector<SubprotocolSpec> specs =
        enumerate_subprotocols(static_cast<int>(s));

    struct ChildTask {
      std::string id;
      int multiplicity;
      bool shortcut;
      DiagVec r_product;
      // recursive case
      std::vector<Participant> parties;
      int inherited_seat = -1;
      PartyId commodity;
      std::vector<PartyId> chain;
      // shortcut case
      PartyId owner;
      const DiagVec* owner_data = nullptr;
    };
    std::vector<PartyId> party_ids;
    for (const Participant& p : parties) party_ids.push_back(p.id);
    std::vector<ChildTask> tasks;
    tasks.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const SubprotocolSpec& spec = specs[k];
      ChildTask task;
      task.id = path + "/" + std::to_string(k);
      task.multiplicity = spec.multiplicity;
      std::vector<const DiagVec*> r_factors;
      for (int j : spec.rand_indices) r_factors.push_back(&shares.pairs[j].r_mat);
      task.r_product = reduce(hadamard(r_factors), mod);
      task.shortcut = cfg_.mode == ExecutionMode::SHORTCUT &&
                      spec.data_indices.size() == 1;
      if (task.shortcut) {
        task.owner = parties[spec.data_indices[0]].id;
        task.owner_data = parties[spec.data_indices[0]].data;
      } else {
        // the parent server joins as data owner of the R-product; it must
        // not end up holding the child's result, so it never takes the
        // result-owner seat (first for s >= 3, second for s == 2)
        for (int a : spec.data_indices) {
          task.parties.push_back(parties[a]);
        }
        Participant inherited{commodity, nullptr};
        if (task.parties.size() == 1) {
          task.parties.insert(task.parties.begin(), inherited);
          task.inherited_seat = 0;
        } else {
          task.parties.push_back(inherited);
          task.inherited_seat = static_cast<int>(task.parties.size()) - 1;
        }
        try {
          task.commodity = assign_commodity(spec, party_ids, commodity, root_n_,
                                            chain, cfg_.strategy);
        } catch (const ConfigError& e) {
          throw ConfigError("subprotocol " + task.id + ": " + e.what());
        }
        task.chain = chain;
        task.chain.push_back(task.commodity);
      }
      tasks.push_back(std::move(task));
      // repoint the inherited seat at the r_product now owned by the vector
      // element (reserve above keeps these addresses stable)
      ChildTask& stored = tasks.back();
      if (stored.inherited_seat >= 0) {
        stored.parties[stored.inherited_seat].data = &stored.r_product;
      }
    }

    // Children are independent; resolve them, in parallel at the top level
    // when requested. Transcript fragments are spliced in task order either
    // way, so the result and the transcript are schedule-independent.
    std::vector<InstanceOutput> child_outputs(tasks.size());
    auto resolve = [&](std::size_t k) {
      const ChildTask& task = tasks[k];
      InstanceOutput child;
      if (task.shortcut) {
        child.value = solve_single_d_shortcut(*task.owner_data, task.r_product, mod);
        record(child.transcript, task.id, commodity, task.owner,
               MessageKind::SHORTCUT_PRODUCT, &task.r_product, nullptr);
        child.protocols = 0;
      } else {
        child = run(task.id, task.parties, task.commodity, task.chain, depth + 1);
      }
      return child;
    };
    if (depth == 0 && cfg_.threads > 1) {
      std::vector<std::future<InstanceOutput>> futures;
      futures.reserve(tasks.size());
      for (std::size_t k = 0; k < tasks.size(); ++k) {
        futures.push_back(std::async(std::launch::async, resolve, k));
      }
      for (std::size_t k = 0; k < tasks.size(); ++k) {
        child_outputs[k] = futures[k].get();
      }
    } else {
      for (std::size_t k = 0; k < tasks.size(); ++k) {
        child_outputs[k] = resolve(k);
      }
    }

    Scalar h = us.back();
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      h += Scalar(tasks[k].multiplicity) * child_outputs[k].value;
      out.protocols += child_outputs[k].protocols;
      out.transcript.insert(out.transcript.end(),
                            std::make_move_iterator(child_outputs[k].transcript.begin()),
                            std::make_move_iterator(child_outputs[k].transcript.end()));
    }
    h = reduce(h, mod);
    record(out.transcript, path, parties[s - 1].id, parties[0].id,
           MessageKind::SUBRESULT, nullptr, &h);
    out.value = reduce(h + v2, mod);
  }

  if (cfg_.debug_verify) {
    std::vector<const DiagVec*> data;
    for (const Participant& p : parties) data.push_back(p.data);
    const Scalar expected = reduce(oracle::plaintext_scalar_product(data), mod);
    if (out.value != expected) {
      throw std::logic_error("debug verification failed at " + path);
    }
  }
  return out;
}

}  // namespace

PartyId assign_commodity(const SubprotocolSpec& spec,
                         const std::vector<PartyId>& parent_parties,
                         PartyId parent_commodity, int root_n,
                         const std::vector<PartyId>& chain,
                         CommodityStrategy strategy) {
  const int child_size = static_cast<int>(spec.data_indices.size()) + 1;
  if (strategy == CommodityStrategy::NAIVE_POOL) {
    return pool_server(child_size);
  }
  auto is_owner = [&](PartyId p) {
    if (p == parent_commodity) return true;
    for (int a : spec.data_indices) {
      const PartyId owner =
          parent_parties.empty() ? PartyId{a} : parent_parties[a];
      if (p == owner) return true;
    }
    return false;
  };
  for (int id = 0; id < root_n; ++id) {
    const PartyId candidate{id};
    if (is_owner(candidate)) continue;
    bool used = false;
    for (PartyId c : chain) {
      if (c == candidate) {
        used = true;
        break;
      }
    }
    if (!used) return candidate;
  }
  throw ConfigError("no eligible commodity server");
}

SimulationOutput run_simulation(const std::vector<DiagVec>& data,
                                const SimulationConfig& cfg) {
  const int n = static_cast<int>(data.size());
  if (n < 2) {
    throw ArgumentError("run_simulation: need at least 2 parties");
  }
  const std::size_t m = data.front().size();
  for (const DiagVec& v : data) {
    if (v.size() != m) {
      throw DimensionError("run_simulation: party vector length mismatch");
    }
  }
  if (m < 1) {
    throw ArgumentError("run_simulation: need length >= 1");
  }

  Executor ex(cfg, n);
  std::vector<Participant> parties;
  parties.reserve(n);
  for (int i = 0; i < n; ++i) {
    parties.push_back(Participant{PartyId{i}, &data[i]});
  }
  const PartyId root_commodity = pool_server(n);
  InstanceOutput root =
      ex.run("root", parties, root_commodity, {root_commodity}, 0);

  SimulationOutput out;
  out.result.value = cfg.modulus ? cfg.modulus->lift(root.value) : root.value;
  out.result.stats.protocols = root.protocols;
  out.result.stats.messages = root.transcript.size();
  out.transcript = std::move(root.transcript);
  return out;
}

MessageTally message_counts(const Transcript& t) {
  MessageTally tally;
  for (const Message& msg : t) {
    ++tally.per_protocol[msg.protocol_id];
    ++tally.total;
  }
  return tally;
}

}  // namespace npsp

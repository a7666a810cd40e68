#include "npsp/engine.hpp"

#include <map>

#include "npsp/runtime.hpp"

namespace npsp {

std::vector<SubprotocolSpec> enumerate_subprotocols(int n) {
  if (n < 3) {
    throw ArgumentError("enumerate_subprotocols: a 2-party protocol has no leftovers");
  }
  std::vector<SubprotocolSpec> specs;
  for (int x = 2; x <= n - 1; ++x) {
    // all x-sized subsets of [0, n) on the R side, lexicographic
    std::vector<int> subset(x);
    for (int i = 0; i < x; ++i) subset[i] = i;
    for (;;) {
      SubprotocolSpec spec;
      spec.rand_indices = subset;
      std::size_t next = 0;
      for (int i = 0; i < n; ++i) {
        if (next < subset.size() && subset[next] == i) {
          ++next;
        } else {
          spec.data_indices.push_back(i);
        }
      }
      spec.multiplicity = x - 1;
      specs.push_back(std::move(spec));

      int pos = x - 1;
      while (pos >= 0 && subset[pos] == n - x + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < x; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  return specs;
}

namespace {

void validate_share_set(const ShareSet& shares, std::size_t n, std::size_t m) {
  if (shares.pairs.size() != n) {
    throw ArgumentError("share set party count mismatch");
  }
  std::vector<const DiagVec*> mats;
  Scalar sum = 0;
  for (const SharePair& p : shares.pairs) {
    if (p.r_mat.size() != m) {
      throw DimensionError("share matrix length mismatch");
    }
    mats.push_back(&p.r_mat);
    sum += p.r_scalar;
  }
  if (sum != phi(mats)) {
    throw ArgumentError("share set sum identity violated");
  }
}

}  // namespace

ProtocolResult two_party_protocol(const DiagVec& a, const DiagVec& b,
                                  const ShareSet& shares, const Scalar& v2,
                                  const std::optional<Modulus>& mod) {
  if (a.size() != b.size()) {
    throw DimensionError("two_party_protocol: length mismatch");
  }
  validate_share_set(shares, 2, a.size());
  const DiagVec& r_a = shares.pairs[0].r_mat;
  const DiagVec& r_b = shares.pairs[1].r_mat;
  const Scalar& ra = shares.pairs[0].r_scalar;
  const Scalar& rb = shares.pairs[1].r_scalar;

  const DiagVec a_hat = reduce(mask(a, r_a), mod);
  const DiagVec b_hat = reduce(mask(b, r_b), mod);
  const Scalar u = reduce(phi(a_hat, b) + rb - v2, mod);
  const Scalar v1 = reduce(u - phi(r_a, b_hat) + ra, mod);
  Scalar value = reduce(v1 + v2, mod);
  if (mod) value = mod->lift(value);
  return ProtocolResult{std::move(value), ProtocolStats{1, 6}};
}

std::vector<Scalar> compute_u_values(std::span<const DiagVec> masked,
                                     const DiagVec& raw_first,
                                     std::span<const DiagVec> r_mats,
                                     std::span<const Scalar> r_scalars,
                                     const Scalar& v2,
                                     const std::optional<Modulus>& mod) {
  const std::size_t n = masked.size();
  if (n < 2 || r_mats.size() != n || r_scalars.size() != n) {
    throw ArgumentError("compute_u_values: inconsistent party counts");
  }
  const std::size_t m = raw_first.size();
  for (const DiagVec& v : masked) {
    if (v.size() != m) throw DimensionError("compute_u_values: length mismatch");
  }
  for (const DiagVec& v : r_mats) {
    if (v.size() != m) throw DimensionError("compute_u_values: length mismatch");
  }

  std::vector<Scalar> us;
  us.reserve(n);
  {
    std::vector<const DiagVec*> factors;
    for (std::size_t i = 1; i < n; ++i) factors.push_back(&masked[i]);
    factors.push_back(&raw_first);
    us.push_back(reduce(phi(factors) + Scalar(n - 1) * r_scalars[0] - v2, mod));
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<const DiagVec*> factors;
    for (std::size_t x = 0; x < n; ++x) {
      if (x != i) factors.push_back(&masked[x]);
    }
    factors.push_back(&r_mats[i]);
    us.push_back(
        reduce(us.back() - phi(factors) + Scalar(n - 1) * r_scalars[i], mod));
  }
  return us;
}

Scalar compute_u_chain(std::span<const DiagVec> masked, const DiagVec& raw_first,
                       std::span<const DiagVec> r_mats,
                       std::span<const Scalar> r_scalars, const Scalar& v2,
                       const std::optional<Modulus>& mod) {
  return compute_u_values(masked, raw_first, r_mats, r_scalars, v2, mod).back();
}

Scalar solve_single_d_shortcut(const DiagVec& d, const DiagVec& r_product,
                               const std::optional<Modulus>& mod) {
  if (d.size() != r_product.size()) {
    throw DimensionError("solve_single_d_shortcut: length mismatch");
  }
  return reduce(phi(d, r_product), mod);
}

ProtocolResult n_party_protocol(const std::vector<DiagVec>& data,
                                ExecutionMode mode, const RandomnessConfig& cfg,
                                CommodityStrategy strategy,
                                const std::optional<Modulus>& mod) {
  SimulationConfig sim;
  sim.mode = mode;
  sim.strategy = strategy;
  sim.rand = cfg;
  sim.modulus = mod;
  sim.record_payloads = false;
  return run_simulation(data, sim).result;
}

namespace {

Scalar binomial(int n, int k) {
  Scalar c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
  }
  return c;
}

Scalar count_impl(int n, std::map<int, Scalar>& memo, bool messages) {
  if (n < 2) {
    throw ArgumentError("counts: need n >= 2");
  }
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Scalar total = (n == 2) ? Scalar(6) : Scalar(n) + Scalar(n) * n;
  if (!messages) total = 1;
  if (n > 2) {
    for (int x = 2; x <= n - 1; ++x) {
      total += binomial(n, x) * count_impl(n - x + 1, memo, messages);
    }
  }
  memo[n] = total;
  return total;
}

}  // namespace

Scalar count_protocols(int n) {
  std::map<int, Scalar> memo;
  return count_impl(n, memo, false);
}

Scalar count_messages(int n) {
  std::map<int, Scalar> memo;
  return count_impl(n, memo, true);
}

}  // namespace npsp

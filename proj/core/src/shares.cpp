#include "npsp/shares.hpp"

#include <string>

namespace npsp {

Scalar Rng::uniform(const Scalar& lo, const Scalar& hi) {
  if (hi <= lo) {
    throw ArgumentError("uniform: empty range");
  }
  const Scalar width = hi - lo;
  // number of 32-bit limbs covering width
  std::size_t bits = 0;
  for (Scalar w = width - 1; w > 0; w >>= 1) ++bits;
  const std::size_t limbs = (bits + 31) / 32;
  for (;;) {
    Scalar v = 0;
    for (std::size_t i = 0; i < limbs; ++i) {
      v <<= 32;
      v |= static_cast<std::uint32_t>(eng_());
    }
    if (bits % 32 != 0) {
      v >>= (32 - bits % 32);
    }
    if (v < width) {
      return lo + v;
    }
  }
}

std::uint64_t derive_seed(std::uint64_t parent_seed, std::string_view child_id) {
  // FNV-1a over the parent seed bytes followed by the child id.
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) {
    mix(static_cast<std::uint8_t>(parent_seed >> (8 * i)));
  }
  for (char c : child_id) {
    mix(static_cast<std::uint8_t>(c));
  }
  return h;
}

ShareSet generate_share_set(int n, std::size_t m, const RandomnessConfig& cfg) {
  if (n < 2) {
    throw ArgumentError("generate_share_set: need at least 2 parties");
  }
  if (m < 1) {
    throw ArgumentError("generate_share_set: need length >= 1");
  }
  if (cfg.entry_lo < 0) {
    throw ArgumentError("generate_share_set: entry range must be non-negative");
  }
  Rng rng(cfg.seed);
  ShareSet set;
  set.seed = cfg.seed;
  set.pairs.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> entries(m);
    for (std::size_t k = 0; k < m; ++k) {
      entries[k] = rng.uniform(cfg.entry_lo, cfg.entry_hi);
    }
    set.pairs[i].r_mat = DiagVec(std::move(entries));
  }
  std::vector<const DiagVec*> mats;
  mats.reserve(n);
  for (const SharePair& p : set.pairs) mats.push_back(&p.r_mat);
  Scalar forced = phi(mats);
  for (int i = 0; i < n - 1; ++i) {
    set.pairs[i].r_scalar = rng.uniform(cfg.scalar_lo, cfg.scalar_hi);
    forced -= set.pairs[i].r_scalar;
  }
  set.pairs[n - 1].r_scalar = std::move(forced);
  return set;
}

ShareSet inject_share_set(std::vector<DiagVec> mats,
                          std::vector<std::optional<Scalar>> scalars) {
  if (mats.size() != scalars.size() || mats.size() < 2) {
    throw ArgumentError("inject_share_set: need one scalar slot per matrix");
  }
  std::size_t unset = mats.size();
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (!scalars[i]) {
      if (unset != mats.size()) {
        throw ArgumentError("inject_share_set: more than one unset slot");
      }
      unset = i;
    }
  }
  if (unset == mats.size()) {
    throw ArgumentError("inject_share_set: exactly one slot must be unset");
  }
  std::vector<const DiagVec*> ptrs;
  ptrs.reserve(mats.size());
  for (const DiagVec& v : mats) ptrs.push_back(&v);
  Scalar forced = phi(ptrs);
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (i != unset) forced -= *scalars[i];
  }
  ShareSet set;
  set.pairs.resize(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) {
    set.pairs[i].r_mat = std::move(mats[i]);
    set.pairs[i].r_scalar = (i == unset) ? forced : *scalars[i];
  }
  return set;
}

}  // namespace npsp

#include "npsp/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace npsp {
namespace oracle {

Scalar plaintext_scalar_product(const std::vector<const DiagVec*>& data) {
  if (data.empty()) {
    throw ArgumentError("plaintext_scalar_product: no operands");
  }
  const std::size_t m = data.front()->size();
  for (const DiagVec* v : data) {
    if (v->size() != m) {
      throw DimensionError("plaintext_scalar_product: length mismatch");
    }
  }
  std::vector<Scalar> acc(data.front()->entries());
  for (std::size_t j = 1; j < data.size(); ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      acc[k] *= (*data[j])[k];
    }
  }
  Scalar sum = 0;
  for (const Scalar& v : acc) sum += v;
  return sum;
}

Scalar plaintext_scalar_product(std::span<const DiagVec> data) {
  std::vector<const DiagVec*> ptrs;
  ptrs.reserve(data.size());
  for (const DiagVec& v : data) ptrs.push_back(&v);
  return plaintext_scalar_product(ptrs);
}

namespace {

// Formal multilinear polynomial keyed by (d_mask, r_mask).
using Poly = std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar>;

Poly single(std::uint32_t d_mask, std::uint32_t r_mask) {
  return Poly{{{d_mask, r_mask}, Scalar(1)}};
}

// Party i's masked matrix D_i + R_i as a two-term polynomial.
Poly masked_term(int i) {
  Poly p;
  p[{1u << i, 0u}] = 1;
  p[{0u, 1u << i}] = 1;
  return p;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      // parties in distinct factors are disjoint by construction
      out[{ka.first | kb.first, ka.second | kb.second}] += ca * cb;
    }
  }
  return out;
}

void add_scaled(Poly& target, const Poly& src, const Scalar& scale) {
  for (const auto& [k, c] : src) {
    target[k] += c * scale;
  }
}

}  // namespace

std::vector<FormalMonomial> symbolic_expand_protocol(int n) {
  if (n < 2 || n > 6) {
    throw ArgumentError("symbolic_expand_protocol: n must be in [2, 6]");
  }
  Poly result;
  if (n == 2) {
    // The base protocol is exact: u + v1-step algebra leaves only D1*D2.
    result = single(0b11u, 0u);
  } else {
    // u_1 = phi(prod_{i>=2} masked_i * D_1) + (n-1) r_1 - v2
    Poly term = single(1u << 0, 0u);
    for (int i = 1; i < n; ++i) {
      term = multiply(term, masked_term(i));
    }
    add_scaled(result, term, 1);
    // u_i = u_{i-1} - phi(prod_{x != i} masked_x * R_i) + (n-1) r_i
    for (int i = 1; i < n; ++i) {
      Poly sub = single(0u, 1u << i);
      for (int x = 0; x < n; ++x) {
        if (x == i) continue;
        sub = multiply(sub, masked_term(x));
      }
      add_scaled(result, sub, -1);
    }
    // (n-1) * sum(r_i) equals (n-1) * phi(prod R_i); fold it into the
    // pure-R monomial so the final set reflects u_n + v2 as a whole.
    const std::uint32_t all = (1u << n) - 1u;
    result[{0u, all}] += n - 1;
  }

  std::vector<FormalMonomial> out;
  for (auto& [k, c] : result) {
    if (c == 0) continue;
    out.push_back(FormalMonomial{std::move(c), k.first, k.second});
  }
  std::sort(out.begin(), out.end(), [](const FormalMonomial& a, const FormalMonomial& b) {
    return std::pair(a.d_mask, a.r_mask) < std::pair(b.d_mask, b.r_mask);
  });
  return out;
}

Scalar evaluate_monomials(const std::vector<FormalMonomial>& monomials,
                          std::span<const DiagVec> data,
                          std::span<const DiagVec> rand) {
  Scalar total = 0;
  for (const FormalMonomial& mono : monomials) {
    std::vector<const DiagVec*> factors;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (mono.d_mask >> i & 1u) factors.push_back(&data[i]);
      if (mono.r_mask >> i & 1u) factors.push_back(&rand[i]);
    }
    total += mono.coefficient * phi(factors);
  }
  return total;
}

}  // namespace oracle
}  // namespace npsp

#include "npsp/algebra.hpp"

namespace npsp {
namespace {

void check_same_length(const std::vector<const DiagVec*>& ms) {
  if (ms.empty()) {
    throw ArgumentError("empty operand sequence");
  }
  const std::size_t m = ms.front()->size();
  for (const DiagVec* v : ms) {
    if (v->size() != m) {
      throw DimensionError("operand length mismatch");
    }
  }
}

std::vector<const DiagVec*> to_ptrs(std::span<const DiagVec> ms) {
  std::vector<const DiagVec*> ptrs;
  ptrs.reserve(ms.size());
  for (const DiagVec& v : ms) ptrs.push_back(&v);
  return ptrs;
}

}  // namespace

Scalar phi(const std::vector<const DiagVec*>& ms) {
  check_same_length(ms);
  const std::size_t m = ms.front()->size();
  Scalar sum = 0;
  Scalar term;
  for (std::size_t k = 0; k < m; ++k) {
    term = (*ms.front())[k];
    for (std::size_t j = 1; j < ms.size(); ++j) {
      term *= (*ms[j])[k];
    }
    sum += term;
  }
  return sum;
}

Scalar phi(std::span<const DiagVec> ms) { return phi(to_ptrs(ms)); }

DiagVec hadamard(const std::vector<const DiagVec*>& xs) {
  check_same_length(xs);
  const std::size_t m = xs.front()->size();
  std::vector<Scalar> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    Scalar term = (*xs.front())[k];
    for (std::size_t j = 1; j < xs.size(); ++j) {
      term *= (*xs[j])[k];
    }
    out[k] = std::move(term);
  }
  return DiagVec(std::move(out));
}

DiagVec hadamard(std::span<const DiagVec> xs) { return hadamard(to_ptrs(xs)); }

DiagVec mask(const DiagVec& d, const DiagVec& r) {
  if (d.size() != r.size()) {
    throw DimensionError("mask: length mismatch");
  }
  std::vector<Scalar> out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    out[k] = d[k] + r[k];
  }
  return DiagVec(std::move(out));
}

DiagVec unmask(const DiagVec& masked, const DiagVec& r) {
  if (masked.size() != r.size()) {
    throw DimensionError("unmask: length mismatch");
  }
  std::vector<Scalar> out(masked.size());
  for (std::size_t k = 0; k < masked.size(); ++k) {
    out[k] = masked[k] - r[k];
  }
  return DiagVec(std::move(out));
}

DiagVec reduce(const DiagVec& v, const std::optional<Modulus>& mod) {
  if (!mod) return v;
  std::vector<Scalar> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[k] = mod->reduce(v[k]);
  }
  return DiagVec(std::move(out));
}

}  // namespace npsp

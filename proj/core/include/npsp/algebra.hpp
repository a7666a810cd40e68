#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "npsp/errors.hpp"

namespace npsp {

// Exact signed integer of unbounded magnitude. Products of n masked entries
// overflow 64 bits already at n=3, so all protocol arithmetic uses this.
using Scalar = boost::multiprecision::cpp_int;

// The diagonal of a diagonal matrix. Off-diagonal zeros are never
// materialized; every matrix operation the protocol needs reduces to an
// entrywise operation on diagonals.
class DiagVec {
 public:
  DiagVec() = default;
  explicit DiagVec(std::vector<Scalar> entries) : entries_(std::move(entries)) {}

  static DiagVec zeros(std::size_t m) { return DiagVec(std::vector<Scalar>(m, Scalar(0))); }
  static DiagVec ones(std::size_t m) { return DiagVec(std::vector<Scalar>(m, Scalar(1))); }

  std::size_t size() const { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  bool operator==(const DiagVec&) const = default;

 private:
  std::vector<Scalar> entries_;
};

// Sum of the diagonal of the product of the given diagonal matrices:
// sum over k of the product over j of ms[j][k].
Scalar phi(std::span<const DiagVec> ms);
Scalar phi(const std::vector<const DiagVec*>& ms);

// Entrywise product of diagonals.
DiagVec hadamard(std::span<const DiagVec> xs);
DiagVec hadamard(const std::vector<const DiagVec*>& xs);

// Entrywise sum; mask(d, r) - r == d exactly.
DiagVec mask(const DiagVec& d, const DiagVec& r);

// Entrywise difference, the inverse of mask.
DiagVec unmask(const DiagVec& masked, const DiagVec& r);

// convenience binary forms
inline Scalar phi(const DiagVec& a, const DiagVec& b) {
  return phi(std::vector<const DiagVec*>{&a, &b});
}
inline DiagVec hadamard(const DiagVec& a, const DiagVec& b) {
  return hadamard(std::vector<const DiagVec*>{&a, &b});
}

// Optional prime modulus. When active, intermediate protocol values live in
// [0, p) and the final result is lifted to the centered representative.
struct Modulus {
  Scalar p;

  Scalar reduce(const Scalar& v) const {
    Scalar r = v % p;
    if (r < 0) r += p;
    return r;
  }
  Scalar lift(const Scalar& v) const {
    Scalar r = reduce(v);
    if (r * 2 > p) r -= p;
    return r;
  }
};

// Reduces v when mod is set, returns it unchanged otherwise.
inline Scalar reduce(const Scalar& v, const std::optional<Modulus>& mod) {
  return mod ? mod->reduce(v) : v;
}

DiagVec reduce(const DiagVec& v, const std::optional<Modulus>& mod);

}  // namespace npsp

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace snfc {

/// A field element encoded as an integer in [0, q). For q = p^m the
/// encoding is sum_i c_i p^i, where c_i is the coefficient of x^i.
using Elem = std::uint32_t;

/// Finite field GF(p^m) with q <= 2^16.
///
/// Extension fields use the lexicographically smallest primitive monic
/// polynomial of degree m as modulus, so x generates the multiplicative group.
class Field {
 public:
  /// GF(2).
  Field();

  static Field make(std::uint32_t p, std::uint32_t m = 1);
  /// Smallest field whose order is a prime power strictly greater than `bound`.
  static Field smallest_above(std::uint64_t bound);
  /// Parses "p" or "p^m".
  static Field parse(std::string_view text);

  std::uint32_t characteristic() const noexcept;
  std::uint32_t degree() const noexcept;
  std::uint32_t order() const noexcept;
  /// Monic modulus coefficients c_0..c_m; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Multiplicative inverse; `a` must be nonzero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  bool contains(std::uint64_t value) const noexcept { return value < order(); }

  /// "p" or "p^m".
  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

  /// Arithmetic tables shared between copies of a field.
  struct Tables;

 private:
  explicit Field(std::shared_ptr<const Tables> tables) : t_(std::move(tables)) {}
  std::shared_ptr<const Tables> t_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace snfc

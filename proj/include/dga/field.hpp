#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace dga {

using Scalar = mpq_class;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported request for the given inputs (e.g. unit groups over Q).
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base field: either Q or F_p.
///
/// Every scalar is an mpq_class. Over F_p the canonical representative is an
/// integer in [0, p). Arithmetic is performed in Q and canonicalized with
/// `reduce`, which is sound because denominators produced from canonical
/// representatives are never divisible by p.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  static Field prime(std::int64_t p);

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }

  Scalar reduce(Scalar x) const;
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar from_int(long v) const { return reduce(Scalar(v)); }
  /// (-1)^k as a field element.
  Scalar sign(long k) const { return from_int((k % 2 == 0) ? 1 : -1); }

  /// "p/q" in lowest terms over Q; integer string in [0,p) over F_p.
  std::string format(const Scalar& a) const;
  /// Accepts "p/q", "n", or a plain integer; reduces into the field.
  Scalar parse(const std::string& text) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  Field(Kind k, std::int64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

}  // namespace dga

#include "dga/field.hpp"

namespace dga {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p))
    throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  if (p > (std::int64_t{1} << 30))
    throw ValidationError("characteristic too large");
  return Field(Kind::PrimeField, p);
}

Scalar Field::reduce(Scalar x) const {
  x.canonicalize();
  if (kind_ == Kind::Rationals) return x;
  mpz_class p(static_cast<long>(p_));
  mpz_class num = x.get_num() % p;
  mpz_class den = x.get_den() % p;
  if (den < 0) den += p;
  if (den == 0) throw std::domain_error("division by characteristic");
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * den_inv) % p;
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return reduce(Scalar(1) / a);
}

std::string Field::format(const Scalar& a) const {
  if (kind_ == Kind::PrimeField) return a.get_num().get_str();
  Scalar c = a;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Scalar Field::parse(const std::string& text) const {
  Scalar v;
  if (v.set_str(text, 10) != 0) throw ValidationError("malformed scalar '" + text + "'");
  if (v.get_den() == 0) throw ValidationError("zero denominator in '" + text + "'");
  if (kind_ == Kind::PrimeField && mpz_divisible_ui_p(v.get_den().get_mpz_t(),
                                                      static_cast<unsigned long>(p_)))
    throw ValidationError("scalar '" + text + "' has denominator divisible by p");
  return reduce(v);
}

std::string Field::name() const {
  return kind_ == Kind::Rationals ? "Q" : "F" + std::to_string(p_);
}

}  // namespace dga

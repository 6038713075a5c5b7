#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace germscope {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rat = mpq_class;
using BigInt = mpz_class;

/// Renders as `num` or `num/den`.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Exact d-th root of q in the rationals, if there is one. For even d the
/// non-negative root is returned.
inline std::optional<Rat> rational_root(const Rat& q, unsigned d) {
  if (d == 0) throw std::invalid_argument("rational_root: d must be positive");
  if (q == 0) return Rat(0);
  if (q < 0 && d % 2 == 0) return std::nullopt;
  BigInt num = abs(q.get_num());
  BigInt den = q.get_den();
  BigInt num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), num.get_mpz_t(), d) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), den.get_mpz_t(), d) == 0) return std::nullopt;
  Rat root(num_root, den_root);
  root.canonicalize();
  if (q < 0) root = -root;
  return root;
}

inline Rat pow(const Rat& base, unsigned e) {
  Rat result(1);
  for (unsigned i = 0; i < e; ++i) result *= base;
  return result;
}

}  // namespace germscope

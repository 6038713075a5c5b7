#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "monomial.hpp"

namespace germscope {

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

/// A multiplicative total order on monomials.
///
/// Local orders rank lower total degree higher, so `1 > x_i` for every
/// variable and the leading term of a polynomial sits in its lowest-degree
/// part. A block order compares the first `split` variables with one order
/// and breaks ties on the remaining variables with another.
class MonomialOrder {
 public:
  enum class Kind { GlobalDegRevLex, LocalNegDegRevLex, Block };

  static MonomialOrder global_degrevlex() { return MonomialOrder(Kind::GlobalDegRevLex); }
  static MonomialOrder local_negdegrevlex() { return MonomialOrder(Kind::LocalNegDegRevLex); }
  static MonomialOrder block(const MonomialOrder& first, const MonomialOrder& second, std::size_t split) {
    MonomialOrder o(Kind::Block);
    o.first_ = std::make_shared<const MonomialOrder>(first);
    o.second_ = std::make_shared<const MonomialOrder>(second);
    o.split_ = split;
    return o;
  }

  Kind kind() const noexcept { return kind_; }

  bool is_local() const {
    switch (kind_) {
      case Kind::GlobalDegRevLex: return false;
      case Kind::LocalNegDegRevLex: return true;
      case Kind::Block: return first_->is_local() && second_->is_local();
    }
    return false;
  }

  Cmp compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("mono_cmp: ring mismatch");
    return compare_range(a, b, 0, a.size());
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) == Cmp::GT; }

  std::string name() const {
    switch (kind_) {
      case Kind::GlobalDegRevLex: return "global-degrevlex";
      case Kind::LocalNegDegRevLex: return "local-negdegrevlex";
      case Kind::Block:
        return "block(" + first_->name() + ", " + second_->name() + ", " + std::to_string(split_) + ")";
    }
    return "?";
  }

 private:
  explicit MonomialOrder(Kind kind) : kind_(kind) {}

  Cmp compare_range(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) const {
    if (kind_ == Kind::Block) {
      std::size_t mid = std::min(end, begin + split_);
      Cmp c = first_->compare_range(a, b, begin, mid);
      if (c != Cmp::EQ) return c;
      return second_->compare_range(a, b, mid, end);
    }
    unsigned da = 0, db = 0;
    for (std::size_t i = begin; i < end; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) {
      bool a_bigger = kind_ == Kind::GlobalDegRevLex ? da > db : da < db;
      return a_bigger ? Cmp::GT : Cmp::LT;
    }
    for (std::size_t i = end; i-- > begin;) {
      if (a[i] != b[i]) return a[i] < b[i] ? Cmp::GT : Cmp::LT;
    }
    return Cmp::EQ;
  }

  Kind kind_;
  std::size_t split_ = 0;
  std::shared_ptr<const MonomialOrder> first_;
  std::shared_ptr<const MonomialOrder> second_;
};

inline Cmp mono_cmp(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
  return order.compare(a, b);
}

}  // namespace germscope

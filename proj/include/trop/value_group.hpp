#ifndef TROP_VALUE_GROUP_HPP
#define TROP_VALUE_GROUP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trop/common.hpp"

namespace trop {

/// An element of a divisible ordered abelian group, written multiplicatively
/// as a finite product  prod_g g^{q_g}  over named generators with rational
/// exponents.  Rational constants are normalized to prime-exponent form, so
/// the keys are either decimal prime strings ("2", "3", ...) or symbolic
/// infinitesimal names ("w1", "w2", ...).  No zero exponents are stored;
/// equality of elements is equality of exponent maps.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement one() { return GroupElement(); }
  /// Normalizes a positive rational into prime exponents.
  static GroupElement from_rational(const Rat& q);
  static GroupElement symbol(const std::string& name, const Rat& exp = 1);

  bool is_one() const { return exp_.empty(); }
  const std::map<std::string, Rat>& exponents() const { return exp_; }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const { return pow(Rat(-1)); }
  GroupElement operator/(const GroupElement& o) const { return *this * o.inverse(); }
  GroupElement pow(const Rat& q) const;
  GroupElement root(unsigned long n) const { return pow(Rat(1, n)); }

  bool operator==(const GroupElement& o) const { return exp_ == o.exp_; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  /// True when no symbolic generator appears.
  bool is_rational_part_only() const;
  /// Erases all symbolic exponents (quotient by the convex subgroup the
  /// symbols generate).  Monotone onto the base group.
  GroupElement coarsened() const;

  /// Exact value as a rational, when all exponents are integers (used by the
  /// SVG/report layers; throws otherwise).
  std::optional<Rat> as_rational() const;

  std::string str() const;

  void set_exponent(const std::string& gen, const Rat& q);
  Rat exponent(const std::string& gen) const;

 private:
  std::map<std::string, Rat> exp_;
};

enum class Direction { above_one, below_one };

/// Descriptor of the ambient group: a list of multiplicatively independent
/// rational generators plus, in lexicographic-tower mode, an ordered list of
/// symbolic generators, each infinitesimally close to 1 relative to the
/// subgroup generated by everything before it.
class ValueGroupDesc {
 public:
  ValueGroupDesc() = default;

  static ValueGroupDesc trivial() { return ValueGroupDesc(); }
  static ValueGroupDesc rational(const std::vector<Rat>& generators);

  /// Extends by d fresh infinitesimals; names are w<k> continuing the tower.
  ValueGroupDesc adjoin_infinitesimals(int d, const std::vector<Direction>& dirs) const;
  /// Extends by one named infinitesimal at the end of the tower.
  ValueGroupDesc with_symbol(const std::string& name, Direction dir) const;

  bool archimedean() const { return symbols_.empty(); }
  const std::vector<Rat>& rational_generators() const { return rational_gens_; }
  const std::vector<std::pair<std::string, Direction>>& symbols() const { return symbols_; }

  std::optional<Direction> symbol_direction(const std::string& name) const;
  int symbol_index(const std::string& name) const;  // -1 if unknown

  /// Name of the next fresh infinitesimal (w1, w2, ...).
  std::string fresh_symbol_name() const;

  /// Whether x lies in the divisible hull of this group: the rational part of
  /// x must lie in the Q-span of the generators' prime-exponent vectors and
  /// every symbol of x must be declared here.
  bool contains_in_divisible_hull(const GroupElement& x) const;

 private:
  std::vector<Rat> rational_gens_;
  std::vector<std::pair<std::string, Direction>> symbols_;
};

/// Total order.  The rational (archimedean) part dominates every symbolic
/// infinitesimal; among symbols the earliest tower index with a differing
/// exponent decides, with its declared direction.  The archimedean sign is
/// the sign of sum q_p * log p, evaluated by directed-rounding interval
/// arithmetic whose precision doubles per round; termination is guaranteed
/// because distinct exponent maps give a nonzero value (unique
/// factorization).
int compare(const GroupElement& a, const GroupElement& b, const ValueGroupDesc& desc);

inline bool leq(const GroupElement& a, const GroupElement& b, const ValueGroupDesc& d) {
  return compare(a, b, d) <= 0;
}
inline bool lt(const GroupElement& a, const GroupElement& b, const ValueGroupDesc& d) {
  return compare(a, b, d) < 0;
}

GroupElement coarsen(const GroupElement& x);

/// Initial interval precision in bits (doubles per refinement round).
/// Overridable through the TROPCTL_PRECISION environment variable.
unsigned interval_start_precision();

}  // namespace trop

#endif

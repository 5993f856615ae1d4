#ifndef TROP_DEFINABLE_SET_HPP
#define TROP_DEFINABLE_SET_HPP

#include <optional>
#include <string>
#include <vector>

#include "trop/qlinalg.hpp"
#include "trop/value_group.hpp"

namespace trop {

using Point = std::vector<GroupElement>;

/// Multiplicative affine form  t |-> g * prod t_i^{a_i}  with a in Q^n and
/// g a group element.
struct AffForm {
  QVec coeff;
  GroupElement constant;

  AffForm() = default;
  AffForm(QVec a, GroupElement g) : coeff(std::move(a)), constant(std::move(g)) {}

  static AffForm coordinate(int n, int i);
  static AffForm of_constant(int n, GroupElement g) { return AffForm(QVec(n, 0), std::move(g)); }

  size_t arity() const { return coeff.size(); }
  bool is_constant() const;

  GroupElement eval(const Point& x) const;
  AffForm inverse() const;
  AffForm pow(const Rat& q) const;
  AffForm operator*(const AffForm& o) const;
  /// Substitution t = cst * u^M for an (arity x m) exponent matrix M:
  /// the result is an affine form in the m variables u.
  AffForm compose_monomial(const QMat& M, const std::vector<GroupElement>& cst) const;
  /// Linear part only, as a form on directions (constant dropped).
  AffForm linear_part() const { return AffForm(coeff, GroupElement::one()); }

  std::string key() const;  // canonical serialization, used for deterministic ordering
  bool operator==(const AffForm& o) const { return coeff == o.coeff && constant == o.constant; }
};

enum class Rel { lt, le };

/// One inequality  form <| 1.  Equalities are encoded as pairs of le atoms.
struct Atom {
  AffForm form;
  Rel rel = Rel::le;

  Atom() = default;
  Atom(AffForm f, Rel r) : form(std::move(f)), rel(r) {}

  bool holds(const Point& x, const ValueGroupDesc& desc) const;
  /// not (f <= 1)  is  f^-1 < 1;  not (f < 1)  is  f^-1 <= 1.
  Atom negated() const;
  std::string key() const;
  bool operator==(const Atom& o) const { return rel == o.rel && form == o.form; }
};

/// Conjunction of atoms; atoms are kept deduplicated and in canonical order.
struct Conjunct {
  std::vector<Atom> atoms;

  void add(Atom a);
  void add_equation(const AffForm& f);  // f = 1 as a pair of le atoms
  void normalize();
  bool holds(const Point& x, const ValueGroupDesc& desc) const;
};

/// A definable subset of G^n in the ordered-abelian-group language: a finite
/// disjunction of conjunctions of atoms.  Semantics are stable under group
/// extension, so points may live in any H containing the parameter group.
class DefinableSet {
 public:
  DefinableSet() = default;
  DefinableSet(int n, ValueGroupDesc group) : n_(n), group_(std::move(group)) {}

  static DefinableSet full(int n, ValueGroupDesc group);
  static DefinableSet empty_set(int n, ValueGroupDesc group) { return DefinableSet(n, std::move(group)); }

  int arity() const { return n_; }
  const ValueGroupDesc& group() const { return group_; }
  void set_group(ValueGroupDesc g) { group_ = std::move(g); }
  const std::vector<Conjunct>& disjuncts() const { return disjuncts_; }

  void add_disjunct(Conjunct c);

  bool is_full_syntactically() const;

  std::string key() const;

 private:
  int n_ = 0;
  ValueGroupDesc group_;
  std::vector<Conjunct> disjuncts_;
};

inline constexpr int kDimEmpty = -0x7fffffff;  // stands in for -infinity

// --- evaluation -----------------------------------------------------------

/// Membership of x, evaluated over the (possibly extended) group `ambient`.
bool membership(const DefinableSet& d, const Point& x, const ValueGroupDesc& ambient);
bool membership(const DefinableSet& d, const Point& x);

// --- quantifier elimination ------------------------------------------------

/// Fourier-Motzkin projection of a single conjunct onto the complement of
/// variable `var` (0-based).  The result is a conjunct in n-1 variables.
/// Conjuncts whose projection contains a false constant atom are reported by
/// returning nullopt.
std::optional<Conjunct> eliminate_var(const Conjunct& c, int n, int var, const ValueGroupDesc& desc);

/// Projection  exists t_var . d  as a definable set in n-1 variables.
DefinableSet eliminate(const DefinableSet& d, int var);

/// True iff d(H) is empty for every divisible H extending the parameter
/// group (equivalently, for one, by model completeness).
bool emptiness(const DefinableSet& d);
bool conjunct_empty(const Conjunct& c, int n, const ValueGroupDesc& desc);

// --- boolean structure ------------------------------------------------------

DefinableSet intersect(const DefinableSet& a, const DefinableSet& b);
DefinableSet unite(const DefinableSet& a, const DefinableSet& b);
DefinableSet complement(const DefinableSet& d);
DefinableSet difference(const DefinableSet& a, const DefinableSet& b);
bool subset_of(const DefinableSet& a, const DefinableSet& b);
bool equal_sets(const DefinableSet& a, const DefinableSet& b);

// --- topology ---------------------------------------------------------------

/// Topological closure: delete empty disjuncts, then relax strict atoms.
DefinableSet closure(const DefinableSet& d);
bool is_closed_presentation(const DefinableSet& d);

// --- dimension ---------------------------------------------------------------

/// Dimension as the maximum over consistent conjuncts of n minus the rank of
/// the implicit-equality sublattice (kDimEmpty for the empty set).
int dimension(const DefinableSet& d);
int conjunct_dimension(const Conjunct& c, int n, const ValueGroupDesc& desc);

/// Q-basis of the direction space of a consistent conjunct (the affine hull
/// in log coordinates, translated to the origin).
QMat conjunct_direction_space(const Conjunct& c, int n, const ValueGroupDesc& desc);

/// Local dimension at a point of d: dimension of the intersection with the
/// box of infinitesimal radius centered at x.
int dimension_at(const DefinableSet& d, const Point& x);

// --- connectedness -----------------------------------------------------------

bool is_connected(const DefinableSet& d);

// --- arrangement cells --------------------------------------------------------

/// Distinct non-constant forms of d, canonicalized so that a form and its
/// inverse are identified (first nonzero exponent positive).
std::vector<AffForm> arrangement_forms(const DefinableSet& d);

struct SignCell {
  std::vector<int> pattern;  // -1 / 0 / +1 per arrangement form
  Conjunct open_cell;        // the relatively open cell
  Conjunct closed_cell;      // its closure
  int dim = 0;
};

/// All nonempty sign cells of the arrangement of d's forms that lie inside d.
std::vector<SignCell> sign_cells(const DefinableSet& d);

// --- witnesses -----------------------------------------------------------------

/// A point of the conjunct, when nonempty.  Coordinates are built from the
/// constants appearing in the atoms (and the prime 2), so they may live in a
/// group extension.
std::optional<Point> sample_point(const Conjunct& c, int n, const ValueGroupDesc& desc);
std::optional<Point> sample_point(const DefinableSet& d);

/// Merge of two compatible group descriptors (union of rational generators,
/// common symbol tower).
ValueGroupDesc join_groups(const ValueGroupDesc& a, const ValueGroupDesc& b);

}  // namespace trop

#endif

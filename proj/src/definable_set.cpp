#include "trop/definable_set.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace trop {

// --- AffForm ----------------------------------------------------------------

AffForm AffForm::coordinate(int n, int i) {
  QVec a(n, 0);
  a[i] = 1;
  return AffForm(std::move(a), GroupElement::one());
}

bool AffForm::is_constant() const {
  return std::all_of(coeff.begin(), coeff.end(), [](const Rat& q) { return q == 0; });
}

GroupElement AffForm::eval(const Point& x) const {
  if (x.size() != coeff.size()) throw error(errc::dimension_mismatch, "point arity mismatch");
  GroupElement v = constant;
  for (size_t i = 0; i < coeff.size(); ++i)
    if (coeff[i] != 0) v = v * x[i].pow(coeff[i]);
  return v;
}

AffForm AffForm::inverse() const { return pow(Rat(-1)); }

AffForm AffForm::pow(const Rat& q) const {
  QVec a(coeff.size());
  for (size_t i = 0; i < coeff.size(); ++i) a[i] = coeff[i] * q;
  return AffForm(std::move(a), constant.pow(q));
}

AffForm AffForm::operator*(const AffForm& o) const {
  if (o.coeff.size() != coeff.size()) throw error(errc::dimension_mismatch, "form arity mismatch");
  QVec a(coeff.size());
  for (size_t i = 0; i < coeff.size(); ++i) a[i] = coeff[i] + o.coeff[i];
  return AffForm(std::move(a), constant * o.constant);
}

AffForm AffForm::compose_monomial(const QMat& M, const std::vector<GroupElement>& cst) const {
  size_t m = coeff.size();
  if (M.size() != m || cst.size() != m)
    throw error(errc::dimension_mismatch, "monomial substitution shape mismatch");
  size_t n = M.empty() ? 0 : M[0].size();
  QVec a(n, 0);
  GroupElement g = constant;
  for (size_t j = 0; j < m; ++j) {
    if (coeff[j] == 0) continue;
    for (size_t i = 0; i < n; ++i) a[i] += coeff[j] * M[j][i];
    g = g * cst[j].pow(coeff[j]);
  }
  return AffForm(std::move(a), std::move(g));
}

std::string AffForm::key() const {
  std::string s = "a:";
  for (const Rat& q : coeff) s += rat_str(q) + ",";
  s += "|g:" + constant.str();
  return s;
}

// --- Atom --------------------------------------------------------------------

bool Atom::holds(const Point& x, const ValueGroupDesc& desc) const {
  int c = compare(form.eval(x), GroupElement::one(), desc);
  return rel == Rel::lt ? c < 0 : c <= 0;
}

Atom Atom::negated() const {
  return Atom(form.inverse(), rel == Rel::le ? Rel::lt : Rel::le);
}

std::string Atom::key() const { return (rel == Rel::lt ? "lt|" : "le|") + form.key(); }

// --- Conjunct ------------------------------------------------------------------

void Conjunct::add(Atom a) { atoms.push_back(std::move(a)); }

void Conjunct::add_equation(const AffForm& f) {
  atoms.emplace_back(f, Rel::le);
  atoms.emplace_back(f.inverse(), Rel::le);
}

void Conjunct::normalize() {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.key() < b.key(); });
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

bool Conjunct::holds(const Point& x, const ValueGroupDesc& desc) const {
  return std::all_of(atoms.begin(), atoms.end(),
                     [&](const Atom& a) { return a.holds(x, desc); });
}

// --- DefinableSet -----------------------------------------------------------------

DefinableSet DefinableSet::full(int n, ValueGroupDesc group) {
  DefinableSet d(n, std::move(group));
  d.add_disjunct(Conjunct{});
  return d;
}

void DefinableSet::add_disjunct(Conjunct c) {
  c.normalize();
  for (const auto& existing : disjuncts_) {
    if (existing.atoms.size() != c.atoms.size()) continue;
    if (std::equal(existing.atoms.begin(), existing.atoms.end(), c.atoms.begin()))
      return;  // syntactic duplicate
  }
  disjuncts_.push_back(std::move(c));
}

bool DefinableSet::is_full_syntactically() const {
  return std::any_of(disjuncts_.begin(), disjuncts_.end(),
                     [](const Conjunct& c) { return c.atoms.empty(); });
}

std::string DefinableSet::key() const {
  std::string s = "n=" + std::to_string(n_) + ";";
  for (const auto& c : disjuncts_) {
    for (const auto& a : c.atoms) s += a.key() + "&";
    s += "|";
  }
  return s;
}

// --- membership ---------------------------------------------------------------------

bool membership(const DefinableSet& d, const Point& x, const ValueGroupDesc& ambient) {
  if (static_cast<int>(x.size()) != d.arity())
    throw error(errc::dimension_mismatch, "membership: point arity mismatch");
  return std::any_of(d.disjuncts().begin(), d.disjuncts().end(),
                     [&](const Conjunct& c) { return c.holds(x, ambient); });
}

bool membership(const DefinableSet& d, const Point& x) { return membership(d, x, d.group()); }

// --- Fourier-Motzkin -----------------------------------------------------------------

namespace {

// True constant atoms are dropped; a false constant atom empties the conjunct.
std::optional<Conjunct> fold_constants(Conjunct c, const ValueGroupDesc& desc) {
  Conjunct out;
  for (auto& a : c.atoms) {
    if (a.form.is_constant()) {
      int s = compare(a.form.constant, GroupElement::one(), desc);
      bool ok = a.rel == Rel::lt ? s < 0 : s <= 0;
      if (!ok) return std::nullopt;
    } else {
      out.add(std::move(a));
    }
  }
  out.normalize();
  return out;
}

}  // namespace

std::optional<Conjunct> eliminate_var(const Conjunct& c, int n, int var, const ValueGroupDesc& desc) {
  std::vector<const Atom*> lowers, uppers;
  Conjunct out;
  for (const Atom& a : c.atoms) {
    Rat e = a.form.coeff[var];
    if (e > 0)
      uppers.push_back(&a);
    else if (e < 0)
      lowers.push_back(&a);
    else
      out.add(a);
  }
  for (const Atom* u : uppers) {
    for (const Atom* l : lowers) {
      Rat alpha = u->form.coeff[var];
      Rat beta = -l->form.coeff[var];
      AffForm f = u->form.pow(beta) * l->form.pow(alpha);
      Rel rel = (u->rel == Rel::lt || l->rel == Rel::lt) ? Rel::lt : Rel::le;
      out.add(Atom(std::move(f), rel));
    }
  }
  // Drop the eliminated coordinate.
  for (Atom& a : out.atoms) {
    a.form.coeff.erase(a.form.coeff.begin() + var);
  }
  (void)n;
  return fold_constants(std::move(out), desc);
}

namespace {

// Elimination order: fewest lower*upper combinations first, index as tie-break.
int pick_var(const Conjunct& c, int n) {
  long best_cost = -1;
  int best = -1;
  for (int v = 0; v < n; ++v) {
    long lo = 0, up = 0, mention = 0;
    for (const Atom& a : c.atoms) {
      if (a.form.coeff[v] > 0)
        ++up;
      else if (a.form.coeff[v] < 0)
        ++lo;
      else
        continue;
      ++mention;
    }
    if (mention == 0) continue;
    long cost = lo * up;
    if (best < 0 || cost < best_cost) {
      best_cost = cost;
      best = v;
    }
  }
  return best;
}

}  // namespace

bool conjunct_empty(const Conjunct& c, int n, const ValueGroupDesc& desc) {
  auto folded = fold_constants(c, desc);
  if (!folded) return true;
  Conjunct cur = *std::move(folded);
  int vars = n;
  while (true) {
    int v = pick_var(cur, vars);
    if (v < 0) return false;  // only satisfied constants remain
    auto next = eliminate_var(cur, vars, v, desc);
    if (!next) return true;
    cur = *std::move(next);
    --vars;
  }
}

DefinableSet eliminate(const DefinableSet& d, int var) {
  if (var < 0 || var >= d.arity()) throw error(errc::dimension_mismatch, "eliminate: bad index");
  DefinableSet out(d.arity() - 1, d.group());
  for (const Conjunct& c : d.disjuncts()) {
    auto folded = fold_constants(c, d.group());
    if (!folded) continue;
    auto pc = eliminate_var(*folded, d.arity(), var, d.group());
    if (pc) out.add_disjunct(*std::move(pc));
  }
  return out;
}

bool emptiness(const DefinableSet& d) {
  return std::all_of(d.disjuncts().begin(), d.disjuncts().end(), [&](const Conjunct& c) {
    return conjunct_empty(c, d.arity(), d.group());
  });
}

// --- boolean structure -----------------------------------------------------------

DefinableSet intersect(const DefinableSet& a, const DefinableSet& b) {
  if (a.arity() != b.arity()) throw error(errc::dimension_mismatch, "intersect arity mismatch");
  DefinableSet out(a.arity(), join_groups(a.group(), b.group()));
  for (const Conjunct& ca : a.disjuncts()) {
    for (const Conjunct& cb : b.disjuncts()) {
      Conjunct c = ca;
      for (const Atom& atom : cb.atoms) c.add(atom);
      c.normalize();
      if (!conjunct_empty(c, out.arity(), out.group())) out.add_disjunct(std::move(c));
    }
  }
  return out;
}

DefinableSet unite(const DefinableSet& a, const DefinableSet& b) {
  if (a.arity() != b.arity()) throw error(errc::dimension_mismatch, "unite arity mismatch");
  DefinableSet out(a.arity(), join_groups(a.group(), b.group()));
  for (const Conjunct& c : a.disjuncts()) out.add_disjunct(c);
  for (const Conjunct& c : b.disjuncts()) out.add_disjunct(c);
  return out;
}

DefinableSet complement(const DefinableSet& d) {
  DefinableSet out = DefinableSet::full(d.arity(), d.group());
  for (const Conjunct& c : d.disjuncts()) {
    DefinableSet neg(d.arity(), d.group());
    if (c.atoms.empty()) return DefinableSet::empty_set(d.arity(), d.group());
    for (const Atom& a : c.atoms) {
      Conjunct nc;
      nc.add(a.negated());
      neg.add_disjunct(std::move(nc));
    }
    out = intersect(out, neg);
  }
  return out;
}

DefinableSet difference(const DefinableSet& a, const DefinableSet& b) {
  return intersect(a, complement(b));
}

bool subset_of(const DefinableSet& a, const DefinableSet& b) {
  return emptiness(difference(a, b));
}

bool equal_sets(const DefinableSet& a, const DefinableSet& b) {
  return subset_of(a, b) && subset_of(b, a);
}

// --- closure ----------------------------------------------------------------------

DefinableSet closure(const DefinableSet& d) {
  DefinableSet out(d.arity(), d.group());
  for (const Conjunct& c : d.disjuncts()) {
    // The paper's procedure: a conjunct is relaxed only when consistent,
    // otherwise it is removed outright.
    if (conjunct_empty(c, d.arity(), d.group())) continue;
    Conjunct r;
    for (const Atom& a : c.atoms) r.add(Atom(a.form, Rel::le));
    out.add_disjunct(std::move(r));
  }
  return out;
}

bool is_closed_presentation(const DefinableSet& d) {
  for (const Conjunct& c : d.disjuncts())
    for (const Atom& a : c.atoms)
      if (a.rel == Rel::lt) return false;
  return true;
}

// --- dimension ----------------------------------------------------------------------

int conjunct_dimension(const Conjunct& c, int n, const ValueGroupDesc& desc) {
  if (conjunct_empty(c, n, desc)) return kDimEmpty;
  QMat eq_rows;
  for (size_t i = 0; i < c.atoms.size(); ++i) {
    const Atom& a = c.atoms[i];
    if (a.rel != Rel::le || a.form.is_constant()) continue;
    Conjunct tightened = c;
    tightened.atoms[i].rel = Rel::lt;
    if (conjunct_empty(tightened, n, desc)) eq_rows.push_back(a.form.coeff);
  }
  return n - static_cast<int>(q_rank(std::move(eq_rows)));
}

QMat conjunct_direction_space(const Conjunct& c, int n, const ValueGroupDesc& desc) {
  QMat eq_rows;
  for (size_t i = 0; i < c.atoms.size(); ++i) {
    const Atom& a = c.atoms[i];
    if (a.rel != Rel::le || a.form.is_constant()) continue;
    Conjunct tightened = c;
    tightened.atoms[i].rel = Rel::lt;
    if (conjunct_empty(tightened, n, desc)) eq_rows.push_back(a.form.coeff);
  }
  return q_nullspace(std::move(eq_rows), n);
}

int dimension(const DefinableSet& d) {
  int best = kDimEmpty;
  for (const Conjunct& c : d.disjuncts())
    best = std::max(best, conjunct_dimension(c, d.arity(), d.group()));
  return best;
}

int dimension_at(const DefinableSet& d, const Point& x) {
  if (!membership(d, x)) throw error(errc::domain, "dimension_at: point not in the set");
  ValueGroupDesc ext = d.group().adjoin_infinitesimals(1, {Direction::above_one});
  const std::string w = ext.symbols().back().first;
  GroupElement eps = GroupElement::symbol(w);
  DefinableSet box(d.arity(), ext);
  Conjunct c;
  for (int i = 0; i < d.arity(); ++i) {
    AffForm up = AffForm::coordinate(d.arity(), i) * AffForm::of_constant(d.arity(), (x[i] * eps).inverse());
    AffForm lo = AffForm::coordinate(d.arity(), i).inverse() *
                 AffForm::of_constant(d.arity(), x[i] * eps.inverse());
    c.add(Atom(up, Rel::le));
    c.add(Atom(lo, Rel::le));
  }
  box.add_disjunct(std::move(c));
  DefinableSet local = intersect(box, d);
  local.set_group(ext);
  return dimension(local);
}

// --- arrangement ---------------------------------------------------------------------

std::vector<AffForm> arrangement_forms(const DefinableSet& d) {
  std::map<std::string, AffForm> forms;
  for (const Conjunct& c : d.disjuncts()) {
    for (const Atom& a : c.atoms) {
      if (a.form.is_constant()) continue;
      AffForm f = a.form;
      for (const Rat& q : f.coeff) {
        if (q == 0) continue;
        if (q < 0) f = f.inverse();
        break;
      }
      forms.emplace(f.key(), f);
    }
  }
  std::vector<AffForm> out;
  out.reserve(forms.size());
  for (auto& [k, f] : forms) out.push_back(std::move(f));
  return out;
}

namespace {

struct FormRef {
  int index;
  bool flipped;
};

FormRef locate_form(const AffForm& f, const std::vector<AffForm>& forms) {
  AffForm canon = f;
  bool flipped = false;
  for (const Rat& q : canon.coeff) {
    if (q == 0) continue;
    if (q < 0) {
      canon = canon.inverse();
      flipped = true;
    }
    break;
  }
  const std::string k = canon.key();
  for (size_t i = 0; i < forms.size(); ++i)
    if (forms[i].key() == k) return {static_cast<int>(i), flipped};
  throw error(errc::domain, "arrangement form lookup failed");
}

// Disjuncts with constant atoms folded; empty optional when d degenerates.
std::vector<Conjunct> folded_disjuncts(const DefinableSet& d) {
  std::vector<Conjunct> out;
  for (const Conjunct& c : d.disjuncts()) {
    auto f = fold_constants(c, d.group());
    if (f) out.push_back(*std::move(f));
  }
  return out;
}

}  // namespace

std::vector<SignCell> sign_cells(const DefinableSet& d) {
  std::vector<AffForm> forms = arrangement_forms(d);
  const size_t m = forms.size();
  if (m > 14) throw error(errc::unsupported, "arrangement too large (more than 14 distinct forms)");
  std::vector<Conjunct> dnf = folded_disjuncts(d);
  // Pattern satisfaction per disjunct is purely combinatorial.
  struct AtomRef {
    FormRef ref;
    Rel rel;
  };
  std::vector<std::vector<AtomRef>> dnf_refs;
  for (const Conjunct& c : dnf) {
    std::vector<AtomRef> refs;
    refs.reserve(c.atoms.size());
    for (const Atom& a : c.atoms) refs.push_back({locate_form(a.form, forms), a.rel});
    dnf_refs.push_back(std::move(refs));
  }

  std::vector<SignCell> cells;
  std::vector<int> pattern(m, -1);
  const size_t total = [&] {
    size_t t = 1;
    for (size_t i = 0; i < m; ++i) t *= 3;
    return t;
  }();
  for (size_t code = 0; code < total; ++code) {
    size_t c2 = code;
    for (size_t i = 0; i < m; ++i) {
      pattern[i] = static_cast<int>(c2 % 3) - 1;
      c2 /= 3;
    }
    bool inside = false;
    for (const auto& refs : dnf_refs) {
      bool ok = true;
      for (const AtomRef& r : refs) {
        int s = pattern[r.ref.index];
        if (r.ref.flipped) s = -s;
        if (r.rel == Rel::lt ? s >= 0 : s > 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        inside = true;
        break;
      }
    }
    if (!inside) continue;
    Conjunct open;
    for (size_t i = 0; i < m; ++i) {
      if (pattern[i] < 0)
        open.add(Atom(forms[i], Rel::lt));
      else if (pattern[i] > 0)
        open.add(Atom(forms[i].inverse(), Rel::lt));
      else
        open.add_equation(forms[i]);
    }
    open.normalize();
    if (conjunct_empty(open, d.arity(), d.group())) continue;
    Conjunct closed;
    for (const Atom& a : open.atoms) closed.add(Atom(a.form, Rel::le));
    closed.normalize();
    SignCell cell;
    cell.pattern = pattern;
    cell.open_cell = std::move(open);
    cell.closed_cell = std::move(closed);
    cell.dim = conjunct_dimension(cell.open_cell, d.arity(), d.group());
    cells.push_back(std::move(cell));
  }
  return cells;
}

// --- connectedness --------------------------------------------------------------------

bool is_connected(const DefinableSet& d) {
  std::vector<SignCell> cells = sign_cells(d);
  if (cells.size() <= 1) return true;
  std::vector<size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<Conjunct> dnf = folded_disjuncts(d);
  for (size_t i = 0; i < cells.size(); ++i) {
    for (size_t j = i + 1; j < cells.size(); ++j) {
      if (find(i) == find(j)) continue;
      Conjunct both = cells[i].closed_cell;
      for (const Atom& a : cells[j].closed_cell.atoms) both.add(a);
      both.normalize();
      bool touch = false;
      for (const Conjunct& dc : dnf) {
        Conjunct probe = both;
        for (const Atom& a : dc.atoms) probe.add(a);
        probe.normalize();
        if (!conjunct_empty(probe, d.arity(), d.group())) {
          touch = true;
          break;
        }
      }
      if (touch) parent[find(i)] = find(j);
    }
  }
  size_t root = find(0);
  for (size_t i = 1; i < cells.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

// --- witnesses ---------------------------------------------------------------------------

std::optional<Point> sample_point(const Conjunct& c, int n, const ValueGroupDesc& desc) {
  auto folded = fold_constants(c, desc);
  if (!folded) return std::nullopt;
  // Project away variables from the last to the first; systems[k] constrains
  // variables 0..k-1.
  std::vector<Conjunct> systems(n + 1);
  systems[n] = *std::move(folded);
  for (int k = n; k >= 1; --k) {
    auto next = eliminate_var(systems[k], k, k - 1, desc);
    if (!next) return std::nullopt;
    systems[k - 1] = *std::move(next);
  }
  const GroupElement one = GroupElement::one();
  const GroupElement two = GroupElement::from_rational(2);
  Point x;
  for (int k = 0; k < n; ++k) {
    std::optional<GroupElement> lo, hi;
    bool lo_strict = false, hi_strict = false;
    auto raise_lo = [&](const GroupElement& bound, bool strict) {
      if (!lo) {
        lo = bound;
        lo_strict = strict;
        return;
      }
      int c = compare(bound, *lo, desc);
      if (c > 0) {
        lo = bound;
        lo_strict = strict;
      } else if (c == 0) {
        lo_strict = lo_strict || strict;
      }
    };
    auto lower_hi = [&](const GroupElement& bound, bool strict) {
      if (!hi) {
        hi = bound;
        hi_strict = strict;
        return;
      }
      int c = compare(bound, *hi, desc);
      if (c < 0) {
        hi = bound;
        hi_strict = strict;
      } else if (c == 0) {
        hi_strict = hi_strict || strict;
      }
    };
    for (const Atom& a : systems[k + 1].atoms) {
      Rat e = a.form.coeff[k];
      if (e == 0) continue;
      GroupElement v = a.form.constant;
      for (int j = 0; j < k; ++j)
        if (a.form.coeff[j] != 0) v = v * x[j].pow(a.form.coeff[j]);
      GroupElement bound = v.pow(Rat(-1) / e);
      if (e > 0)
        lower_hi(bound, a.rel == Rel::lt);
      else
        raise_lo(bound, a.rel == Rel::lt);
    }
    GroupElement pick;
    if (!lo && !hi) {
      pick = one;
    } else if (lo && !hi) {
      pick = *lo * two;
    } else if (hi && !lo) {
      pick = *hi * two.inverse();
    } else {
      int cmp = compare(*lo, *hi, desc);
      if (cmp > 0) throw error(errc::domain, "sample_point: inconsistent projected bounds");
      if (cmp == 0) {
        if (lo_strict || hi_strict)
          throw error(errc::domain, "sample_point: degenerate strict bounds");
        pick = *lo;
      } else {
        pick = (*lo * *hi).root(2);
      }
    }
    x.push_back(std::move(pick));
  }
  return x;
}

std::optional<Point> sample_point(const DefinableSet& d) {
  for (const Conjunct& c : d.disjuncts()) {
    auto x = sample_point(c, d.arity(), d.group());
    if (x) return x;
  }
  return std::nullopt;
}

// --- descriptor join ----------------------------------------------------------------------

ValueGroupDesc join_groups(const ValueGroupDesc& a, const ValueGroupDesc& b) {
  // Symbol towers must be compatible (one a prefix of the other).
  const auto& sa = a.symbols();
  const auto& sb = b.symbols();
  const auto& longer = sa.size() >= sb.size() ? sa : sb;
  const auto& shorter = sa.size() >= sb.size() ? sb : sa;
  for (size_t i = 0; i < shorter.size(); ++i)
    if (shorter[i] != longer[i])
      throw error(errc::mixed_groups, "incompatible symbolic towers");
  std::vector<Rat> gens = a.rational_generators();
  for (const Rat& g : b.rational_generators())
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  ValueGroupDesc out = gens.empty() ? ValueGroupDesc::trivial() : ValueGroupDesc::rational(gens);
  for (const auto& [name, dir] : longer) out = out.with_symbol(name, dir);
  return out;
}

}  // namespace trop

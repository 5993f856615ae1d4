#include "doctest.h"
#include "trop/definable_set.hpp"

#include <random>

using namespace trop;

namespace {

GroupElement ge(const char* s) { return GroupElement::from_rational(parse_rat(s)); }

AffForm form(std::vector<int> coeff, const char* c = "1") {
  QVec a;
  for (int e : coeff) a.emplace_back(e);
  return AffForm(a, ge(c));
}

Atom le(AffForm f) { return Atom(std::move(f), Rel::le); }
Atom lt(AffForm f) { return Atom(std::move(f), Rel::lt); }

DefinableSet make(int n, std::vector<std::vector<Atom>> dnf,
                  ValueGroupDesc g = ValueGroupDesc::trivial()) {
  DefinableSet d(n, std::move(g));
  for (auto& cj : dnf) {
    Conjunct c;
    for (auto& a : cj) c.add(std::move(a));
    d.add_disjunct(std::move(c));
  }
  return d;
}

Point pt(std::vector<const char*> coords) {
  Point x;
  for (const char* s : coords) x.push_back(ge(s));
  return x;
}

}  // namespace

TEST_CASE("membership basics") {
  // t <= 1 at the boundary
  auto d1 = make(1, {{le(form({1}))}});
  CHECK(membership(d1, pt({"1"})));

  // strict atom against infinitesimals above/below 1
  auto d2 = make(1, {{lt(form({1}))}});
  ValueGroupDesc ext = ValueGroupDesc::trivial().adjoin_infinitesimals(1, {Direction::above_one});
  GroupElement w = GroupElement::symbol("w1");
  CHECK_FALSE(membership(d2, {w}, ext));
  CHECK(membership(d2, {w.inverse()}, ext));

  // 2 t1 t2^-1 <= 1  and  t2 < 4
  auto d3 = make(2, {{le(form({1, -1}, "2")), lt(form({0, 1}, "1/4"))}});
  CHECK(membership(d3, pt({"1", "2"})));
  CHECK_FALSE(membership(d3, pt({"4", "2"})));

  CHECK_THROWS_AS(membership(d3, pt({"1"})), error);
}

TEST_CASE("membership is stable under group extension") {
  auto d = make(2, {{le(form({1, -1}, "2")), lt(form({0, 1}, "1/4"))}});
  ValueGroupDesc ext = d.group().adjoin_infinitesimals(1, {Direction::above_one});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-4, 4);
  for (int i = 0; i < 100; ++i) {
    Point x = {ge("2").pow(Rat(e(rng), 2)), ge("3").pow(Rat(e(rng), 2))};
    CHECK(membership(d, x) == membership(d, x, ext));
  }
}

TEST_CASE("fourier-motzkin elimination") {
  // exists t2: t1 <= t2 and t2 <= 2   ->   t1 <= 2
  auto d = make(2, {{le(form({1, -1})), le(form({0, 1}, "1/2"))}});
  auto p = eliminate(d, 1);
  CHECK(p.arity() == 1);
  auto expect = make(1, {{le(form({1}, "1/2"))}});
  CHECK(equal_sets(p, expect));

  // exists t2: t1 < t2 < t1 is empty
  auto e = make(2, {{lt(form({1, -1})), lt(form({-1, 1}))}});
  CHECK(emptiness(eliminate(e, 1)));

  // exists t2: t2^2 <= t1 and 4 <= t2   ->   16 <= t1
  auto s = make(2, {{le(form({-1, 2})), le(form({0, -1}, "4"))}});
  auto q = eliminate(s, 1);
  auto expect2 = make(1, {{le(form({-1}, "16"))}});
  CHECK(equal_sets(q, expect2));
}

TEST_CASE("emptiness") {
  // t < t encodes as the constant atom 1 < 1
  auto e1 = make(1, {{lt(form({0}))}});
  CHECK(emptiness(e1));

  auto ne = make(1, {{le(form({-1}, "2")), le(form({1}, "1/2"))}});  // 2 <= t <= 2
  CHECK_FALSE(emptiness(ne));

  auto e2 = make(2, {{le(form({1, 1})), le(form({-1, 0}, "2")), le(form({0, -1}, "2"))}});
  CHECK(emptiness(e2));  // t1 t2 <= 1, t1 >= 2, t2 >= 2
}

TEST_CASE("closure relaxes consistent conjuncts and prunes empty ones") {
  auto d = make(1, {{lt(form({1}, "1/2"))}});  // t < 2
  auto c = closure(d);
  CHECK(equal_sets(c, make(1, {{le(form({1}, "1/2"))}})));

  // {t < 1 and 1 < t} must close to the empty set, not to {t = 1}
  auto pinched = make(1, {{lt(form({1})), lt(form({-1}))}});
  CHECK(emptiness(closure(pinched)));

  // closure contains the set and is idempotent
  CHECK(subset_of(d, c));
  CHECK(equal_sets(closure(c), c));
}

TEST_CASE("dimension") {
  // t1 = t2 in the plane
  auto diag = make(2, {{le(form({1, -1})), le(form({-1, 1}))}});
  CHECK(dimension(diag) == 1);

  // 2-dimensional box
  auto box = make(2, {{le(form({1, 0}, "1/2")), le(form({-1, 0}, "1/2")),
                       le(form({0, 1}, "1/2")), le(form({0, -1}, "1/2"))}});
  CHECK(dimension(box) == 2);

  // degenerate box: one coordinate pinned
  auto seg = make(2, {{le(form({1, 0}, "1/2")), le(form({-1, 0}, "1/2")),
                       le(form({0, 1}, "1/2")), le(form({0, -1}, "2"))}});
  CHECK(dimension(seg) == 1);

  auto halfplane_union = make(2, {{le(form({1, 0}))}, {lt(form({0, 1}, "1/2"))}});
  CHECK(dimension(halfplane_union) == 2);

  CHECK(dimension(make(2, {})) == kDimEmpty);
  CHECK(dimension(make(2, {{le(form({1}, "1/2")), le(form({-1}, "2")),
                            le(form({0, 1}, "1/2")), le(form({0, -1}, "2"))}})) == 0);
}

TEST_CASE("dimension_at") {
  // segment [1,2] x {1}  union  the isolated point (8, 1)
  auto d = make(2, {{le(form({-1, 0})), le(form({1, 0}, "1/2")), le(form({0, 1})), le(form({0, -1}))},
                    {le(form({1, 0}, "1/8")), le(form({-1, 0}, "8")), le(form({0, 1})), le(form({0, -1}))}});
  CHECK(dimension_at(d, pt({"8", "1"})) == 0);
  CHECK(dimension_at(d, pt({"2", "1"})) == 1);

  auto box = make(2, {{le(form({1, 0}, "1/2")), le(form({-1, 0}, "1/2")),
                       le(form({0, 1}, "1/2")), le(form({0, -1}, "1/2"))}});
  CHECK(dimension_at(box, pt({"1", "1"})) == 2);

  CHECK_THROWS_AS(dimension_at(box, pt({"16", "16"})), error);
}

TEST_CASE("connectedness") {
  auto split = make(1, {{le(form({1}))}, {le(form({-1}, "2"))}});  // t <= 1 or t >= 2
  CHECK_FALSE(is_connected(split));

  auto glued = make(1, {{le(form({1}))}, {le(form({-1}))}});  // t <= 1 or t >= 1
  CHECK(is_connected(glued));

  CHECK(is_connected(make(1, {})));
}

TEST_CASE("elimination agrees with direct witness search on random sets") {
  std::mt19937 rng(20240818);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> cst(-2, 2);
  std::uniform_int_distribution<int> natoms(1, 4);
  std::uniform_int_distribution<int> ndis(1, 2);
  std::uniform_int_distribution<int> relpick(0, 1);
  ValueGroupDesc triv = ValueGroupDesc::trivial();

  auto random_set = [&](int n) {
    DefinableSet d(n, triv);
    int dis = ndis(rng);
    for (int i = 0; i < dis; ++i) {
      Conjunct c;
      int m = natoms(rng);
      for (int j = 0; j < m; ++j) {
        QVec a(n);
        for (int k = 0; k < n; ++k) a[k] = coef(rng);
        AffForm f(a, ge("2").pow(cst(rng)));
        c.add(Atom(f, relpick(rng) ? Rel::le : Rel::lt));
      }
      d.add_disjunct(std::move(c));
    }
    return d;
  };

  std::uniform_int_distribution<int> e(-3, 3);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + (iter % 2);
    DefinableSet d = random_set(n);
    int var = static_cast<int>(rng() % n);
    DefinableSet proj = eliminate(d, var);
    for (int s = 0; s < 40; ++s) {
      Point x;
      for (int k = 0; k + 1 < n; ++k) x.push_back(ge("2").pow(Rat(e(rng), 2)));
      // Direct witness search for t_var over each disjunct of d.
      bool witness = false;
      for (const Conjunct& c : d.disjuncts()) {
        std::optional<GroupElement> lo, hi;
        bool lo_strict = false, hi_strict = false, feasible = true;
        for (const Atom& a : c.atoms) {
          Rat ev = a.form.coeff[var];
          GroupElement v = a.form.constant;
          for (int k = 0, xi = 0; k < n; ++k) {
            if (k == var) continue;
            if (a.form.coeff[k] != 0) v = v * x[xi].pow(a.form.coeff[k]);
            ++xi;
          }
          if (ev == 0) {
            int cmpv = compare(v, GroupElement::one(), triv);
            if (!(a.rel == Rel::lt ? cmpv < 0 : cmpv <= 0)) {
              feasible = false;
              break;
            }
            continue;
          }
          GroupElement bound = v.pow(Rat(-1) / ev);
          bool strict = a.rel == Rel::lt;
          if (ev > 0) {
            if (!hi || compare(bound, *hi, triv) < 0) {
              hi = bound;
              hi_strict = strict;
            } else if (compare(bound, *hi, triv) == 0) {
              hi_strict = hi_strict || strict;
            }
          } else {
            if (!lo || compare(bound, *lo, triv) > 0) {
              lo = bound;
              lo_strict = strict;
            } else if (compare(bound, *lo, triv) == 0) {
              lo_strict = lo_strict || strict;
            }
          }
        }
        if (!feasible) continue;
        bool ok;
        if (!lo || !hi)
          ok = true;
        else {
          int cmpb = compare(*lo, *hi, triv);
          ok = cmpb < 0 || (cmpb == 0 && !lo_strict && !hi_strict);
        }
        if (ok) {
          witness = true;
          break;
        }
      }
      CHECK(membership(proj, x) == witness);
    }
  }
}

TEST_CASE("dimension monotonicity under elimination") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> cst(-1, 1);
  ValueGroupDesc triv = ValueGroupDesc::trivial();
  for (int iter = 0; iter < 40; ++iter) {
    int n = 2;
    DefinableSet d(n, triv);
    Conjunct c;
    for (int j = 0; j < 4; ++j) {
      QVec a(n);
      for (int k = 0; k < n; ++k) a[k] = coef(rng);
      c.add(Atom(AffForm(a, ge("2").pow(cst(rng))), Rel::le));
    }
    d.add_disjunct(std::move(c));
    int dim_d = dimension(d);
    int dim_p = dimension(eliminate(d, 0));
    if (dim_d == kDimEmpty)
      CHECK(dim_p == kDimEmpty);
    else
      CHECK(dim_p <= dim_d);
    CHECK(dim_d <= n);
  }
}

TEST_CASE("sample points land in their conjunct") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> cst(-2, 2);
  std::uniform_int_distribution<int> relpick(0, 1);
  ValueGroupDesc triv = ValueGroupDesc::trivial();
  int sampled = 0;
  for (int iter = 0; iter < 120; ++iter) {
    int n = 1 + (iter % 3);
    Conjunct c;
    for (int j = 0; j < 4; ++j) {
      QVec a(n);
      for (int k = 0; k < n; ++k) a[k] = coef(rng);
      c.add(Atom(AffForm(a, ge("3").pow(Rat(cst(rng), 2))), relpick(rng) ? Rel::le : Rel::lt));
    }
    c.normalize();
    auto x = sample_point(c, n, triv);
    CHECK(x.has_value() == !conjunct_empty(c, n, triv));
    if (x) {
      ++sampled;
      CHECK(c.holds(*x, triv));
    }
  }
  CHECK(sampled > 20);
}

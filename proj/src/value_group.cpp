#include "trop/value_group.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>

namespace trop {

namespace {

bool is_prime_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Prime-exponent vector of a positive rational.
std::map<std::string, Rat> factor_rational(const Rat& q) {
  if (sgn(q) <= 0) throw error(errc::domain, "group elements are positive: " + rat_str(q));
  std::map<std::string, Rat> out;
  auto absorb = [&out](mpz_class n, int s) {
    for (mpz_class p = 2; p * p <= n;) {
      if (n % p == 0) {
        Rat& e = out[p.get_str()];
        while (n % p == 0) {
          e += s;
          n /= p;
        }
        if (e == 0) out.erase(p.get_str());
      } else {
        p += (p == 2) ? 1 : 2;
      }
    }
    if (n > 1) {
      Rat& e = out[n.get_str()];
      e += s;
      if (e == 0) out.erase(n.get_str());
    }
  };
  absorb(q.get_num(), +1);
  absorb(q.get_den(), -1);
  return out;
}

}  // namespace

GroupElement GroupElement::from_rational(const Rat& q) {
  GroupElement g;
  g.exp_ = factor_rational(q);
  return g;
}

GroupElement GroupElement::symbol(const std::string& name, const Rat& exp) {
  GroupElement g;
  Rat e = exp;
  e.canonicalize();
  if (e != 0) g.exp_[name] = e;
  return g;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  GroupElement g = *this;
  for (const auto& [k, v] : o.exp_) {
    Rat& e = g.exp_[k];
    e += v;
    if (e == 0) g.exp_.erase(k);
  }
  return g;
}

GroupElement GroupElement::pow(const Rat& q) const {
  GroupElement g;
  Rat e = q;
  e.canonicalize();
  if (e == 0) return g;
  for (const auto& [k, v] : exp_) g.exp_[k] = v * e;
  return g;
}

bool GroupElement::is_rational_part_only() const {
  for (const auto& [k, v] : exp_)
    if (!is_prime_name(k)) return false;
  return true;
}

GroupElement GroupElement::coarsened() const {
  GroupElement g;
  for (const auto& [k, v] : exp_)
    if (is_prime_name(k)) g.exp_[k] = v;
  return g;
}

std::optional<Rat> GroupElement::as_rational() const {
  Rat out(1);
  for (const auto& [k, v] : exp_) {
    if (!is_prime_name(k) || !is_int(v)) return std::nullopt;
    mpz_class p(k);
    mpz_class pw;
    mpz_class e = v.get_num();
    bool neg = e < 0;
    mpz_class ee = neg ? mpz_class(-e) : e;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), ee.get_ui());
    if (neg)
      out /= Rat(pw);
    else
      out *= Rat(pw);
  }
  return out;
}

std::string GroupElement::str() const {
  if (exp_.empty()) return "1";
  std::string s;
  for (const auto& [k, v] : exp_) {
    if (!s.empty()) s += "*";
    s += k;
    if (v != 1) s += "^(" + rat_str(v) + ")";
  }
  return s;
}

void GroupElement::set_exponent(const std::string& gen, const Rat& q) {
  Rat e = q;
  e.canonicalize();
  if (e == 0)
    exp_.erase(gen);
  else
    exp_[gen] = e;
}

Rat GroupElement::exponent(const std::string& gen) const {
  auto it = exp_.find(gen);
  return it == exp_.end() ? Rat(0) : it->second;
}

ValueGroupDesc ValueGroupDesc::rational(const std::vector<Rat>& generators) {
  ValueGroupDesc d;
  d.rational_gens_ = generators;
  // Multiplicative independence: the prime-exponent vectors must be
  // Q-linearly independent.  Gaussian elimination over the (sparse) vectors.
  std::vector<std::map<std::string, Rat>> rows;
  for (const Rat& g : generators) rows.push_back(GroupElement::from_rational(g).exponents());
  std::vector<std::map<std::string, Rat>> basis;
  for (auto row : rows) {
    for (const auto& b : basis) {
      if (row.empty()) break;
      auto pivot = b.begin()->first;
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      Rat f = it->second / b.begin()->second;
      for (const auto& [k, v] : b) {
        Rat& e = row[k];
        e -= f * v;
        if (e == 0) row.erase(k);
      }
    }
    if (row.empty())
      throw error(errc::domain, "rational generators are multiplicatively dependent");
    basis.push_back(row);
  }
  return d;
}

ValueGroupDesc ValueGroupDesc::adjoin_infinitesimals(int d, const std::vector<Direction>& dirs) const {
  if (d < 1) throw error(errc::domain, "adjoin_infinitesimals: d must be >= 1");
  if (dirs.size() != static_cast<size_t>(d))
    throw error(errc::domain, "adjoin_infinitesimals: one direction per generator");
  ValueGroupDesc out = *this;
  for (int i = 0; i < d; ++i) out.symbols_.emplace_back(out.fresh_symbol_name(), dirs[i]);
  return out;
}

ValueGroupDesc ValueGroupDesc::with_symbol(const std::string& name, Direction dir) const {
  if (symbol_index(name) >= 0) throw error(errc::domain, "symbol already present: " + name);
  ValueGroupDesc out = *this;
  out.symbols_.emplace_back(name, dir);
  return out;
}

std::optional<Direction> ValueGroupDesc::symbol_direction(const std::string& name) const {
  for (const auto& [n, dir] : symbols_)
    if (n == name) return dir;
  return std::nullopt;
}

int ValueGroupDesc::symbol_index(const std::string& name) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].first == name) return static_cast<int>(i);
  return -1;
}

std::string ValueGroupDesc::fresh_symbol_name() const {
  int k = 1;
  while (symbol_index("w" + std::to_string(k)) >= 0) ++k;
  return "w" + std::to_string(k);
}

bool ValueGroupDesc::contains_in_divisible_hull(const GroupElement& x) const {
  std::map<std::string, Rat> residual;
  for (const auto& [k, v] : x.exponents()) {
    if (is_prime_name(k)) {
      residual[k] = v;
    } else if (symbol_index(k) < 0) {
      return false;
    }
  }
  // Reduce the rational part against the generators' prime vectors.
  std::vector<std::map<std::string, Rat>> basis;
  for (const Rat& g : rational_gens_) {
    auto row = GroupElement::from_rational(g).exponents();
    for (const auto& b : basis) {
      if (row.empty()) break;
      auto pivot = b.begin()->first;
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      Rat f = it->second / b.begin()->second;
      for (const auto& [k, v] : b) {
        Rat& e = row[k];
        e -= f * v;
        if (e == 0) row.erase(k);
      }
    }
    if (!row.empty()) basis.push_back(row);
  }
  for (const auto& b : basis) {
    if (residual.empty()) break;
    auto pivot = b.begin()->first;
    auto it = residual.find(pivot);
    if (it == residual.end()) continue;
    Rat f = it->second / b.begin()->second;
    for (const auto& [k, v] : b) {
      Rat& e = residual[k];
      e -= f * v;
      if (e == 0) residual.erase(k);
    }
  }
  return residual.empty();
}

unsigned interval_start_precision() {
  if (const char* env = std::getenv("TROPCTL_PRECISION")) {
    long p = std::strtol(env, nullptr, 10);
    if (p >= 16 && p <= 1 << 20) return static_cast<unsigned>(p);
  }
  return 64;
}

namespace {

// Sign of sum q_p * log(p) over the prime entries, by interval evaluation
// with directed rounding.  Exponent maps here are nonzero, so the sum is a
// nonzero real and the refinement loop terminates.
int archimedean_sign(const std::map<std::string, Rat>& primes) {
  for (unsigned prec = interval_start_precision();; prec *= 2) {
    mpfr_t lo, hi, l_lo, l_hi, q_lo, q_hi, p_lo, p_hi;
    mpfr_inits2(prec, lo, hi, l_lo, l_hi, q_lo, q_hi, p_lo, p_hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
    for (const auto& [name, q] : primes) {
      mpz_class p(name);
      mpfr_set_z(l_lo, p.get_mpz_t(), MPFR_RNDD);
      mpfr_set_z(l_hi, p.get_mpz_t(), MPFR_RNDU);
      mpfr_log(l_lo, l_lo, MPFR_RNDD);  // log p > 0 for p >= 2
      mpfr_log(l_hi, l_hi, MPFR_RNDU);
      mpfr_set_q(q_lo, q.get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(q_hi, q.get_mpq_t(), MPFR_RNDU);
      if (sgn(q) >= 0) {
        mpfr_mul(p_lo, q_lo, l_lo, MPFR_RNDD);
        mpfr_mul(p_hi, q_hi, l_hi, MPFR_RNDU);
      } else {
        mpfr_mul(p_lo, q_lo, l_hi, MPFR_RNDD);
        mpfr_mul(p_hi, q_hi, l_lo, MPFR_RNDU);
      }
      mpfr_add(lo, lo, p_lo, MPFR_RNDD);
      mpfr_add(hi, hi, p_hi, MPFR_RNDU);
    }
    int s_lo = mpfr_sgn(lo), s_hi = mpfr_sgn(hi);
    mpfr_clears(lo, hi, l_lo, l_hi, q_lo, q_hi, p_lo, p_hi, static_cast<mpfr_ptr>(nullptr));
    if (s_lo > 0) return 1;
    if (s_hi < 0) return -1;
  }
}

}  // namespace

int compare(const GroupElement& a, const GroupElement& b, const ValueGroupDesc& desc) {
  GroupElement d = a / b;
  if (d.is_one()) return 0;
  std::map<std::string, Rat> primes;
  // Symbol exponents keyed by tower index.
  std::map<int, Rat> syms;
  for (const auto& [k, v] : d.exponents()) {
    if (is_prime_name(k)) {
      primes[k] = v;
    } else {
      int idx = desc.symbol_index(k);
      if (idx < 0) throw error(errc::mixed_groups, "unknown symbolic generator: " + k);
      syms[idx] = v;
    }
  }
  // The base (archimedean) part dominates every infinitesimal; then the
  // earliest tower generator with a nonzero exponent decides.
  if (!primes.empty()) {
    int s = archimedean_sign(primes);
    if (s != 0) return s;
  }
  if (!syms.empty()) {
    auto [idx, e] = *syms.begin();
    int s = sgn(e);
    if (desc.symbols()[idx].second == Direction::below_one) s = -s;
    return s;
  }
  return 0;
}

GroupElement coarsen(const GroupElement& x) { return x.coarsened(); }

}  // namespace trop

#ifndef TROP_COMMON_HPP
#define TROP_COMMON_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace trop {

using Rat = mpq_class;

enum class errc {
  parse,
  dimension_mismatch,
  mixed_groups,
  unbounded,
  constant_outside_group,
  wild_or_deep_ramification,
  not_squarefree,
  incompatible_charts,
  unsupported,
  domain,
};

struct error : std::runtime_error {
  errc code;
  error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline Rat parse_rat(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw error(errc::parse, "bad rational literal: " + s);
  }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sgn(const Rat& q) { return ::sgn(q); }

inline bool is_int(const Rat& q) { return q.get_den() == 1; }

}  // namespace trop

#endif

#include "qseries.hpp"

#include <sstream>

namespace plumbtop {

Zint QSeries::exponent_denominator() const {
  Zint d = 1;
  for (const auto& [e, c] : terms) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den().get_mpz_t());
  return d;
}

bool QSeries::equal_up_to(const QSeries& other, const Rat& bound, std::string* diff) const {
  if (bound > truncation || bound > other.truncation) {
    if (diff) *diff = "comparison bound exceeds a truncation";
    return false;
  }
  auto a = terms.begin();
  auto b = other.terms.begin();
  while (true) {
    while (a != terms.end() && a->first > bound) a = terms.end();
    while (b != other.terms.end() && b->first > bound) b = other.terms.end();
    bool ea = a == terms.end() || a->first > bound;
    bool eb = b == other.terms.end() || b->first > bound;
    if (ea && eb) return true;
    if (ea != eb || a->first != b->first || a->second != b->second) {
      if (diff) {
        std::ostringstream os;
        os << "first mismatch: ";
        if (!ea) os << "lhs q^" << rat_to_string(a->first) << " * " << rat_to_string(a->second);
        if (!ea && !eb) os << " vs ";
        if (!eb) os << "rhs q^" << rat_to_string(b->first) << " * " << rat_to_string(b->second);
        *diff = os.str();
      }
      return false;
    }
    ++a;
    ++b;
  }
}

std::string QSeries::human_readable(std::size_t max_terms) const {
  if (terms.empty()) return "0  (truncated at q^" + rat_to_string(truncation) + ")";
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& [e, c] : terms) {
    if (max_terms && shown >= max_terms) {
      os << " + ...";
      break;
    }
    if (shown) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat ac = c > 0 ? c : Rat(-c);
    if (ac != 1) os << rat_to_string(ac) << "*";
    os << "q^(" << rat_to_string(e) << ")";
    ++shown;
  }
  os << "  (truncated at q^" << rat_to_string(truncation) << ")";
  return os.str();
}

}  // namespace plumbtop

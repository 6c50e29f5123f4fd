#pragma once

#include <map>

#include "rat.hpp"

namespace plumbtop {

// Truncated Laurent series in q with exact rational exponents and
// coefficients. Terms with exponent > truncation are absent by
// construction; terms with exponent <= truncation are complete.
struct QSeries {
  std::map<Rat, Rat> terms;
  Rat truncation;

  void add(const Rat& exponent, const Rat& coeff) {
    if (coeff == 0 || exponent > truncation) return;
    auto [it, fresh] = terms.emplace(exponent, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  std::optional<Rat> min_exponent() const {
    if (terms.empty()) return std::nullopt;
    return terms.begin()->first;
  }

  // Common denominator of all exponents (1 for the empty series).
  Zint exponent_denominator() const;

  // Exact equality of coefficients on exponents <= bound; both series
  // must be complete there. On mismatch, *diff describes the first one.
  bool equal_up_to(const QSeries& other, const Rat& bound, std::string* diff = nullptr) const;

  std::string human_readable(std::size_t max_terms = 0) const;
};

}  // namespace plumbtop

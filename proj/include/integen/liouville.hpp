#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "integen/tower.hpp"

namespace integen {

/// Structured antiderivative: rational part v0 plus constant-weighted
/// logarithms, plus arctan terms standing in for conjugate complex log pairs.
struct LiouvilleForm {
  FieldElem v0;
  std::vector<std::pair<Rational, FieldElem>> logs;
  std::vector<std::pair<Rational, FieldElem>> arctans;

  bool is_zero_form() const { return v0.is_zero_val() && logs.empty() && arctans.empty(); }

  LiouvilleForm& operator+=(const LiouvilleForm& o) {
    v0 = v0 + o.v0;
    logs.insert(logs.end(), o.logs.begin(), o.logs.end());
    arctans.insert(arctans.end(), o.arctans.begin(), o.arctans.end());
    return *this;
  }
};

/// D applied to a Liouville form:
/// D(v0) + sum c_i D(v_i)/v_i + sum c_j D(w_j)/(1 + w_j^2).
inline FieldElem derive(const LiouvilleForm& f, const Tower& t) {
  FieldElem acc = derive(f.v0, t);
  for (const auto& [c, v] : f.logs) {
    if (v.is_zero_val()) throw std::domain_error("LiouvilleForm: log of zero argument");
    acc = acc + FieldElem(c) * derive(v, t) / v;
  }
  for (const auto& [c, w] : f.arctans) {
    acc = acc + FieldElem(c) * derive(w, t) / (FieldElem::one() + w * w);
  }
  return acc;
}

/// Groups log terms with equal residues into a single term with the product
/// argument, drops zero-coefficient terms, and sorts deterministically.
/// Two forms that differ only by log-argument grouping normalize identically;
/// used when comparing an integration result against a planted form.
inline LiouvilleForm normalize_form(const LiouvilleForm& f) {
  LiouvilleForm out;
  out.v0 = f.v0;
  std::vector<std::pair<Rational, FieldElem>> logs;
  for (const auto& [c, v] : f.logs) {
    if (c.is_zero()) continue;
    bool merged = false;
    for (auto& [c2, v2] : logs) {
      if (c2 == c) {
        v2 = v2 * v;
        merged = true;
        break;
      }
    }
    if (!merged) logs.emplace_back(c, v);
  }
  std::vector<std::pair<Rational, FieldElem>> atans;
  for (const auto& [c, w] : f.arctans) {
    if (c.is_zero()) continue;
    bool merged = false;
    for (auto& [c2, w2] : atans) {
      if (w2 == w) {
        c2 += c;
        merged = true;
        break;
      }
    }
    if (!merged) atans.emplace_back(c, w);
  }
  atans.erase(std::remove_if(atans.begin(), atans.end(),
                             [](const auto& p) { return p.first.is_zero(); }),
              atans.end());
  auto key = [](const std::pair<Rational, FieldElem>& p) {
    return p.first.to_string();
  };
  std::stable_sort(logs.begin(), logs.end(),
                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  std::stable_sort(atans.begin(), atans.end(),
                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  out.logs = std::move(logs);
  out.arctans = std::move(atans);
  return out;
}

/// Equality up to log-argument grouping; v0 parts must match exactly.
inline bool forms_match(const LiouvilleForm& a, const LiouvilleForm& b) {
  LiouvilleForm na = normalize_form(a), nb = normalize_form(b);
  if (!(na.v0 == nb.v0)) return false;
  if (na.logs.size() != nb.logs.size() || na.arctans.size() != nb.arctans.size())
    return false;
  for (std::size_t i = 0; i < na.logs.size(); ++i)
    if (na.logs[i].first != nb.logs[i].first || na.logs[i].second != nb.logs[i].second)
      return false;
  for (std::size_t i = 0; i < na.arctans.size(); ++i)
    if (na.arctans[i].first != nb.arctans[i].first ||
        na.arctans[i].second != nb.arctans[i].second)
      return false;
  return true;
}

}  // namespace integen

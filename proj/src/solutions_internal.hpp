#pragma once

#include <string>

#include "dlv/errors.hpp"
#include "dlv/solutions.hpp"

namespace dlv::detail {

inline Number param(const ParamMap& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw DlvError("missing parameter '" + key + "'");
  return it->second;
}

inline bool has(const ParamMap& p, const std::string& key) { return p.count(key) != 0; }

inline void require(bool ok, const std::string& entry, const std::string& condition) {
  if (!ok) throw RestrictionError(entry, condition);
}

// Exact when both sides are rational, 1e-12 relative otherwise.
inline bool same(const Number& a, const Number& b) { return near_equal(a, b, 1e-12); }

// Asymptote of a tanh form: T -> -sign(mu alpha) as t -> +inf.
std::optional<Vec> tanh_limit(const TanhForm& f);

ClosedFormSolution make_tanh_solution(std::string id, DlvModel model, TanhForm form, Window window);

ClosedFormSolution make_rm2000_a(const ParamMap& p);
ClosedFormSolution make_rm2000_b(const ParamMap& p);
ClosedFormSolution make_fisher(const ParamMap& p, bool coth);
ClosedFormSolution make_predprey(const ParamMap& p);
ClosedFormSolution make_hung11(const ParamMap& p);
ClosedFormSolution make_ch12(const ParamMap& p);
ClosedFormSolution make_cpp(const ParamMap& p);

ClosedFormSolution make_cd11_linear(const ParamMap& p, bool trig);
ClosedFormSolution make_cd11_tanh(const ParamMap& p, bool cubic_sinh);
ClosedFormSolution make_cd11_comp(const ParamMap& p);
ClosedFormSolution make_cd21(const ParamMap& p);
ClosedFormSolution make_cd13(const ParamMap& p);

ClosedFormSolution make_hk_family(const ParamMap& p);
ClosedFormSolution make_hk_sin(const ParamMap& p);

}  // namespace dlv::detail

#include "loewner/theorem.hpp"

#include <algorithm>
#include <cctype>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

using enum TheoremId;
using S = InstanceShape;
using H = SumHypothesis;
constexpr auto kLog = FunctionClass::LogConvex;
constexpr auto kSq = FunctionClass::Superquadratic;
constexpr auto kCvx = FunctionClass::Convex;

std::vector<TheoremInfo> build_registry() {
  return {
      {JmBase, "JM-BASE", S::Mercer, kCvx, H::None, false, false, 2,
       "f(M+m-sum Phi_i(B_i)) <= f(m)+f(M)-sum Phi_i(f(B_i))"},
      {MosBase, "MOS-BASE", S::Quadruple, kCvx, H::EqualSum, true, false, 2,
       "f(Phi(B))+f(Phi(C)) <= Phi(f(A))+Phi(f(D))"},
      {LcQuad, "LC-QUAD", S::Quadruple, kLog, H::Conditions, false, false, 5,
       "f(B)+f(C) <= g(B)+g(C) <= L(B)+L(C) <= g(A)+g(D) <= f(A)+f(D)"},
      {LcPow, "LC-POW", S::Quadruple, kLog, H::Conditions, false, false, 5,
       "LC-QUAD for t^p, p <= 0, with the closed-form constant"},
      {LcMid, "LC-MID", S::Midpoint, kLog, H::None, false, false, 5,
       "f(X) <= g(X) <= L(X) <= (g(A)+g(D))/2 <= (f(A)+f(D))/2, X = (A+D)/2"},
      {LcMap, "LC-MAP", S::Quadruple, kLog, H::EqualSum, true, false, 5,
       "Phi(f(B))+Phi(f(C)) <= ... <= f(Phi(A))+f(Phi(D))"},
      {LcMapV2, "LC-MAP-V2", S::Quadruple, kLog, H::EqualSum, true, false, 5,
       "f(Phi(B))+f(Phi(C)) <= ... <= Phi(f(A))+Phi(f(D))"},
      {LcMapV3, "LC-MAP-V3", S::Quadruple, kLog, H::EqualSum, true, false, 5,
       "Phi(f(B))+f(Phi(C)) <= ... <= f(Phi(A))+Phi(f(D))"},
      {LcMulti, "LC-MULTI", S::Multi, kLog, H::EqualSum, false, false, 5,
       "sum Phi_i(f(B_i))+f(sum Phi_i(C_i)) <= ... <= f(sum Phi_i(A_i))+sum Phi_i(f(D_i))"},
      {LcMercer, "LC-MERCER", S::Mercer, kLog, H::None, false, false, 3,
       "LC-MULTI with A_i = m, D_i = M, C_i = M+m-B_i, first three terms"},
      {SqMap, "SQ-MAP", S::Quadruple, kSq, H::EqualSum, true, true, 2,
       "f(Phi(B))+f(Phi(C)) <= Phi(f(A))+Phi(f(D)) - corrections"},
      {SqPow, "SQ-POW", S::Quadruple, kSq, H::EqualSum, true, true, 2, "SQ-MAP for t^p, p >= 2"},
      {SqMapV2, "SQ-MAP-V2", S::Quadruple, kSq, H::EqualSum, true, true, 2,
       "Phi(f(B))+Phi(f(C)) <= f(Phi(A))+f(Phi(D)) - corrections"},
      {SqMapV3, "SQ-MAP-V3", S::Quadruple, kSq, H::EqualSum, true, true, 2,
       "f(Phi(B))+Phi(f(C)) <= Phi(f(A))+f(Phi(D)) - corrections"},
      {SqMultiA, "SQ-MULTI-A", S::Multi, kSq, H::EqualSum, false, true, 2,
       "f(sum Phi_i(B_i))+f(sum Phi_i(C_i)) + corrections <= sum Phi_i(f(A_i))+sum Phi_i(f(D_i)) - corrections"},
      {SqMultiB, "SQ-MULTI-B", S::Multi, kSq, H::EqualSum, false, true, 2,
       "sum Phi_i(f(B_i))+f(sum Phi_i(C_i)) + corrections <= f(sum Phi_i(A_i))+sum Phi_i(f(D_i)) - corrections"},
      {SqMercer, "SQ-MERCER", S::Mercer, kSq, H::None, false, true, 2,
       "f(M+m-X) + corrections <= f(m)+f(M)-2f(0)-sum Phi_i(f(B_i))"},
      {SqQuad, "SQ-QUAD", S::Quadruple, kSq, H::Conditions, false, true, 2,
       "f(B)+f(C) + corrections <= f(A)+f(D) - corrections"},
      {SqMid, "SQ-MID", S::Midpoint, kSq, H::None, false, true, 2,
       "f(X) + correction <= (f(A)+f(D))/2 - corrections"},
  };
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

const std::vector<TheoremInfo>& theorem_registry() {
  static const std::vector<TheoremInfo> registry = build_registry();
  return registry;
}

const TheoremInfo& theorem_info(TheoremId id) {
  return theorem_registry().at(static_cast<std::size_t>(id));
}

std::string_view to_string(TheoremId id) { return theorem_info(id).name; }

TheoremId parse_theorem_id(std::string_view s) {
  const std::string key = upper(s);
  for (const auto& info : theorem_registry()) {
    if (info.name == key) return info.id;
  }
  throw UnknownKind("unknown theorem id '" + std::string(s) + "'");
}

std::string_view to_string(InstanceShape s) {
  switch (s) {
    case S::Quadruple: return "quadruple";
    case S::Midpoint: return "midpoint";
    case S::Multi: return "multi";
    case S::Mercer: return "mercer";
  }
  return "quadruple";
}

std::vector<std::string> applicable_relaxations(TheoremId id) {
  switch (theorem_info(id).sums) {
    case H::Conditions: return {"cond-i-f", "cond-i-sum", "cond-ii-f", "cond-ii-sum"};
    case H::EqualSum: return {"equal-sum"};
    case H::None: return {};
  }
  return {};
}

bool function_class_matches(TheoremId id, const FunctionDescriptor& f) {
  return f.has(theorem_info(id).required_class);
}

std::optional<TheoremId> baseline_theorem(TheoremId id) {
  switch (id) {
    case LcMercer:
    case SqMercer: return JmBase;
    case LcQuad:
    case LcPow:
    case LcMid:
    case LcMap:
    case LcMapV2:
    case LcMapV3:
    case SqMap:
    case SqPow:
    case SqMapV2:
    case SqMapV3:
    case SqQuad:
    case SqMid: return MosBase;
    default: return std::nullopt;
  }
}

}  // namespace loewner

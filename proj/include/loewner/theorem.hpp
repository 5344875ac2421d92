#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/scalar_function.hpp"

namespace loewner {

enum class TheoremId {
  JmBase,
  MosBase,
  LcQuad,
  LcPow,
  LcMid,
  LcMap,
  LcMapV2,
  LcMapV3,
  LcMulti,
  LcMercer,
  SqMap,
  SqPow,
  SqMapV2,
  SqMapV3,
  SqMultiA,
  SqMultiB,
  SqMercer,
  SqQuad,
  SqMid,
};

enum class InstanceShape { Quadruple, Midpoint, Multi, Mercer };

/// What the builder demands of the sums A + D and B + C.
enum class SumHypothesis {
  None,        // midpoint and Mercer shapes carry it by construction
  EqualSum,    // A + D = B + C (per quadruple for families)
  Conditions,  // (i) B+C <= A+D, f(m) <= f(M)  or  (ii) A+D <= B+C, f(M) <= f(m)
};

struct TheoremInfo {
  TheoremId id;
  std::string_view name;  // canonical CLI string, e.g. "LC-QUAD"
  InstanceShape shape;
  FunctionClass required_class;
  SumHypothesis sums;
  bool single_map;        // takes one Phi (family theorems carry theirs in the instance)
  bool nonnegative_a;     // 0 <= A required
  int term_count;
  std::string_view summary;
};

const std::vector<TheoremInfo>& theorem_registry();
const TheoremInfo& theorem_info(TheoremId id);
std::string_view to_string(TheoremId id);

/// Case-insensitive; throws UnknownKind.
TheoremId parse_theorem_id(std::string_view s);

std::string_view to_string(InstanceShape s);

inline constexpr std::array<std::string_view, 5> kRelaxationNames = {
    "cond-i-f", "cond-i-sum", "cond-ii-f", "cond-ii-sum", "equal-sum"};

/// Relaxations the builder of `id` knows how to skip.
std::vector<std::string> applicable_relaxations(TheoremId id);

/// Class compatibility alone (no parameter checks such as p <= 0 for LC-POW).
bool function_class_matches(TheoremId id, const FunctionDescriptor& f);

/// The 2-term baseline evaluated next to a refined chain, when one exists for
/// the shape: MOS-BASE for quadruple-like chains, JM-BASE for Mercer chains.
std::optional<TheoremId> baseline_theorem(TheoremId id);

}  // namespace loewner

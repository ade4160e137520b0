#pragma once

#include <optional>
#include <utility>

namespace latsep {

/// Outcome of a condition check. `witness` carries the certificate that makes
/// the outcome checkable: a counterexample when a universal condition fails,
/// or the constructed object when an existential condition holds.
template <class Witness>
struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  static Verdict pass() { return {true, std::nullopt}; }
  static Verdict pass(Witness w) { return {true, std::move(w)}; }
  static Verdict fail(Witness w) { return {false, std::move(w)}; }

  explicit operator bool() const { return holds; }
};

}  // namespace latsep

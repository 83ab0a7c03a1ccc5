#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "simptor/caps.hpp"
#include "simptor/io.hpp"

namespace simptor {

/// A parsed input object. Homs also fill `complex` as a complex of bound 1.
struct Input {
  ObjectKind kind = ObjectKind::kGroup;
  FiniteGroup group = trivial_group();
  std::optional<BoundedChainComplex> complex;
  std::optional<TruncatedSimplicialGroup> simplicial;
  std::optional<GroupHom> hom;
};

// A JSON file path, inline JSON text, or a builtin spec.
Input load_input(const std::string& source, const Caps& caps = {});
Input load_input(const json& j, const Caps& caps = {});

struct CommandOutput {
  json value;
  std::string text;
  int status = 0;  // 1 when a verify check failed
};

CommandOutput run_build(const Input& in);
CommandOutput run_moore(const Input& in);
CommandOutput run_homotopy(const Input& in);
// theory: cok, ker (complexes) or geq, ngeq (simplicial).
CommandOutput run_radical(const Input& in, const std::string& theory, int n);
CommandOutput run_cot(const Input& in, int n);
CommandOutput run_cosk(const Input& in, int n, const Caps& caps = {});
CommandOutput run_lattice(const Input& in);
CommandOutput run_em(const std::string& group, int n, int D, const Caps& caps = {});
CommandOutput run_pi(const Input& in, const std::string& upper, const std::string& lower);
// suite: a name from suite_names() or "all".
CommandOutput run_verify(const std::string& suite, std::uint64_t seed, const Caps& caps = {});

}  // namespace simptor

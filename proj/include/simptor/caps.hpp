#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace simptor {

// Size guards. Every exhaustive kernel consults one of these and raises a
// cap error instead of running away.
struct Caps {
  std::size_t max_order = 1024;       // groups built by constructors or from tables
  std::size_t level_cap = 1'000'000;  // simplicial levels and tuple searches
  std::size_t iso_cap = 64;           // brute-force isomorphism search (non-abelian)
  std::uint64_t hom_family_cap = 10'000'000;  // chain-map enumeration per pair

  // Parses "max-order=2048,level-cap=500000,iso-cap=64,hom-cap=1000" on top of
  // the defaults. Unknown keys raise kParseError.
  static Caps parse(std::string_view text);
  static Caps parse(std::string_view text, Caps base);

  // Defaults overridden by the SIMPTOR_CAPS environment variable, if set.
  static Caps from_env();
};

}  // namespace simptor

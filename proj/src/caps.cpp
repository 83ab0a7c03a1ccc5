#include "simptor/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "simptor/errors.hpp"

namespace simptor {

namespace {

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || out == 0) {
    fail(ErrorCode::kParseError,
         "cap '" + std::string(key) + "' needs a positive integer, got '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

Caps Caps::parse(std::string_view text) { return parse(text, Caps{}); }

Caps Caps::parse(std::string_view text, Caps base) {
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kParseError, "cap entry '" + std::string(item) + "' is not key=value");
    }
    std::string_view key = item.substr(0, eq);
    std::uint64_t value = parse_count(key, item.substr(eq + 1));
    if (key == "max-order") {
      base.max_order = value;
    } else if (key == "level-cap") {
      base.level_cap = value;
    } else if (key == "iso-cap") {
      base.iso_cap = value;
    } else if (key == "hom-cap") {
      base.hom_family_cap = value;
    } else {
      fail(ErrorCode::kParseError, "unknown cap '" + std::string(key) + "'");
    }
  }
  return base;
}

Caps Caps::from_env() {
  const char* env = std::getenv("SIMPTOR_CAPS");
  if (env == nullptr) return Caps{};
  return parse(env);
}

}  // namespace simptor

#include "oalat/fixtures.hpp"

namespace oalat {

std::optional<std::string_view> find_fixture(std::string_view name) {
  for (const Fixture& f : fixtures()) {
    if (f.name == name) return f.text;
  }
  for (const Fixture& f : fixtures()) {
    const auto dot = f.name.rfind('.');
    if (f.name.substr(0, dot) == name) return f.text;
  }
  return std::nullopt;
}

}  // namespace oalat

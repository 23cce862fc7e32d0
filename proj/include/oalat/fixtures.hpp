#pragma once

// Data files compiled into the library: the three published hypergraphs, a
// vector realization of Bub's, and the nOA golden equations.

#include <optional>
#include <span>
#include <string_view>

namespace oalat {

struct Fixture {
  std::string_view name;  // file name, e.g. "peres_57_40.mmp"
  std::string_view text;
};

std::span<const Fixture> fixtures();

/// Exact name, or the name without its extension ("peres_57_40").
std::optional<std::string_view> find_fixture(std::string_view name);

}  // namespace oalat

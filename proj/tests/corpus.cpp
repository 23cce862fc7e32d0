#include "corpus.hpp"

#include <stdexcept>

#include "oalat/fixtures.hpp"

namespace oalat::testing {

OmlLattice lattice_from_order(std::size_t n, const std::vector<NodeId>& ortho,
                              const std::vector<std::pair<NodeId, NodeId>>& below) {
  LatticeTables t;
  t.node_count = n;
  t.ortho = ortho;
  t.le.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    t.le[x * n + x] = 1;
    t.le[0 * n + x] = 1;
    t.le[x * n + 1] = 1;
  }
  for (auto [x, y] : below) t.le[x * n + y] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (t.le[i * n + k] && t.le[k * n + j]) t.le[i * n + j] = 1;
      }
    }
  }
  t.join.assign(n * n, 0);
  t.meet.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      bool have_join = false, have_meet = false;
      for (std::size_t z = 0; z < n; ++z) {
        if (t.le[x * n + z] && t.le[y * n + z]) {
          const bool least = [&] {
            for (std::size_t w = 0; w < n; ++w) {
              if (t.le[x * n + w] && t.le[y * n + w] && !t.le[z * n + w]) return false;
            }
            return true;
          }();
          if (least) {
            t.join[x * n + y] = static_cast<NodeId>(z);
            have_join = true;
          }
        }
        if (t.le[z * n + x] && t.le[z * n + y]) {
          const bool greatest = [&] {
            for (std::size_t w = 0; w < n; ++w) {
              if (t.le[w * n + x] && t.le[w * n + y] && !t.le[w * n + z]) return false;
            }
            return true;
          }();
          if (greatest) {
            t.meet[x * n + y] = static_cast<NodeId>(z);
            have_meet = true;
          }
        }
      }
      if (!have_join || !have_meet) throw std::logic_error("order is not a lattice");
    }
  }
  return OmlLattice(std::move(t), Hypergraph{});
}

std::vector<CorpusLattice> small_corpus() {
  std::vector<CorpusLattice> out;
  for (const char* s : {"123.", "123,345.", "123,456.", "123,345,567.", "123,145,167.",
                        "123,345,678.", "123,456,789.", "123,345,567,789.", "123,145,167,189."}) {
    out.push_back({s, build_hasse(parse_mmp(s))});
  }
  // 0, 1, a, a'
  out.push_back({"boolean-4", lattice_from_order(4, {1, 0, 3, 2}, {})});
  // 0, 1, a, b, a', b' with no order between the middle four
  out.push_back({"MO2", lattice_from_order(6, {1, 0, 4, 5, 2, 3}, {})});
  // hexagon: 0 < a < b' < 1 and 0 < b < a' < 1
  out.push_back({"O6", lattice_from_order(6, {1, 0, 4, 5, 2, 3}, {{2, 5}, {3, 4}})});
  return out;
}

std::string fixture_text(const std::string& name) {
  const auto text = find_fixture(name);
  if (!text) throw std::invalid_argument("no fixture " + name);
  return std::string(*text);
}

}  // namespace oalat::testing

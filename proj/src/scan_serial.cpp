#include "scan_kernel.hpp"

namespace oalat::detail {

// Reference path: one worker, units in order.  The OpenMP kernel must agree
// with this one on every deterministic scan.
UnitMerge scan_units_serial(const ScanContext& ctx) {
  Worker worker(ctx);
  UnitMerge merge;
  UnitResult r;
  std::atomic<bool> stop{false};
  const std::size_t units = ctx.unit_count();
  for (std::size_t u = 0; u < units; ++u) {
    worker.run_unit(u, r, &stop);
    merge.add(u, r);
    if (stop.load(std::memory_order_relaxed)) break;
  }
  return merge;
}

}  // namespace oalat::detail

#include <omp.h>

#include "scan_kernel.hpp"

namespace oalat::detail {

UnitMerge scan_units_parallel(const ScanContext& ctx, int workers) {
  UnitMerge merge;
  std::atomic<bool> stop{false};
  const auto units = static_cast<std::int64_t>(ctx.unit_count());

#pragma omp parallel num_threads(workers)
  {
    Worker worker(ctx);
    UnitMerge local;
    UnitResult r;
    // Units differ wildly in cost once pruning kicks in, so hand them out
    // one at a time.
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t u = 0; u < units; ++u) {
      if (stop.load(std::memory_order_relaxed)) continue;
      worker.run_unit(static_cast<std::size_t>(u), r, &stop);
      local.add(static_cast<std::size_t>(u), r);
    }
#pragma omp critical(oalat_scan_merge)
    merge.absorb(local);
  }
  return merge;
}

}  // namespace oalat::detail

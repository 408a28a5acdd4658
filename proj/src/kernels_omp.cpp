#include "kernels_detail.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tatecup::kernels::omp {

namespace {
// Below this many items the fork/join cost dominates.
constexpr std::ptrdiff_t kMinParallelItems = 64;
}  // namespace

void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row) {
    const IntVector& p = columns[pivot];
    const auto count = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallelItems)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        detail::column_update(columns[targets[i]], p, factors[i], moduli, first_row);
    }
}

void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out) {
    const auto count = static_cast<std::ptrdiff_t>(power(module.group.order, degree + 1));
#pragma omp parallel for schedule(static) if (count >= kMinParallelItems)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        detail::coboundary_item(module, degree, in, out, static_cast<std::size_t>(idx));
    }
}

void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out) {
    const auto count = static_cast<std::ptrdiff_t>(power(group.order, left_degree + right_degree));
#pragma omp parallel for schedule(static) if (count >= kMinParallelItems)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        detail::cup_item(group, right, pairing, left_degree, right_degree, left, right_values, out,
                         static_cast<std::size_t>(idx));
    }
}

}  // namespace tatecup::kernels::omp

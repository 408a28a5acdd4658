#include "kernels_detail.hpp"
#include "tatecup/error.hpp"

namespace tatecup::kernels::serial {

void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row) {
    const IntVector& p = columns[pivot];
    for (std::size_t i = 0; i < targets.size(); ++i) {
        detail::column_update(columns[targets[i]], p, factors[i], moduli, first_row);
    }
}

void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out) {
    const std::size_t count = power(module.group.order, degree + 1);
    for (std::size_t idx = 0; idx < count; ++idx) detail::coboundary_item(module, degree, in, out, idx);
}

void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out) {
    const std::size_t count = power(group.order, left_degree + right_degree);
    for (std::size_t idx = 0; idx < count; ++idx) {
        detail::cup_item(group, right, pairing, left_degree, right_degree, left, right_values, out, idx);
    }
}

}  // namespace tatecup::kernels::serial

#include "tatecup/kernels.hpp"

#include <atomic>
#include <limits>

#include "kernels_detail.hpp"
#include "tatecup/error.hpp"

namespace tatecup::kernels {

namespace {

Backend initial_backend() { return openmp_available() ? Backend::openmp : Backend::serial; }

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{initial_backend()};
    return slot;
}

}  // namespace

bool openmp_available() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

Backend current_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) noexcept { backend_slot().store(backend, std::memory_order_relaxed); }

std::size_t power(std::size_t base, int exponent) {
    if (exponent < 0) throw InputError("negative cochain degree");
    if (exponent > detail::kMaxDegree) throw InputError("cochain degree exceeds supported maximum");
    std::size_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
            throw InputError("tuple count overflows");
        }
        out *= base;
    }
    return out;
}

void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row) {
    if (current_backend() == Backend::openmp) {
        omp::reduce_columns(columns, pivot, targets, factors, moduli, first_row);
    } else {
        serial::reduce_columns(columns, pivot, targets, factors, moduli, first_row);
    }
}

void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out) {
    if (current_backend() == Backend::openmp) {
        omp::coboundary(module, degree, in, out);
    } else {
        serial::coboundary(module, degree, in, out);
    }
}

void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out) {
    if (current_backend() == Backend::openmp) {
        omp::cup(group, right, pairing, left_degree, right_degree, left, right_values, out);
    } else {
        serial::cup(group, right, pairing, left_degree, right_degree, left, right_values, out);
    }
}

}  // namespace tatecup::kernels

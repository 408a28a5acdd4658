#pragma once

// Data-parallel inner loops of the engine.
//
// Every kernel exists twice: a serial reference in namespace `serial` and an
// OpenMP version in namespace `omp`. Both produce bit-identical output; the
// test suite compares them and bench/ times them against each other. The
// free functions at the bottom dispatch on the process-wide backend.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tatecup/int_matrix.hpp"

namespace tatecup::kernels {

enum class Backend { serial, openmp };

bool openmp_available() noexcept;
Backend current_backend() noexcept;
void set_backend(Backend backend) noexcept;

// Group data needed by the cochain kernels. `table[a * order + b]` is ab.
struct GroupView {
    std::span<const uint32_t> table;
    std::size_t order = 0;
};

// A G-module in canonical coordinates: one k x k matrix per group element.
struct ModuleView {
    GroupView group;
    const std::vector<IntMatrix>* action = nullptr;
    std::span<const Int> moduli;
    std::size_t gens() const noexcept { return moduli.size(); }
};

// Bilinear map on canonical generators: tensor[a * right_gens + b] holds the
// output coordinates of e_a x e_b.
struct PairingView {
    std::size_t left_gens = 0;
    std::size_t right_gens = 0;
    std::span<const IntVector> tensor;
    std::span<const Int> out_moduli;
};

namespace serial {

void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row);
void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out);
void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out);

}  // namespace serial

namespace omp {

void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row);
void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out);
void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out);

}  // namespace omp

// columns[t] -= factors[i] * columns[pivot] for t = targets[i], touching rows
// >= first_row only and reducing each touched row r modulo moduli[r].
void reduce_columns(std::vector<IntVector>& columns, std::size_t pivot, std::span<const std::size_t> targets,
                    std::span<const Int> factors, std::span<const Int> moduli, std::size_t first_row = 0);

// out = d_r(in), both as dense tables indexed by (tuple, coordinate).
void coboundary(const ModuleView& module, int degree, std::span<const Int> in, std::span<Int> out);

// out = left \cup right for the given pairing; `right` supplies the action on
// the right-hand module.
void cup(const GroupView& group, const ModuleView& right, const PairingView& pairing, int left_degree,
         int right_degree, std::span<const Int> left, std::span<const Int> right_values, std::span<Int> out);

// n^r, checked against overflow of std::size_t.
std::size_t power(std::size_t base, int exponent);

}  // namespace tatecup::kernels

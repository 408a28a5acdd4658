#pragma once

// Smith normal form, Hermite bases of lattices, kernels of maps between
// diagonal groups, and linear solving modulo per-row moduli.
//
// Throughout, a "moduli" vector describes a diagonal group
// Z/m_0 + Z/m_1 + ... where m_i == 0 stands for a free summand Z. Lattices
// live in Z^n and always contain the relation lattice spanned by m_i e_i.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tatecup/int_matrix.hpp"

namespace tatecup {

struct SmithForm {
    IntMatrix U;      // rows x rows, unimodular
    IntMatrix S;      // diagonal, d_1 | d_2 | ..., nonnegative
    IntMatrix V;      // cols x cols, unimodular
    IntMatrix U_inv;  // inverse of U, only filled when requested
    std::size_t rank = 0;

    std::vector<Int> diagonal() const;
};

// U * M * V = S. Pivot is the entry of least absolute value, ties broken by
// row-major position. Total: never fails.
SmithForm smith_normal_form(const IntMatrix& m, bool with_inverse = false);

// Row-sparse integer matrix, used for coboundary maps.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, Int>>> entries;  // per row, sorted by column

    IntMatrix to_dense() const;
    static SparseMatrix from_dense(const IntMatrix& m);
};

// Echelon basis of the lattice span(generators) + span(m_i e_i).
//
// Column j has its pivot at row pivot_rows[j], zeros above it, a positive
// pivot, and its entries at later pivot rows reduced into [0, pivot). Two
// lattices are equal exactly when their bases compare equal.
class LatticeBasis {
public:
    LatticeBasis() = default;
    LatticeBasis(std::vector<IntVector> generators, std::vector<Int> moduli);

    std::size_t dimension() const noexcept { return moduli_.size(); }
    std::size_t rank() const noexcept { return columns_.size(); }
    const std::vector<IntVector>& columns() const noexcept { return columns_; }
    const std::vector<std::size_t>& pivot_rows() const noexcept { return pivots_; }
    const std::vector<Int>& moduli() const noexcept { return moduli_; }

    // Coordinates of v in this basis, or nullopt when v is not in the lattice.
    std::optional<IntVector> coordinates(std::span<const Int> v) const;
    bool contains(std::span<const Int> v) const { return coordinates(v).has_value(); }
    // The lexicographically least nonnegative-in-pivot-rows representative of v
    // modulo the lattice.
    IntVector reduce(std::span<const Int> v) const;
    IntVector combine(std::span<const Int> coords) const;

    friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
        return a.moduli_ == b.moduli_ && a.pivots_ == b.pivots_ && a.columns_ == b.columns_;
    }

private:
    std::vector<Int> moduli_;
    std::vector<IntVector> columns_;
    std::vector<std::size_t> pivots_;
};

// Generators of {x in Z^n : M x = 0 modulo row_moduli}, reduced modulo
// col_moduli. The lattice spanned by the result together with the column
// relations is the full kernel lattice, provided M maps column relations into
// row relations.
std::vector<IntVector> kernel_generators(const SparseMatrix& m, std::span<const Int> row_moduli,
                                         std::span<const Int> col_moduli);

// Solves M x = b row-wise modulo `moduli` (0 = over the integers). Keeps the
// Smith form of the augmented matrix so repeated right-hand sides are cheap.
class LatticeSolver {
public:
    LatticeSolver(const IntMatrix& m, std::vector<Int> moduli);
    std::optional<IntVector> solve(std::span<const Int> b) const;
    std::size_t unknowns() const noexcept { return unknowns_; }

private:
    std::size_t unknowns_ = 0;
    std::vector<Int> moduli_;
    SmithForm smith_;
};

// Throws InputError on dimension mismatch; nullopt means no solution exists.
std::optional<IntVector> solve_in_lattice(const IntMatrix& m, std::span<const Int> b, std::span<const Int> moduli);

// Reduces every entry of v modulo the matching modulus.
void reduce_vector(std::span<Int> v, std::span<const Int> moduli);

}  // namespace tatecup

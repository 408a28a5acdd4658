#pragma once

// Finitely generated abelian groups in invariant-factor form, their elements,
// homomorphisms between them, and subquotients of diagonal groups.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tatecup/int_matrix.hpp"
#include "tatecup/lattice.hpp"

namespace tatecup {

// Z/d_1 + ... + Z/d_t + Z^f with d_i >= 2 and d_i | d_{i+1}.
//
// Canonical coordinates list the torsion summands first, then the free ones.
// A group remembers the presentation it was built from: to_canonical maps
// presentation coordinates to canonical ones, from_canonical goes back.
class FgAbGroup {
public:
    FgAbGroup() = default;

    static FgAbGroup canonical(std::vector<Int> torsion, std::size_t free_rank);
    static FgAbGroup trivial() { return canonical({}, 0); }
    static FgAbGroup integers() { return canonical({}, 1); }
    static FgAbGroup cyclic(long long n);
    // Z^p / (column span of relations).
    static FgAbGroup from_relations(std::size_t generators, const IntMatrix& relations);
    // Z/m_0 + Z/m_1 + ..., m_i == 0 meaning Z.
    static FgAbGroup from_diagonal(std::span<const Int> moduli);

    const std::vector<Int>& torsion() const noexcept { return torsion_; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    std::size_t gens() const noexcept { return torsion_.size() + free_rank_; }
    // Per-coordinate moduli: the invariant factors followed by zeros.
    const std::vector<Int>& moduli() const noexcept { return moduli_; }
    const IntMatrix& to_canonical() const noexcept { return to_canonical_; }
    const IntMatrix& from_canonical() const noexcept { return from_canonical_; }
    std::size_t presentation_gens() const noexcept { return to_canonical_.cols(); }

    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_trivial() const noexcept { return gens() == 0; }
    // Group order; nullopt for infinite groups.
    std::optional<Int> order() const;
    // Order of the i-th canonical generator (0 for free generators).
    const Int& generator_order(std::size_t i) const { return moduli_[i]; }

    IntVector reduce(IntVector coords) const;
    IntVector from_presentation(std::span<const Int> presentation_coords) const;
    IntVector to_presentation(std::span<const Int> canonical_coords) const;

    // Every element of a finite group, in lexicographic coordinate order.
    std::vector<IntVector> elements() const;

    std::string describe() const;  // e.g. "Z/2 + Z/4 + Z"

    // Same invariants (the presentation may differ).
    bool isomorphic_to(const FgAbGroup& other) const {
        return torsion_ == other.torsion_ && free_rank_ == other.free_rank_;
    }

private:
    std::vector<Int> torsion_;
    std::size_t free_rank_ = 0;
    std::vector<Int> moduli_;
    IntMatrix to_canonical_;
    IntMatrix from_canonical_;
};

using AbGroupPtr = std::shared_ptr<const FgAbGroup>;

AbGroupPtr make_group(FgAbGroup g);

class AbElement {
public:
    AbElement(AbGroupPtr parent, IntVector coords);
    static AbElement zero(AbGroupPtr parent);

    const AbGroupPtr& parent() const noexcept { return parent_; }
    const IntVector& coords() const noexcept { return coords_; }
    bool is_zero() const;

    AbElement operator+(const AbElement& rhs) const;
    AbElement operator-(const AbElement& rhs) const;
    AbElement operator-() const;
    AbElement scaled(const Int& factor) const;
    friend bool operator==(const AbElement& a, const AbElement& b) { return a.coords_ == b.coords_; }

    std::string to_string() const;

private:
    AbGroupPtr parent_;
    IntVector coords_;
};

// Homomorphism given by its matrix on canonical generators (target x source).
class AbHom {
public:
    AbHom() = default;
    // Validates well-definedness: d * column_j vanishes in the target for every
    // torsion generator j of order d.
    AbHom(AbGroupPtr source, AbGroupPtr target, IntMatrix matrix);
    static AbHom identity(const AbGroupPtr& g);
    static AbHom zero(AbGroupPtr source, AbGroupPtr target);

    const AbGroupPtr& source() const noexcept { return source_; }
    const AbGroupPtr& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    IntVector apply(std::span<const Int> coords) const;
    AbElement operator()(const AbElement& a) const;
    AbHom compose(const AbHom& inner) const;  // this o inner
    AbHom operator+(const AbHom& rhs) const;
    AbHom operator-(const AbHom& rhs) const;
    bool equals(const AbHom& other) const;

    // Generators of the kernel as canonical source coordinates (may be empty).
    std::vector<IntVector> kernel() const;
    bool is_injective() const;
    bool is_surjective() const;
    // Some preimage of y, or nullopt when y is not in the image.
    std::optional<IntVector> preimage(std::span<const Int> y) const;

private:
    AbGroupPtr source_;
    AbGroupPtr target_;
    IntMatrix matrix_;
};

// (numerator + relations) / (denominator + relations) inside a diagonal group.
class Subquotient {
public:
    Subquotient(std::vector<Int> ambient_moduli, std::vector<IntVector> numerator, std::vector<IntVector> denominator);

    const AbGroupPtr& group() const noexcept { return group_; }
    const std::vector<Int>& ambient_moduli() const noexcept { return ambient_; }
    const LatticeBasis& numerator() const noexcept { return numerator_; }
    const LatticeBasis& denominator() const noexcept { return denominator_; }

    // Canonical coordinates of an ambient vector in the numerator lattice.
    // Throws CheckFailure if x is not in the numerator.
    IntVector project(std::span<const Int> x) const;
    std::optional<IntVector> try_project(std::span<const Int> x) const;
    // Deterministic representative: the lexicographically least reduced
    // ambient vector in the coset named by `canonical`.
    IntVector section(std::span<const Int> canonical) const;
    // Projection matrix from numerator-basis coordinates.
    const IntMatrix& projection_matrix() const noexcept { return projection_; }

private:
    std::vector<Int> ambient_;
    LatticeBasis numerator_;
    LatticeBasis denominator_;
    IntMatrix projection_;                // canonical x rank(numerator)
    std::vector<IntVector> section_gens_; // ambient vector per canonical generator
    AbGroupPtr group_;
};

// Convenience form taking elements of a canonical ambient group.
Subquotient subquotient(const FgAbGroup& ambient, const std::vector<AbElement>& numerator,
                        const std::vector<AbElement>& denominator);

}  // namespace tatecup

#pragma once

// Nonhomogeneous cochains, coboundaries and cohomology groups.
//
// A cochain of degree r on a G-module A is a dense table: tuple index
// t = x_1 n^{r-1} + ... + x_r (n = |G|) followed by the k canonical
// coordinates of the value. Degree 0 is a single value.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tatecup/gmodule.hpp"
#include "tatecup/lattice.hpp"

namespace tatecup {

class Cochain {
public:
    Cochain() = default;
    Cochain(ModulePtr module, int degree, IntVector values);
    static Cochain zero(ModulePtr module, int degree);
    // Same value at every tuple.
    static Cochain constant(ModulePtr module, int degree, std::span<const Int> value);

    const ModulePtr& module() const noexcept { return module_; }
    int degree() const noexcept { return degree_; }
    std::size_t tuple_count() const noexcept { return tuples_; }
    const IntVector& values() const noexcept { return values_; }
    std::span<const Int> value(std::size_t tuple) const;
    std::span<const Int> at(const std::vector<uint32_t>& tuple) const;
    bool is_zero() const;

    Cochain operator+(const Cochain& rhs) const;
    Cochain operator-(const Cochain& rhs) const;
    Cochain scaled(const Int& factor) const;
    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.module_.get() == b.module_.get() && a.degree_ == b.degree_ && a.values_ == b.values_;
    }

    std::string to_string() const;

private:
    ModulePtr module_;
    int degree_ = 0;
    std::size_t tuples_ = 1;
    IntVector values_;
};

// Uniform values: torsion coordinates in [0, d), free ones in [-bound, bound].
Cochain random_cochain(const ModulePtr& module, int degree, std::mt19937_64& rng, int bound = 3);
IntVector random_element(const FgAbGroup& group, std::mt19937_64& rng, int bound = 3);

Cochain coboundary(const Cochain& f);

// Column cap for coboundary matrices: |G|^{r+1} * generators must not exceed it.
std::size_t max_columns();
void set_max_columns(std::size_t cap);
void check_cap(const GModule& module, int degree);

// d_r as a (|G|^{r+1} k) x (|G|^r k) matrix on canonical coordinates.
SparseMatrix coboundary_sparse(const GModule& module, int degree);
IntMatrix coboundary_matrix(const GModule& module, int degree);

class CohomologyGroup;
using CohomologyPtr = std::shared_ptr<const CohomologyGroup>;

class CohClass {
public:
    CohClass() = default;
    CohClass(CohomologyPtr parent, IntVector coords);

    const CohomologyPtr& parent() const noexcept { return parent_; }
    const IntVector& coords() const noexcept { return coords_; }
    bool is_zero() const;
    CohClass operator+(const CohClass& rhs) const;
    CohClass operator-(const CohClass& rhs) const;
    CohClass scaled(const Int& factor) const;
    friend bool operator==(const CohClass& a, const CohClass& b) { return a.coords_ == b.coords_; }
    std::string to_string() const;

private:
    CohomologyPtr parent_;
    IntVector coords_;
};

// H^r(G, A) = Z^r / B^r with B^0 = 0.
class CohomologyGroup : public std::enable_shared_from_this<CohomologyGroup> {
public:
    CohomologyGroup(ModulePtr module, int degree);

    const ModulePtr& module() const noexcept { return module_; }
    int degree() const noexcept { return degree_; }
    const AbGroupPtr& group() const noexcept { return quotient_.group(); }
    const Subquotient& subquotient() const noexcept { return quotient_; }
    std::string describe() const { return group()->describe(); }

    // Throws CheckFailure naming the first tuple where d f does not vanish.
    CohClass classify(const Cochain& f) const;
    // The deterministic section cocycle.
    Cochain representative(const CohClass& c) const;
    CohClass element(IntVector coords) const;
    CohClass zero() const;
    std::vector<CohClass> generators() const;
    // Every class; the group must be finite.
    std::vector<CohClass> elements() const;
    bool is_coboundary(const Cochain& f) const;

private:
    ModulePtr module_;
    int degree_;
    Subquotient quotient_;
};

// Cached per (module, degree); safe to call from several threads.
CohomologyPtr cohomology(const ModulePtr& module, int degree);
void clear_cohomology_cache();

// (phi, psi)^*: f -> psi o f o phi.
Cochain induced_on_cochains(const GModuleMorphism& m, const Cochain& f);
CohClass induced_on_cohomology(const GModuleMorphism& m, const CohClass& c);
// Matrix of the induced map on canonical cohomology coordinates.
IntMatrix induced_matrix(const GModuleMorphism& m, int degree);

// (s f)(t_1, ..., t_r) = s f(s^-1 t_1 s, ..., s^-1 t_r s). Commutes with d.
Cochain g_act(uint32_t sigma, const Cochain& f);
CohClass g_act(uint32_t sigma, const CohClass& c);
// The translation formula (s f)(t_1, ..., t_r) = s f(s^-1 t_1, ..., s^-1 t_r).
// It does not commute with d in general; kept for the regression test.
Cochain g_act_translation(uint32_t sigma, const Cochain& f);

// Pointwise section of the sequence: j_* lift(f'') = f''.
Cochain lift(const Cochain& f_pp, const ShortExactSeq& seq);
// lift(f'') + i_*(random A'-valued cochain).
Cochain lift_random(const Cochain& f_pp, const ShortExactSeq& seq, std::mt19937_64& rng);
// The A'-valued cochain h with i_* h = f; throws CheckFailure if f leaves i(A').
Cochain to_sub(const Cochain& f, const ShortExactSeq& seq);

struct Peeled {
    std::optional<Cochain> f_tilde;  // absent in degree 0
    Cochain residue;                 // A'-valued
};
// f - d f_tilde = i_* residue. Requires j_* f to be a coboundary.
Peeled peel_to_subcochain(const Cochain& f, const ShortExactSeq& seq);

}  // namespace tatecup

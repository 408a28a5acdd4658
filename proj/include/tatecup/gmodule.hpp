#pragma once

// G-modules over finite groups, equivariant maps and pairings, short exact
// sequences, Tate products, and induced modules.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatecup/abgroup.hpp"
#include "tatecup/finite_group.hpp"
#include "tatecup/kernels.hpp"

namespace tatecup {

class GModule;
using ModulePtr = std::shared_ptr<const GModule>;

// A finitely generated abelian group with an action of a finite group. The
// action is stored as one matrix per group element on canonical coordinates.
class GModule {
public:
    // Checks that every action matrix is well defined, that the identity acts
    // trivially and that act(st) = act(s) act(t), naming the first bad pair.
    GModule(GroupPtr group, AbGroupPtr carrier, std::vector<IntMatrix> action, std::string name = "");

    const GroupPtr& group() const noexcept { return group_; }
    const AbGroupPtr& carrier() const noexcept { return carrier_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t gens() const noexcept { return carrier_->gens(); }
    const std::vector<Int>& moduli() const noexcept { return carrier_->moduli(); }
    const IntMatrix& action(uint32_t g) const { return action_[g]; }
    const std::vector<IntMatrix>& actions() const noexcept { return action_; }
    IntVector act(uint32_t g, std::span<const Int> coords) const;
    bool has_trivial_action() const;

    kernels::ModuleView view() const;

private:
    GroupPtr group_;
    AbGroupPtr carrier_;
    std::vector<IntMatrix> action_;
    std::string name_;
};

ModulePtr make_module(GroupPtr group, AbGroupPtr carrier, std::vector<IntMatrix> action, std::string name = "");
ModulePtr trivial_module(GroupPtr group, AbGroupPtr carrier, std::string name = "");
// `action` acts on presentation coordinates of `carrier`; it is converted to
// canonical coordinates.
ModulePtr module_from_presentation(GroupPtr group, const FgAbGroup& carrier, const std::vector<IntMatrix>& action,
                                   std::string name = "");
// The G2-module with g acting as phi(g) does on M.
ModulePtr pullback(const ModulePtr& m, const GroupHom& phi, std::string name = "");
ModulePtr restrict_module(const ModulePtr& m, const Subgroup& h, std::string name = "");

// (phi, psi) with phi: G2 -> G1 and psi: A1 -> A2 satisfying
// psi(phi(g) a) = g psi(a).
class GModuleMorphism {
public:
    GModuleMorphism() = default;
    GModuleMorphism(GroupHom phi, ModulePtr source, ModulePtr target, IntMatrix psi);
    // Same group on both sides, phi the identity.
    GModuleMorphism(ModulePtr source, ModulePtr target, IntMatrix psi);
    static GModuleMorphism identity(const ModulePtr& m);

    const GroupHom& phi() const noexcept { return phi_; }
    const ModulePtr& source() const noexcept { return source_; }
    const ModulePtr& target() const noexcept { return target_; }
    const AbHom& psi() const noexcept { return psi_; }
    const IntMatrix& matrix() const noexcept { return psi_.matrix(); }
    IntVector apply(std::span<const Int> coords) const { return psi_.apply(coords); }
    GModuleMorphism compose(const GModuleMorphism& inner) const;  // this o inner

private:
    GroupHom phi_;
    ModulePtr source_;
    ModulePtr target_;
    AbHom psi_;
};

// G-bilinear map left x right -> out, stored on pairs of canonical generators.
class GPairing {
public:
    using Tensor = std::vector<IntVector>;  // index a * right.gens() + b

    GPairing() = default;
    // Checks torsion annihilation and equivariance, naming (g, a, b).
    GPairing(ModulePtr left, ModulePtr right, ModulePtr out, Tensor tensor, std::string name = "");
    static GPairing from_function(ModulePtr left, ModulePtr right, ModulePtr out,
                                  const std::function<IntVector(std::size_t, std::size_t)>& on_gens,
                                  std::string name = "");

    const ModulePtr& left() const noexcept { return left_; }
    const ModulePtr& right() const noexcept { return right_; }
    const ModulePtr& out() const noexcept { return out_; }
    const Tensor& tensor() const noexcept { return tensor_; }
    const std::string& name() const noexcept { return name_; }
    const IntVector& on_gens(std::size_t a, std::size_t b) const { return tensor_[a * right_->gens() + b]; }

    IntVector apply(std::span<const Int> a, std::span<const Int> b) const;
    // (b, a) -> a x b.
    GPairing transposed(std::string name = "") const;
    kernels::PairingView view() const;

private:
    ModulePtr left_;
    ModulePtr right_;
    ModulePtr out_;
    Tensor tensor_;
    std::string name_;
};

// 0 -> A' -i-> A -j-> A'' -> 0 over one group.
class ShortExactSeq {
public:
    ShortExactSeq() = default;
    ShortExactSeq(GModuleMorphism i, GModuleMorphism j, std::string name = "");

    const GModuleMorphism& i() const noexcept { return i_; }
    const GModuleMorphism& j() const noexcept { return j_; }
    const ModulePtr& sub() const noexcept { return i_.source(); }
    const ModulePtr& middle() const noexcept { return i_.target(); }
    const ModulePtr& quotient() const noexcept { return j_.target(); }
    const GroupPtr& group() const noexcept { return i_.target()->group(); }
    const std::string& name() const noexcept { return name_; }

    // The least preimage of y under j (least in the Hermite order of the
    // image of i).
    IntVector section(std::span<const Int> y) const;
    // The unique a' with i(a') = x, or nullopt if x is not in the image of i.
    std::optional<IntVector> sub_preimage(std::span<const Int> x) const;

private:
    GModuleMorphism i_;
    GModuleMorphism j_;
    std::string name_;
    std::shared_ptr<const LatticeBasis> image_i_;
    std::shared_ptr<const LatticeSolver> solve_i_;
    std::vector<IntVector> lifts_;  // one preimage per canonical generator of A''
};

// A / (submodule generated by `sub`) and the projection. The generators must
// span a G-stable subgroup.
std::pair<ModulePtr, GModuleMorphism> quotient_module(const ModulePtr& m, const std::vector<IntVector>& sub,
                                                      std::string name = "");

// Two short exact sequences with pairings p1: A' x B -> C and p2: A x B' -> C
// agreeing on A' x B'.
class TateProduct {
public:
    TateProduct() = default;
    TateProduct(ShortExactSeq a, ShortExactSeq b, GPairing p1, GPairing p2, std::string name = "");

    const ShortExactSeq& seq_a() const noexcept { return a_; }
    const ShortExactSeq& seq_b() const noexcept { return b_; }
    const GPairing& p1() const noexcept { return p1_; }
    const GPairing& p2() const noexcept { return p2_; }
    const ModulePtr& c() const noexcept { return p1_.out(); }
    const GroupPtr& group() const noexcept { return a_.group(); }
    const std::string& name() const noexcept { return name_; }

private:
    ShortExactSeq a_;
    ShortExactSeq b_;
    GPairing p1_;
    GPairing p2_;
    std::string name_;
};

// A' embedded in A with a pairing A' x A -> C that is symmetric on A' x A'.
TateProduct tate_from_reciprocity(const GModuleMorphism& embed, const GPairing& pairing, std::string name = "");

// Morphism of Tate products over phi: G2 -> G1. Validated: both ladders
// commute, all maps share phi, and both pairings are preserved.
struct TateMorphism {
    GroupHom phi;
    GModuleMorphism a_sub, a, a_quot;
    GModuleMorphism b_sub, b, b_quot;
    GModuleMorphism c;
    void validate(const TateProduct& source, const TateProduct& target) const;
};

// Same group; the A maps go from the first product to the second and the B
// maps go back. Validated against the twisted squares.
struct TwistedTateMorphism {
    GModuleMorphism a_sub, a, a_quot;  // A_1 -> A_2
    GModuleMorphism b_sub, b, b_quot;  // B_2 -> B_1
    GModuleMorphism c;                 // C_1 -> C_2
    void validate(const TateProduct& first, const TateProduct& second) const;
};

// Ind_H^G(C) stored as the values of c* on the right coset representatives
// x_0 = 1, x_1, ... of H\G.
struct InducedData {
    std::shared_ptr<const Subgroup> subgroup;
    ModulePtr source;              // C over H
    ModulePtr induced;             // Ind(C) over G
    GModuleMorphism e;             // (incl, c* -> c*(1)): Ind(C) over G -> C over H
    std::optional<ModulePtr> source_g;  // C with its G-structure, if supplied
    std::optional<GModuleMorphism> i;   // C over G -> Ind(C)
    std::optional<GModuleMorphism> pi;  // Ind(C) -> C over G
};

// `c` must be a module over subgroup->as_group(). If `c_over_g` is given it
// must restrict to `c`; then i and pi are built as well.
InducedData induce(const std::shared_ptr<const Subgroup>& subgroup, const ModulePtr& c,
                   const std::optional<ModulePtr>& c_over_g = std::nullopt, std::string name = "");
// Ind(psi), applied coset-wise.
GModuleMorphism induce_morphism(const InducedData& source, const InducedData& target, const GModuleMorphism& psi);
// (c1* x c2*)(x) = c1*(x) x c2*(x).
GPairing induce_pairing(const InducedData& d1, const InducedData& d2, const InducedData& d3, const GPairing& p);

struct InducedTate {
    TateProduct tate;
    InducedData a_sub, a, a_quot, b_sub, b, b_quot, c;
};
// Ind applied to every piece of a Tate product over H. If `over_g` is given
// (a Tate product over G restricting to t), the i and pi maps are built too.
InducedTate tate_induce(const std::shared_ptr<const Subgroup>& subgroup, const TateProduct& t,
                        const std::optional<TateProduct>& over_g = std::nullopt);
// Restriction of a Tate product over G to a subgroup.
TateProduct restrict_tate(const TateProduct& t, const Subgroup& h);

// The extension of B' -> B -> B'' by E used for induced pairings:
//   0 -> B -> D -> E -> 0,  0 -> B'' -phi-> D'' -psi-> E -> 0,
// with D -> D'' surjective with kernel B' and every square commuting.
struct ExtensionData {
    ShortExactSeq seq_b;
    ShortExactSeq row_d;       // B -> D -> E
    ShortExactSeq row_dpp;     // B'' -> D'' -> E
    GModuleMorphism d_to_dpp;  // D -> D''
    std::string name;
    void validate() const;
};

// D = B + Z and D'' = B'' + Z with s(b, n) = (s b + n c(s), n) and
// s(b'', n) = (s b'' + n j c(s), n) for a 1-cocycle c of G in B. E = Z.
ExtensionData twisted_extension(const ShortExactSeq& seq_b, const std::vector<IntVector>& cocycle, std::string name = "");

}  // namespace tatecup

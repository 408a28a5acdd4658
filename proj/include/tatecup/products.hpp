#pragma once

// Cup products, the augmented cup product of a Tate product, connecting
// homomorphisms, restriction/corestriction and induced pairings.

#include <random>
#include <vector>

#include "tatecup/cochain.hpp"
#include "tatecup/gmodule.hpp"

namespace tatecup {

// (f u g)(x_1..x_{r+s}) = f(x_1..x_r) x (x_1...x_r) g(x_{r+1}..x_{r+s}).
Cochain cup_cochains(const Cochain& f, const Cochain& g, const GPairing& p);
CohClass cup_classes(const CohClass& a, const CohClass& b, const GPairing& p);

// d f u g + (-1)^r f u d g with d f read in A' (paired by p1) and d g read in
// B' (paired by p2). f and g are A- and B-valued lifts of cocycles of A'' and
// B''.
Cochain acup_cochain(const Cochain& f, const Cochain& g, const TateProduct& t);
// Uses the stored sections as lifts.
CohClass acup(const CohClass& a, const CohClass& b, const TateProduct& t);
// Same, with lifts perturbed by random A'- and B'-valued cochains.
CohClass acup_random(const CohClass& a, const CohClass& b, const TateProduct& t, std::mt19937_64& rng);

// h(s) = (s a - a) x s b + a x (s b - b) for a in A, b in B with j(a), j(b)
// fixed by G.
Cochain acup_degree00(std::span<const Int> a, std::span<const Int> b, const TateProduct& t);

// [d f] in H^{r+1}(A') for a lift f of a representative of the class.
CohClass connecting(const ShortExactSeq& seq, const CohClass& a);
CohClass connecting_with_lift(const ShortExactSeq& seq, const Cochain& lift);

// Restriction along d.e (inclusion, identity): the class must live over
// *d.source_g and the result over d.source. Also computes e^* i_* and throws
// InternalError if the two disagree.
CohClass restriction(const InducedData& d, const CohClass& a);
// Matrix of e^*: H^r(G, Ind C) -> H^r(H, C) on canonical coordinates.
IntMatrix shapiro_matrix(const InducedData& d, int degree);
bool shapiro_bijective(const InducedData& d, int degree);
// pi_* (e^*)^{-1}; the class lives over d.source.
CohClass corestriction(const InducedData& d, const CohClass& a);

// Pairing of Img(H^r(A) -> H^r(A'')) with Img(H^s(B'') -> H^s(D'')) into
// H^{r+s+1}(C) induced by acup.
struct InducedPairingResult {
    int r = 0, s = 0;
    std::vector<CohClass> left;   // generators of Img j_* inside H^r(A'')
    std::vector<CohClass> right;  // generators of Img phi_* inside H^s(D'')
    std::vector<CohClass> kernel; // generators of Ker phi_* inside H^s(B'')
    std::vector<std::vector<CohClass>> table;  // table[i][j] = left[i] . right[j]
    bool right_surjective = false;             // phi_*: H^s(B'') -> H^s(D'') onto
};

// Verifies that acup vanishes on Img j_* x Ker phi_* and that the value on
// each table entry does not depend on the chosen preimage; throws
// CheckFailure naming the classes otherwise.
InducedPairingResult induced_pairing(const TateProduct& t, const ExtensionData& ext, int r, int s);

}  // namespace tatecup

#pragma once

// Checks of the main path against the enumeration oracle. Main-path classes
// are only used to name a coset; every cochain the oracle evaluates is drawn
// at random from that coset and lifted by its own preimage search.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "tatecup/products.hpp"
#include "tatecup/workspace.hpp"

namespace oracle {

std::optional<Module> from_module(const tatecup::GModule& m);
Map from_morphism(const tatecup::GModuleMorphism& m);
Pairing from_pairing(const tatecup::GPairing& p);
Values from_cochain(const tatecup::Cochain& f);

// Empty witness on agreement; nullopt when the oracle cannot enumerate.
using Outcome = std::optional<std::string>;

// Same invariant factors, and the representatives of the main classes form a
// transversal of Z/B on which addition agrees.
Outcome compare_cohomology(const tatecup::ModulePtr& m, int r);
Outcome compare_cup(const tatecup::GPairing& p, int r, int s, std::mt19937_64& rng);
Outcome compare_acup(const tatecup::TateProduct& t, int r, int s, std::mt19937_64& rng);

struct SweepReport {
    int compared = 0;
    int skipped = 0;
    std::vector<std::string> failures;
};

// Every finite module in degrees <= 3, every pairing with r + s <= 2 and
// every Tate product with r + s + 1 <= 3, wherever the oracle can enumerate.
SweepReport sweep(const tatecup::Workspace& ws, uint64_t seed);

}  // namespace oracle

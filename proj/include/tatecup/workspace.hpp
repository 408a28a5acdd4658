#pragma once

// Name-keyed registry of the objects declared in a spec file, and the parser
// for that format (grammar in docs/spec-format.md).

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tatecup/cochain.hpp"
#include "tatecup/gmodule.hpp"

namespace tatecup {

struct TateEntry {
    TateProduct tate;
    bool reciprocity = false;             // built from A' -> A and a pairing A' x A -> C
    std::optional<GPairing> full;         // A x B -> C restricting to p1 and p2
};

struct TateMorphismEntry {
    std::string source, target;
    TateMorphism morphism;
};

struct TwistedEntry {
    std::string first, second;
    TwistedTateMorphism morphism;
};

struct ExtensionEntry {
    std::string tate;
    ExtensionData data;
};

struct InducedEntry {
    std::string subgroup;
    InducedData data;
};

// std::map keeps iteration (and so every report) in name order.
struct Workspace {
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, std::shared_ptr<const Subgroup>> subgroups;
    std::map<std::string, GroupHom> homs;
    std::map<std::string, ModulePtr> modules;
    std::map<std::string, GModuleMorphism> morphisms;
    std::map<std::string, GPairing> pairings;
    std::map<std::string, ShortExactSeq> sequences;
    std::map<std::string, TateEntry> tates;
    std::map<std::string, TateMorphismEntry> tate_morphisms;
    std::map<std::string, TwistedEntry> twisted;
    std::map<std::string, ExtensionEntry> extensions;
    std::map<std::string, InducedEntry> induced;
    // module name -> (G-module, subgroup) for modules declared by `restrict`
    std::map<std::string, std::pair<std::string, std::string>> restricted_from;

    GroupPtr group(const std::string& name) const;
    const std::shared_ptr<const Subgroup>& subgroup(const std::string& name) const;
    const ModulePtr& module(const std::string& name) const;
    const GModuleMorphism& morphism(const std::string& name) const;
    const GPairing& pairing(const std::string& name) const;
    const ShortExactSeq& sequence(const std::string& name) const;
    const TateEntry& tate(const std::string& name) const;
    const ExtensionEntry& extension(const std::string& name) const;
    // Name of a registered module, or its own name if unregistered.
    std::string module_name(const GModule* m) const;
};

// Throws InputError with a line number on syntax errors and dangling names;
// construction-time CheckFailures are rethrown naming the object.
Workspace parse_spec(std::istream& in);
Workspace parse_spec_file(const std::string& path);

// "[MODULE@]DEG:c1,c2". `default_module` is used when no module is named.
struct ClassToken {
    std::string module;
    int degree = 0;
    IntVector coords;
};
ClassToken parse_class_token(const std::string& token);
CohClass resolve_class(const Workspace& ws, const ClassToken& t, const ModulePtr& default_module);

}  // namespace tatecup

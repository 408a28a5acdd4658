#include "tatecup/workspace.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "tatecup/error.hpp"

namespace tatecup {

namespace {

struct Entry {
    std::string key;
    std::vector<std::string> params;  // words between the key and '='
    std::string value;
    int line = 0;
};

struct Section {
    std::string kind, name;
    int line = 0;
    std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Section> split_sections(std::istream& in) {
    std::vector<Section> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
            auto w = words(s.substr(1, s.size() - 2));
            if (w.size() != 2) fail(line, "section header must be [kind name]");
            out.push_back({w[0], w[1], line, {}});
            continue;
        }
        if (out.empty()) fail(line, "entry outside of any section");
        auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        auto lhs = words(s.substr(0, eq));
        if (lhs.empty()) fail(line, "missing key");
        Entry e{lhs[0], std::vector<std::string>(lhs.begin() + 1, lhs.end()), trim(s.substr(eq + 1)), line};
        out.back().entries.push_back(std::move(e));
    }
    return out;
}

long long parse_ll(const std::string& w, int line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(w, &pos);
        if (pos != w.size()) throw std::invalid_argument(w);
        return v;
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + w + "'");
    }
}

Int parse_int(const std::string& w, int line) {
    try {
        return Int::from_string(w);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + w + "'");
    }
}

// Integers separated by commas, spaces or brackets.
std::vector<std::string> flat_tokens(const std::string& s) {
    std::string t = s;
    for (char& c : t)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    return words(t);
}

IntVector parse_vector(const std::string& s, int line) {
    IntVector v;
    for (const auto& w : flat_tokens(s)) v.push_back(parse_int(w, line));
    return v;
}

std::vector<uint32_t> parse_indices(const std::string& s, int line) {
    std::vector<uint32_t> v;
    for (const auto& w : flat_tokens(s)) {
        long long x = parse_ll(w, line);
        if (x < 0) fail(line, "negative group element");
        v.push_back(static_cast<uint32_t>(x));
    }
    return v;
}

// [[a,b],[c,d]]; rows may also be separated by ';'.
std::vector<IntVector> parse_rows(const std::string& s, int line) {
    std::string t = trim(s);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') fail(line, "matrix must be written [[...],...]");
    t = trim(t.substr(1, t.size() - 2));
    std::vector<IntVector> rows;
    std::size_t pos = 0;
    while (pos < t.size()) {
        auto open = t.find('[', pos);
        if (open == std::string::npos) break;
        auto close = t.find(']', open);
        if (close == std::string::npos) fail(line, "unbalanced brackets");
        rows.push_back(parse_vector(t.substr(open + 1, close - open - 1), line));
        pos = close + 1;
    }
    return rows;
}

IntMatrix parse_matrix(const std::string& s, std::size_t rows, std::size_t cols, int line) {
    auto r = parse_rows(s, line);
    if (rows == 0 || cols == 0) {
        if (!r.empty() && !(r.size() == 1 && r[0].empty())) fail(line, "expected an empty matrix []");
        return IntMatrix(rows, cols);
    }
    if (r.size() != rows) fail(line, "matrix needs " + std::to_string(rows) + " rows, got " + std::to_string(r.size()));
    for (const auto& row : r)
        if (row.size() != cols) fail(line, "matrix rows need " + std::to_string(cols) + " entries");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = r[i][j];
    return m;
}

class Builder {
public:
    explicit Builder(Workspace& ws) : ws_(ws) {}

    void build(const Section& s) {
        section_ = &s;
        try {
            if (s.kind == "group") group(s);
            else if (s.kind == "subgroup") subgroup(s);
            else if (s.kind == "hom") hom(s);
            else if (s.kind == "module") module(s);
            else if (s.kind == "morphism") morphism(s);
            else if (s.kind == "pairing") pairing(s);
            else if (s.kind == "sequence") sequence(s);
            else if (s.kind == "tate") tate(s);
            else if (s.kind == "tatemorphism") tate_morphism(s);
            else if (s.kind == "twisted") twisted(s);
            else if (s.kind == "extension") extension(s);
            else if (s.kind == "induced") induced(s);
            else fail(s.line, "unknown section kind '" + s.kind + "'");
            check_unused(s);
        } catch (const CheckFailure& e) {
            throw CheckFailure(s.kind + " " + s.name + " (line " + std::to_string(s.line) + "): " + e.message(), e.witness());
        } catch (const InputError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            fail(s.line, s.kind + " " + s.name + ": " + msg);
        }
    }

private:
    Workspace& ws_;
    const Section* section_ = nullptr;
    std::set<const Entry*> used_;

    const Entry* find(const std::string& key) {
        const Entry* hit = nullptr;
        for (const auto& e : section_->entries)
            if (e.key == key && e.params.empty()) {
                if (hit) fail(e.line, "duplicate key '" + key + "'");
                hit = &e;
            }
        if (hit) used_.insert(hit);
        return hit;
    }

    const Entry& need(const std::string& key) {
        const Entry* e = find(key);
        if (!e) fail(section_->line, section_->kind + " " + section_->name + " needs '" + key + "'");
        return *e;
    }

    std::vector<const Entry*> all(const std::string& key) {
        std::vector<const Entry*> out;
        for (const auto& e : section_->entries)
            if (e.key == key) {
                out.push_back(&e);
                used_.insert(&e);
            }
        return out;
    }

    void check_unused(const Section& s) {
        for (const auto& e : s.entries)
            if (!used_.count(&e)) fail(e.line, "unexpected key '" + e.key + "' in " + s.kind + " " + s.name);
    }

    template <typename Map>
    void fresh(const Map& m, const std::string& name, const std::string& what) {
        if (m.count(name)) fail(section_->line, "duplicate " + what + " '" + name + "'");
    }

    template <typename T>
    const T& lookup(const std::map<std::string, T>& m, const Entry& e, const std::string& what) {
        auto it = m.find(e.value);
        if (it == m.end()) fail(e.line, "unknown " + what + " '" + e.value + "'");
        return it->second;
    }

    GroupPtr group_ref(const Entry& e) {
        if (auto it = ws_.groups.find(e.value); it != ws_.groups.end()) return it->second;
        if (auto it = ws_.subgroups.find(e.value); it != ws_.subgroups.end()) return it->second->as_group();
        fail(e.line, "unknown group '" + e.value + "'");
    }

    void add_module(const std::string& name, ModulePtr m, int line) {
        if (ws_.modules.count(name)) fail(line, "duplicate module '" + name + "'");
        ws_.modules.emplace(name, std::move(m));
    }

    void add_morphism(const std::string& name, GModuleMorphism m, int line) {
        if (ws_.morphisms.count(name)) fail(line, "duplicate morphism '" + name + "'");
        ws_.morphisms.emplace(name, std::move(m));
    }

    void group(const Section& s) {
        fresh(ws_.groups, s.name, "group");
        if (ws_.subgroups.count(s.name)) fail(s.line, "name '" + s.name + "' is already a subgroup");
        const Entry* def = find("define");
        const Entry* table = find("table");
        if (!!def == !!table) fail(s.line, "group needs exactly one of 'define' or 'table'");
        FiniteGroup g;
        if (table) {
            std::vector<std::vector<uint32_t>> rows;
            for (const auto& r : parse_rows(table->value, table->line)) {
                std::vector<uint32_t> row;
                for (const auto& x : r) {
                    long long v = x.to_int64();
                    if (v < 0) fail(table->line, "negative group element");
                    row.push_back(static_cast<uint32_t>(v));
                }
                rows.push_back(std::move(row));
            }
            g = FiniteGroup::from_table(rows, s.name);
        } else {
            auto w = words(def->value);
            if (w.size() == 2 && w[0] == "cyclic") {
                long long n = parse_ll(w[1], def->line);
                if (n < 1) fail(def->line, "cyclic group order must be at least 1");
                g = FiniteGroup::cyclic(static_cast<std::size_t>(n));
            } else if (w.size() == 1 && w[0] == "S3") {
                g = FiniteGroup::symmetric3();
            } else if (w.size() == 3 && w[0] == "product") {
                Entry a{*def}, b{*def};
                a.value = w[1];
                b.value = w[2];
                g = FiniteGroup::direct_product(*lookup(ws_.groups, a, "group"), *lookup(ws_.groups, b, "group"));
            } else {
                fail(def->line, "define must be 'cyclic n', 'S3' or 'product G1 G2'");
            }
        }
        ws_.groups.emplace(s.name, make_group(std::move(g)));
    }

    void subgroup(const Section& s) {
        fresh(ws_.subgroups, s.name, "subgroup");
        if (ws_.groups.count(s.name)) fail(s.line, "name '" + s.name + "' is already a group");
        const Entry& g = need("group");
        GroupPtr parent = lookup(ws_.groups, g, "group");
        const Entry& gens = need("generators");
        auto seed = parse_indices(gens.value, gens.line);
        for (auto x : seed)
            if (x >= parent->order()) fail(gens.line, "element " + std::to_string(x) + " is not in " + g.value);
        ws_.subgroups.emplace(s.name, std::make_shared<const Subgroup>(subgroup_closure(parent, seed)));
    }

    void hom(const Section& s) {
        fresh(ws_.homs, s.name, "hom");
        GroupPtr src = group_ref(need("source"));
        GroupPtr dst = group_ref(need("target"));
        const Entry& im = need("images");
        ws_.homs.emplace(s.name, GroupHom(src, dst, parse_indices(im.value, im.line)));
    }

    void module(const Section& s) {
        if (ws_.modules.count(s.name)) fail(s.line, "duplicate module '" + s.name + "'");
        if (const Entry* r = find("restrict")) {
            const ModulePtr& m = lookup(ws_.modules, *r, "module");
            const Entry& h = need("subgroup");
            const auto& sub = lookup(ws_.subgroups, h, "subgroup");
            if (sub->parent().get() != m->group().get()) fail(h.line, "subgroup " + h.value + " is not in the group of " + r->value);
            add_module(s.name, restrict_module(m, *sub, s.name), s.line);
            ws_.restricted_from.emplace(s.name, std::make_pair(r->value, h.value));
            return;
        }
        if (const Entry* p = find("pullback")) {
            const ModulePtr& m = lookup(ws_.modules, *p, "module");
            const GroupHom& phi = lookup(ws_.homs, need("hom"), "hom");
            add_module(s.name, pullback(m, phi, s.name), s.line);
            return;
        }
        GroupPtr g = group_ref(need("group"));
        const Entry& c = need("carrier");
        std::vector<Int> moduli;
        if (c.value != "0") {
            for (const auto& w : flat_tokens(c.value)) {
                if (w == "Z") {
                    moduli.emplace_back(0);
                } else {
                    Int m = parse_int(w, c.line);
                    if (m.sign() <= 0) fail(c.line, "carrier moduli must be positive or Z");
                    moduli.push_back(m);
                }
            }
        }
        FgAbGroup carrier = FgAbGroup::from_diagonal(moduli);
        const std::size_t k = moduli.size();
        const std::size_t n = g->order();
        std::vector<std::optional<IntMatrix>> act(n);
        act[0] = IntMatrix::identity(k);
        std::vector<uint32_t> given;
        for (const Entry* e : all("act")) {
            if (e->params.size() != 1) fail(e->line, "use 'act <element> = [[...]]'");
            long long x = parse_ll(e->params[0], e->line);
            if (x < 0 || static_cast<std::size_t>(x) >= n) fail(e->line, "no element " + e->params[0]);
            if (std::find(given.begin(), given.end(), x) != given.end()) fail(e->line, "action of " + e->params[0] + " given twice");
            IntMatrix m = parse_matrix(e->value, k, k, e->line);
            if (x == 0 && !(m == IntMatrix::identity(k))) fail(e->line, "the identity must act trivially");
            act[x] = std::move(m);
            given.push_back(static_cast<uint32_t>(x));
        }
        // Generate the remaining matrices from the given ones; the module
        // constructor then checks the action law on every pair.
        if (given.empty()) {
            for (auto& a : act) a = IntMatrix::identity(k);
        } else {
            std::deque<uint32_t> queue{0};
            std::vector<bool> seen(n, false);
            seen[0] = true;
            while (!queue.empty()) {
                uint32_t h = queue.front();
                queue.pop_front();
                for (uint32_t s2 : given) {
                    uint32_t hs = g->mul(h, s2);
                    if (seen[hs]) continue;
                    seen[hs] = true;
                    if (!act[hs]) act[hs] = *act[h] * *act[s2];
                    queue.push_back(hs);
                }
            }
            for (std::size_t x = 0; x < n; ++x)
                if (!seen[x]) fail(s.line, "the acting elements do not generate the group (element " + std::to_string(x) + ")");
        }
        std::vector<IntMatrix> pres;
        for (auto& a : act) pres.push_back(std::move(*a));
        add_module(s.name, module_from_presentation(g, carrier, pres, s.name), s.line);
    }

    // User coordinates are presentation coordinates of the declared carrier.
    static IntVector to_canon(const ModulePtr& m, const IntVector& v, int line) {
        if (v.size() != m->carrier()->presentation_gens()) {
            fail(line, "vector needs " + std::to_string(m->carrier()->presentation_gens()) + " entries for " + m->name());
        }
        return m->carrier()->from_presentation(v);
    }

    void morphism(const Section& s) {
        if (ws_.morphisms.count(s.name)) fail(s.line, "duplicate morphism '" + s.name + "'");
        const ModulePtr& src = lookup(ws_.modules, need("source"), "module");
        const ModulePtr& dst = lookup(ws_.modules, need("target"), "module");
        const Entry& me = need("matrix");
        const std::size_t rows = dst->carrier()->presentation_gens();
        const std::size_t cols = src->carrier()->presentation_gens();
        IntMatrix pres = parse_matrix(me.value, rows, cols, me.line);
        IntMatrix canon = dst->carrier()->to_canonical() * pres * src->carrier()->from_canonical();
        if (const Entry* h = find("hom")) {
            add_morphism(s.name, GModuleMorphism(lookup(ws_.homs, *h, "hom"), src, dst, canon), s.line);
        } else {
            if (src->group().get() != dst->group().get()) fail(s.line, "modules over different groups need a 'hom'");
            add_morphism(s.name, GModuleMorphism(src, dst, canon), s.line);
        }
    }

    void pairing(const Section& s) {
        fresh(ws_.pairings, s.name, "pairing");
        const ModulePtr& l = lookup(ws_.modules, need("left"), "module");
        const ModulePtr& r = lookup(ws_.modules, need("right"), "module");
        const ModulePtr& o = lookup(ws_.modules, need("out"), "module");
        const std::size_t pl = l->carrier()->presentation_gens();
        const std::size_t pr = r->carrier()->presentation_gens();
        std::vector<IntVector> pres(pl * pr, IntVector(o->carrier()->presentation_gens()));
        if (const Entry* c = find("constant")) {
            IntVector v = parse_vector(c->value, c->line);
            to_canon(o, v, c->line);
            std::fill(pres.begin(), pres.end(), v);
        }
        for (const Entry* e : all("value")) {
            if (e->params.size() != 2) fail(e->line, "use 'value <a> <b> = ...'");
            long long a = parse_ll(e->params[0], e->line), b = parse_ll(e->params[1], e->line);
            if (a < 0 || b < 0 || std::size_t(a) >= pl || std::size_t(b) >= pr) fail(e->line, "generator index out of range");
            IntVector v = parse_vector(e->value, e->line);
            to_canon(o, v, e->line);
            pres[a * pr + b] = v;
        }
        const IntMatrix& fl = l->carrier()->from_canonical();
        const IntMatrix& fr = r->carrier()->from_canonical();
        auto on_gens = [&](std::size_t i, std::size_t j) {
            IntVector acc(o->carrier()->presentation_gens());
            for (std::size_t a = 0; a < pl; ++a)
                for (std::size_t b = 0; b < pr; ++b) {
                    Int coef = fl(a, i) * fr(b, j);
                    if (coef.is_zero()) continue;
                    for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += coef * pres[a * pr + b][t];
                }
            return o->carrier()->from_presentation(acc);
        };
        ws_.pairings.emplace(s.name, GPairing::from_function(l, r, o, on_gens, s.name));
    }

    std::vector<IntVector> image_columns(const GModuleMorphism& m) {
        std::vector<IntVector> cols;
        for (std::size_t c = 0; c < m.matrix().cols(); ++c) cols.push_back(m.matrix().column(c));
        return cols;
    }

    void sequence(const Section& s) {
        fresh(ws_.sequences, s.name, "sequence");
        if (const Entry* e = find("embed")) {
            const GModuleMorphism& i = lookup(ws_.morphisms, *e, "morphism");
            const Entry& q = need("quotient");
            auto [quot, j] = quotient_module(i.target(), image_columns(i), q.value);
            add_module(q.value, quot, q.line);
            add_morphism(s.name + ".j", j, s.line);
            ws_.sequences.emplace(s.name, ShortExactSeq(i, j, s.name));
            return;
        }
        const GModuleMorphism& i = lookup(ws_.morphisms, need("i"), "morphism");
        const GModuleMorphism& j = lookup(ws_.morphisms, need("j"), "morphism");
        ws_.sequences.emplace(s.name, ShortExactSeq(i, j, s.name));
    }

    void tate(const Section& s) {
        fresh(ws_.tates, s.name, "tate product");
        TateEntry entry;
        if (const Entry* e = find("reciprocity")) {
            const GModuleMorphism& embed = lookup(ws_.morphisms, *e, "morphism");
            const GPairing& p = lookup(ws_.pairings, need("pairing"), "pairing");
            const Entry& q = need("quotient");
            entry.tate = tate_from_reciprocity(embed, p, s.name);
            entry.reciprocity = true;
            add_module(q.value, entry.tate.seq_a().quotient(), q.line);
            add_morphism(s.name + ".j", entry.tate.seq_a().j(), s.line);
            ws_.sequences.emplace(s.name + ".seq", entry.tate.seq_a());
        } else {
            const ShortExactSeq& a = lookup(ws_.sequences, need("seq_a"), "sequence");
            const ShortExactSeq& b = lookup(ws_.sequences, need("seq_b"), "sequence");
            const GPairing& p1 = lookup(ws_.pairings, need("p1"), "pairing");
            const GPairing& p2 = lookup(ws_.pairings, need("p2"), "pairing");
            entry.tate = TateProduct(a, b, p1, p2, s.name);
        }
        if (const Entry* f = find("extends")) {
            const GPairing& full = lookup(ws_.pairings, *f, "pairing");
            check_extends(entry.tate, full);
            entry.full = full;
        }
        ws_.tates.emplace(s.name, std::move(entry));
    }

    static void check_extends(const TateProduct& t, const GPairing& full) {
        if (full.left().get() != t.seq_a().middle().get() || full.right().get() != t.seq_b().middle().get() ||
            full.out().get() != t.c().get()) {
            throw InputError("extending pairing " + full.name() + " must map A x B -> C");
        }
        const auto& ia = t.seq_a().i();
        const auto& ib = t.seq_b().i();
        auto unit = [](std::size_t n, std::size_t i) {
            IntVector v(n);
            v[i] = 1;
            return v;
        };
        for (std::size_t a = 0; a < ia.source()->gens(); ++a)
            for (std::size_t b = 0; b < t.seq_b().middle()->gens(); ++b) {
                IntVector ua = unit(ia.source()->gens(), a), ub = unit(t.seq_b().middle()->gens(), b);
                if (full.apply(ia.apply(ua), ub) != t.p1().apply(ua, ub))
                    throw CheckFailure("extending pairing disagrees with p1", "(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
        for (std::size_t a = 0; a < t.seq_a().middle()->gens(); ++a)
            for (std::size_t b = 0; b < ib.source()->gens(); ++b) {
                IntVector ua = unit(t.seq_a().middle()->gens(), a), ub = unit(ib.source()->gens(), b);
                if (full.apply(ua, ib.apply(ub)) != t.p2().apply(ua, ub))
                    throw CheckFailure("extending pairing disagrees with p2", "(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }

    const GModuleMorphism& m(const std::string& key) { return lookup(ws_.morphisms, need(key), "morphism"); }

    void tate_morphism(const Section& s) {
        fresh(ws_.tate_morphisms, s.name, "tate morphism");
        TateMorphismEntry e;
        e.source = need("source").value;
        e.target = need("target").value;
        const TateProduct& src = lookup(ws_.tates, need("source"), "tate product").tate;
        const TateProduct& dst = lookup(ws_.tates, need("target"), "tate product").tate;
        if (const Entry* h = find("hom")) e.morphism.phi = lookup(ws_.homs, *h, "hom");
        else e.morphism.phi = GroupHom::identity(dst.group());
        e.morphism.a_sub = m("a_sub");
        e.morphism.a = m("a");
        e.morphism.a_quot = m("a_quot");
        e.morphism.b_sub = m("b_sub");
        e.morphism.b = m("b");
        e.morphism.b_quot = m("b_quot");
        e.morphism.c = m("c");
        e.morphism.validate(src, dst);
        ws_.tate_morphisms.emplace(s.name, std::move(e));
    }

    void twisted(const Section& s) {
        fresh(ws_.twisted, s.name, "twisted morphism");
        TwistedEntry e;
        e.first = need("first").value;
        e.second = need("second").value;
        const TateProduct& a = lookup(ws_.tates, need("first"), "tate product").tate;
        const TateProduct& b = lookup(ws_.tates, need("second"), "tate product").tate;
        e.morphism.a_sub = m("a_sub");
        e.morphism.a = m("a");
        e.morphism.a_quot = m("a_quot");
        e.morphism.b_sub = m("b_sub");
        e.morphism.b = m("b");
        e.morphism.b_quot = m("b_quot");
        e.morphism.c = m("c");
        e.morphism.validate(a, b);
        ws_.twisted.emplace(s.name, std::move(e));
    }

    void extension(const Section& s) {
        fresh(ws_.extensions, s.name, "extension");
        const Entry& te = need("tate");
        const TateProduct& t = lookup(ws_.tates, te, "tate product").tate;
        const ModulePtr& b = t.seq_b().middle();
        const std::size_t n = t.group()->order();
        std::vector<IntVector> cocycle(n, IntVector(b->gens()));
        for (const Entry* e : all("cocycle")) {
            if (e->params.size() != 1) fail(e->line, "use 'cocycle <element> = ...'");
            long long x = parse_ll(e->params[0], e->line);
            if (x < 0 || std::size_t(x) >= n) fail(e->line, "no element " + e->params[0]);
            cocycle[x] = to_canon(b, parse_vector(e->value, e->line), e->line);
        }
        ExtensionEntry entry{te.value, twisted_extension(t.seq_b(), cocycle, s.name)};
        add_module(s.name + ".D", entry.data.row_d.middle(), s.line);
        add_module(s.name + ".D''", entry.data.row_dpp.middle(), s.line);
        add_module(s.name + ".E", entry.data.row_d.quotient(), s.line);
        ws_.extensions.emplace(s.name, std::move(entry));
    }

    void induced(const Section& s) {
        fresh(ws_.induced, s.name, "induced module");
        const Entry& he = need("subgroup");
        const auto& h = lookup(ws_.subgroups, he, "subgroup");
        const ModulePtr& c = lookup(ws_.modules, need("module"), "module");
        std::optional<ModulePtr> over;
        if (const Entry* o = find("over")) over = lookup(ws_.modules, *o, "module");
        InducedData d = induce(h, c, over, s.name);
        add_module(s.name, d.induced, s.line);
        ws_.induced.emplace(s.name, InducedEntry{he.value, std::move(d)});
    }
};

template <typename T>
const T& get(const std::map<std::string, T>& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw InputError(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
}

}  // namespace

GroupPtr Workspace::group(const std::string& name) const {
    if (auto it = subgroups.find(name); it != subgroups.end()) return it->second->as_group();
    return get(groups, name, "group");
}
const std::shared_ptr<const Subgroup>& Workspace::subgroup(const std::string& name) const {
    return get(subgroups, name, "subgroup");
}
const ModulePtr& Workspace::module(const std::string& name) const { return get(modules, name, "module"); }
const GModuleMorphism& Workspace::morphism(const std::string& name) const { return get(morphisms, name, "morphism"); }
const GPairing& Workspace::pairing(const std::string& name) const { return get(pairings, name, "pairing"); }
const ShortExactSeq& Workspace::sequence(const std::string& name) const { return get(sequences, name, "sequence"); }
const TateEntry& Workspace::tate(const std::string& name) const { return get(tates, name, "tate product"); }
const ExtensionEntry& Workspace::extension(const std::string& name) const {
    return get(extensions, name, "extension");
}

std::string Workspace::module_name(const GModule* m) const {
    for (const auto& [name, p] : modules)
        if (p.get() == m) return name;
    return m->name();
}

Workspace parse_spec(std::istream& in) {
    Workspace ws;
    Builder b(ws);
    for (const auto& s : split_sections(in)) b.build(s);
    return ws;
}

Workspace parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read spec file " + path);
    return parse_spec(in);
}

ClassToken parse_class_token(const std::string& token) {
    ClassToken t;
    std::string rest = token;
    if (auto at = rest.find('@'); at != std::string::npos) {
        t.module = rest.substr(0, at);
        rest = rest.substr(at + 1);
    }
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("class '" + token + "' must look like [MODULE@]DEG:c1,c2");
    try {
        std::size_t pos = 0;
        t.degree = std::stoi(rest.substr(0, colon), &pos);
        if (pos != colon || t.degree < 0) throw std::invalid_argument(token);
    } catch (const std::exception&) {
        throw InputError("bad degree in class '" + token + "'");
    }
    std::string coords = rest.substr(colon + 1);
    for (char& c : coords)
        if (c == ',') c = ' ';
    for (const auto& w : words(coords)) {
        try {
            t.coords.push_back(Int::from_string(w));
        } catch (const std::exception&) {
            throw InputError("bad coordinate '" + w + "' in class '" + token + "'");
        }
    }
    return t;
}

CohClass resolve_class(const Workspace& ws, const ClassToken& t, const ModulePtr& default_module) {
    ModulePtr m = t.module.empty() ? default_module : ws.module(t.module);
    if (!m) throw InputError("class needs a module: write MODULE@DEG:coords");
    if (default_module && m.get() != default_module.get()) {
        throw InputError("class is over " + t.module + " but this argument needs a class over " +
                         ws.module_name(default_module.get()));
    }
    return cohomology(m, t.degree)->element(t.coords);
}

}  // namespace tatecup

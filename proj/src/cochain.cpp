#include "tatecup/cochain.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"

namespace tatecup {

namespace {

std::vector<uint32_t> decode(std::size_t index, std::size_t n, int r) {
    std::vector<uint32_t> x(r);
    for (int i = r - 1; i >= 0; --i) {
        x[i] = static_cast<uint32_t>(index % n);
        index /= n;
    }
    return x;
}

std::size_t encode(const std::vector<uint32_t>& x, std::size_t n) {
    std::size_t idx = 0;
    for (auto v : x) idx = idx * n + v;
    return idx;
}

std::string tuple_str(const std::vector<uint32_t>& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

std::vector<Int> repeated(const std::vector<Int>& m, std::size_t times) {
    std::vector<Int> out;
    out.reserve(m.size() * times);
    for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), m.begin(), m.end());
    return out;
}

void require_module(const Cochain& f, const ModulePtr& m, const std::string& what) {
    if (f.module().get() != m.get()) throw InputError(what + ": cochain is over " + f.module()->name() + ", expected " + m->name());
}

std::size_t initial_cap() {
    if (const char* env = std::getenv("TATECUP_MAX_COLS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 200000;
}

std::atomic<std::size_t>& cap_slot() {
    static std::atomic<std::size_t> cap{initial_cap()};
    return cap;
}

}  // namespace

Cochain::Cochain(ModulePtr module, int degree, IntVector values)
    : module_(std::move(module)), degree_(degree), values_(std::move(values)) {
    tuples_ = kernels::power(module_->group()->order(), degree_);
    if (values_.size() != tuples_ * module_->gens()) throw InputError("cochain table has wrong size");
    const auto& mod = module_->moduli();
    const std::size_t k = mod.size();
    for (std::size_t i = 0; i < values_.size(); ++i) reduce_mod(values_[i], mod[i % k]);
}

Cochain Cochain::zero(ModulePtr module, int degree) {
    std::size_t n = kernels::power(module->group()->order(), degree) * module->gens();
    return Cochain(std::move(module), degree, IntVector(n));
}

Cochain Cochain::constant(ModulePtr module, int degree, std::span<const Int> value) {
    std::size_t t = kernels::power(module->group()->order(), degree);
    IntVector v;
    v.reserve(t * value.size());
    for (std::size_t i = 0; i < t; ++i) v.insert(v.end(), value.begin(), value.end());
    return Cochain(std::move(module), degree, std::move(v));
}

std::span<const Int> Cochain::value(std::size_t tuple) const {
    const std::size_t k = module_->gens();
    return std::span<const Int>(values_).subspan(tuple * k, k);
}

std::span<const Int> Cochain::at(const std::vector<uint32_t>& tuple) const {
    if (static_cast<int>(tuple.size()) != degree_) throw InputError("tuple length does not match cochain degree");
    return value(encode(tuple, module_->group()->order()));
}

bool Cochain::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Int& v) { return v.is_zero(); });
}

Cochain Cochain::operator+(const Cochain& rhs) const {
    require_module(rhs, module_, "cochain sum");
    IntVector v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.values_[i];
    return Cochain(module_, degree_, std::move(v));
}

Cochain Cochain::operator-(const Cochain& rhs) const {
    require_module(rhs, module_, "cochain difference");
    IntVector v = values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rhs.values_[i];
    return Cochain(module_, degree_, std::move(v));
}

Cochain Cochain::scaled(const Int& factor) const {
    IntVector v = values_;
    for (auto& x : v) x *= factor;
    return Cochain(module_, degree_, std::move(v));
}

std::string Cochain::to_string() const {
    std::ostringstream os;
    const std::size_t n = module_->group()->order();
    os << '{';
    for (std::size_t t = 0; t < tuples_; ++t) {
        os << (t ? "; " : "") << tuple_str(decode(t, n, degree_)) << "->[";
        auto v = value(t);
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ']';
    }
    os << '}';
    return os.str();
}

IntVector random_element(const FgAbGroup& group, std::mt19937_64& rng, int bound) {
    IntVector v(group.gens());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Int& d = group.moduli()[i];
        if (d.is_zero()) {
            std::uniform_int_distribution<long long> dist(-bound, bound);
            v[i] = dist(rng);
        } else {
            std::uniform_int_distribution<long long> dist(0, d.to_int64() - 1);
            v[i] = dist(rng);
        }
    }
    return v;
}

Cochain random_cochain(const ModulePtr& module, int degree, std::mt19937_64& rng, int bound) {
    const std::size_t t = kernels::power(module->group()->order(), degree);
    IntVector v;
    v.reserve(t * module->gens());
    for (std::size_t i = 0; i < t; ++i) {
        IntVector e = random_element(*module->carrier(), rng, bound);
        v.insert(v.end(), e.begin(), e.end());
    }
    return Cochain(module, degree, std::move(v));
}

Cochain coboundary(const Cochain& f) {
    const GModule& m = *f.module();
    const std::size_t n = m.group()->order();
    IntVector out(kernels::power(n, f.degree() + 1) * m.gens());
    kernels::coboundary(m.view(), f.degree(), f.values(), out);
    return Cochain(f.module(), f.degree() + 1, std::move(out));
}

std::size_t max_columns() { return cap_slot().load(); }

void set_max_columns(std::size_t cap) { cap_slot().store(cap); }

void check_cap(const GModule& module, int degree) {
    const std::size_t n = module.group()->order();
    std::size_t est = kernels::power(n, degree + 1) * std::max<std::size_t>(module.gens(), 1);
    if (est > max_columns()) {
        throw ResourceCapError("degree " + std::to_string(degree) + " cochains of " + module.name() + " exceed the column cap",
                               est);
    }
}

SparseMatrix coboundary_sparse(const GModule& module, int degree) {
    const std::size_t n = module.group()->order();
    const std::size_t k = module.gens();
    const std::size_t rows_t = kernels::power(n, degree + 1);
    const std::size_t cols_t = kernels::power(n, degree);
    const auto& mod = module.moduli();
    const FiniteGroup& g = *module.group();

    SparseMatrix s;
    s.rows = rows_t * k;
    s.cols = cols_t * k;
    s.entries.resize(s.rows);
    std::vector<uint32_t> y(degree);
    for (std::size_t t = 0; t < rows_t; ++t) {
        std::vector<uint32_t> x = decode(t, n, degree + 1);
        std::map<std::size_t, Int> block_coeff;  // tuple -> scalar for identity blocks
        for (int i = 1; i <= degree; ++i) {
            for (int p = 0, q = 0; p <= degree; ++p) {
                if (p == i) continue;
                y[q++] = (p == i - 1) ? g.mul(x[i - 1], x[i]) : x[p];
            }
            block_coeff[encode(y, n)] += (i % 2 == 0) ? 1 : -1;
        }
        for (int p = 0; p < degree; ++p) y[p] = x[p];
        block_coeff[encode(y, n)] += ((degree + 1) % 2 == 0) ? 1 : -1;

        std::vector<uint32_t> tail(x.begin() + 1, x.end());
        const std::size_t tail_idx = encode(tail, n);
        const IntMatrix& a = module.action(x[0]);
        for (std::size_t i = 0; i < k; ++i) {
            std::map<std::size_t, Int> row;
            for (std::size_t j = 0; j < k; ++j)
                if (!a(i, j).is_zero()) row[tail_idx * k + j] += a(i, j);
            for (const auto& [tup, c] : block_coeff)
                if (!c.is_zero()) row[tup * k + i] += c;
            auto& out = s.entries[t * k + i];
            for (auto& [col, c] : row) {
                Int v = c;
                reduce_mod(v, mod[i]);
                if (!v.is_zero()) out.emplace_back(col, std::move(v));
            }
        }
    }
    return s;
}

IntMatrix coboundary_matrix(const GModule& module, int degree) {
    check_cap(module, degree);
    return coboundary_sparse(module, degree).to_dense();
}

CohClass::CohClass(CohomologyPtr parent, IntVector coords) : parent_(std::move(parent)) {
    coords_ = parent_->group()->reduce(std::move(coords));
}

bool CohClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Int& v) { return v.is_zero(); });
}

CohClass CohClass::operator+(const CohClass& rhs) const {
    IntVector v = coords_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.coords_[i];
    return CohClass(parent_, std::move(v));
}

CohClass CohClass::operator-(const CohClass& rhs) const {
    IntVector v = coords_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rhs.coords_[i];
    return CohClass(parent_, std::move(v));
}

CohClass CohClass::scaled(const Int& factor) const {
    IntVector v = coords_;
    for (auto& x : v) x *= factor;
    return CohClass(parent_, std::move(v));
}

std::string CohClass::to_string() const { return AbElement(parent_->group(), coords_).to_string(); }

namespace {

Subquotient build_quotient(const ModulePtr& module, int degree) {
    if (degree < 0) throw InputError("negative cohomology degree");
    check_cap(*module, degree);
    const std::size_t n = module->group()->order();
    const auto ambient = repeated(module->moduli(), kernels::power(n, degree));
    const auto target = repeated(module->moduli(), kernels::power(n, degree + 1));
    auto cocycles = kernel_generators(coboundary_sparse(*module, degree), target, ambient);
    std::vector<IntVector> boundaries;
    if (degree > 0) {
        SparseMatrix d = coboundary_sparse(*module, degree - 1);
        boundaries.assign(d.cols, IntVector(d.rows));
        for (std::size_t r = 0; r < d.rows; ++r)
            for (const auto& [c, v] : d.entries[r]) boundaries[c][r] = v;
    }
    return Subquotient(ambient, std::move(cocycles), std::move(boundaries));
}

}  // namespace

CohomologyGroup::CohomologyGroup(ModulePtr module, int degree)
    : module_(std::move(module)), degree_(degree), quotient_(build_quotient(module_, degree)) {}

CohClass CohomologyGroup::classify(const Cochain& f) const {
    require_module(f, module_, "classify");
    if (f.degree() != degree_) throw InputError("classify: cochain has degree " + std::to_string(f.degree()));
    Cochain df = coboundary(f);
    const std::size_t n = module_->group()->order();
    for (std::size_t t = 0; t < df.tuple_count(); ++t) {
        auto v = df.value(t);
        if (std::any_of(v.begin(), v.end(), [](const Int& x) { return !x.is_zero(); })) {
            throw CheckFailure("cochain is not a cocycle", "d f" + tuple_str(decode(t, n, degree_ + 1)) + " != 0");
        }
    }
    return CohClass(shared_from_this(), quotient_.project(f.values()));
}

Cochain CohomologyGroup::representative(const CohClass& c) const {
    return Cochain(module_, degree_, quotient_.section(c.coords()));
}

CohClass CohomologyGroup::element(IntVector coords) const {
    if (coords.size() != group()->gens()) {
        throw InputError("class has " + std::to_string(coords.size()) + " coordinates, H^" + std::to_string(degree_) +
                         "(" + module_->name() + ") = " + describe() + " needs " + std::to_string(group()->gens()));
    }
    return CohClass(shared_from_this(), std::move(coords));
}

CohClass CohomologyGroup::zero() const { return CohClass(shared_from_this(), IntVector(group()->gens())); }

std::vector<CohClass> CohomologyGroup::generators() const {
    std::vector<CohClass> out;
    const std::size_t k = group()->gens();
    for (std::size_t i = 0; i < k; ++i) {
        IntVector v(k);
        v[i] = 1;
        out.push_back(element(std::move(v)));
    }
    return out;
}

std::vector<CohClass> CohomologyGroup::elements() const {
    std::vector<CohClass> out;
    for (auto& v : group()->elements()) out.push_back(element(std::move(v)));
    return out;
}

bool CohomologyGroup::is_coboundary(const Cochain& f) const {
    require_module(f, module_, "is_coboundary");
    return quotient_.denominator().contains(f.values());
}

namespace {

std::mutex cache_mu;
std::map<std::pair<const GModule*, int>, CohomologyPtr> cache;

}  // namespace

CohomologyPtr cohomology(const ModulePtr& module, int degree) {
    auto& mu = cache_mu;
    const auto key = std::make_pair(module.get(), degree);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto h = std::make_shared<const CohomologyGroup>(module, degree);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(h)).first->second;
}

// The cache holds strong references to its modules, so keys are never reused.
void clear_cohomology_cache() {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.clear();
}

Cochain induced_on_cochains(const GModuleMorphism& m, const Cochain& f) {
    require_module(f, m.source(), "induced morphism");
    const std::size_t n1 = m.source()->group()->order();
    const std::size_t n2 = m.target()->group()->order();
    const int r = f.degree();
    const std::size_t t2 = kernels::power(n2, r);
    const std::size_t k2 = m.target()->gens();
    IntVector out(t2 * k2);
    std::vector<uint32_t> y(r);
    for (std::size_t t = 0; t < t2; ++t) {
        auto x = decode(t, n2, r);
        for (int i = 0; i < r; ++i) y[i] = m.phi()(x[i]);
        IntVector v = m.apply(f.value(encode(y, n1)));
        std::copy(v.begin(), v.end(), out.begin() + t * k2);
    }
    return Cochain(m.target(), r, std::move(out));
}

CohClass induced_on_cohomology(const GModuleMorphism& m, const CohClass& c) {
    const CohomologyGroup& src = *c.parent();
    if (src.module().get() != m.source().get()) throw InputError("induced map: class is over the wrong module");
    Cochain img = induced_on_cochains(m, src.representative(c));
    return cohomology(m.target(), src.degree())->classify(img);
}

IntMatrix induced_matrix(const GModuleMorphism& m, int degree) {
    auto src = cohomology(m.source(), degree);
    auto dst = cohomology(m.target(), degree);
    IntMatrix out(dst->group()->gens(), src->group()->gens());
    auto gens = src->generators();
    for (std::size_t c = 0; c < gens.size(); ++c) {
        IntVector v = induced_on_cohomology(m, gens[c]).coords();
        for (std::size_t r = 0; r < v.size(); ++r) out(r, c) = v[r];
    }
    return out;
}

namespace {

template <typename Map>
Cochain act_on_cochain(uint32_t sigma, const Cochain& f, Map&& image) {
    const GModule& m = *f.module();
    const std::size_t n = m.group()->order();
    const int r = f.degree();
    const std::size_t k = m.gens();
    IntVector out(f.tuple_count() * k);
    std::vector<uint32_t> y(r);
    for (std::size_t t = 0; t < f.tuple_count(); ++t) {
        auto x = decode(t, n, r);
        for (int i = 0; i < r; ++i) y[i] = image(x[i]);
        IntVector v = m.act(sigma, f.value(encode(y, n)));
        std::copy(v.begin(), v.end(), out.begin() + t * k);
    }
    return Cochain(f.module(), r, std::move(out));
}

}  // namespace

Cochain g_act(uint32_t sigma, const Cochain& f) {
    const FiniteGroup& g = *f.module()->group();
    const uint32_t inv = g.inv(sigma);
    return act_on_cochain(sigma, f, [&](uint32_t t) { return g.mul(g.mul(inv, t), sigma); });
}

CohClass g_act(uint32_t sigma, const CohClass& c) {
    const CohomologyGroup& h = *c.parent();
    return h.classify(g_act(sigma, h.representative(c)));
}

Cochain g_act_translation(uint32_t sigma, const Cochain& f) {
    const FiniteGroup& g = *f.module()->group();
    const uint32_t inv = g.inv(sigma);
    return act_on_cochain(sigma, f, [&](uint32_t t) { return g.mul(inv, t); });
}

Cochain lift(const Cochain& f_pp, const ShortExactSeq& seq) {
    require_module(f_pp, seq.quotient(), "lift");
    const std::size_t k = seq.middle()->gens();
    IntVector out(f_pp.tuple_count() * k);
    for (std::size_t t = 0; t < f_pp.tuple_count(); ++t) {
        IntVector v = seq.section(f_pp.value(t));
        std::copy(v.begin(), v.end(), out.begin() + t * k);
    }
    return Cochain(seq.middle(), f_pp.degree(), std::move(out));
}

Cochain lift_random(const Cochain& f_pp, const ShortExactSeq& seq, std::mt19937_64& rng) {
    Cochain base = lift(f_pp, seq);
    Cochain noise = random_cochain(seq.sub(), f_pp.degree(), rng);
    return base + induced_on_cochains(seq.i(), noise);
}

Cochain to_sub(const Cochain& f, const ShortExactSeq& seq) {
    require_module(f, seq.middle(), "to_sub");
    const std::size_t k = seq.sub()->gens();
    const std::size_t n = seq.group()->order();
    IntVector out(f.tuple_count() * k);
    for (std::size_t t = 0; t < f.tuple_count(); ++t) {
        auto v = seq.sub_preimage(f.value(t));
        if (!v) throw CheckFailure("cochain leaves the submodule", "tuple " + tuple_str(decode(t, n, f.degree())));
        std::copy(v->begin(), v->end(), out.begin() + t * k);
    }
    return Cochain(seq.sub(), f.degree(), std::move(out));
}

Peeled peel_to_subcochain(const Cochain& f, const ShortExactSeq& seq) {
    require_module(f, seq.middle(), "peel");
    Cochain jf = induced_on_cochains(seq.j(), f);
    const int r = f.degree();
    if (r == 0) {
        if (!jf.is_zero()) throw CheckFailure("j_* f is not a coboundary", "degree 0 value " + jf.to_string());
        return {std::nullopt, to_sub(f, seq)};
    }
    const ModulePtr& q = seq.quotient();
    check_cap(*q, r - 1);
    const std::size_t n = q->group()->order();
    IntMatrix d = coboundary_sparse(*q, r - 1).to_dense();
    auto x = solve_in_lattice(d, jf.values(), repeated(q->moduli(), kernels::power(n, r)));
    if (!x) {
        std::string witness;
        try {
            witness = "class " + cohomology(q, r)->classify(jf).to_string();
        } catch (const CheckFailure& e) {
            witness = e.witness();
        }
        throw CheckFailure("j_* f is not a coboundary", witness);
    }
    Cochain f_tilde = lift(Cochain(q, r - 1, std::move(*x)), seq);
    return {f_tilde, to_sub(f - coboundary(f_tilde), seq)};
}

}  // namespace tatecup

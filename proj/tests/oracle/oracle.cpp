#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

namespace {

int64_t mod(int64_t v, int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

uint64_t blocks(std::size_t n, int r) {
    uint64_t b = 1;
    for (int i = 0; i < r; ++i) b *= n;
    return b;
}

std::vector<uint32_t> tuple_at(std::size_t n, int r, uint64_t index) {
    std::vector<uint32_t> x(r);
    for (int i = r - 1; i >= 0; --i) {
        x[i] = static_cast<uint32_t>(index % n);
        index /= n;
    }
    return x;
}

uint64_t tuple_index(std::size_t n, const std::vector<uint32_t>& x) {
    uint64_t index = 0;
    for (uint32_t v : x) index = index * n + v;
    return index;
}

Values block(const Values& f, std::size_t k, uint64_t i) {
    return Values(f.begin() + static_cast<std::ptrdiff_t>(i * k), f.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
}

Values element(const Module& m, uint64_t index) {
    Values a(m.k());
    for (std::size_t i = m.k(); i-- > 0;) {
        a[i] = static_cast<int64_t>(index % static_cast<uint64_t>(m.moduli[i]));
        index /= static_cast<uint64_t>(m.moduli[i]);
    }
    return a;
}

uint64_t element_index(const Module& m, const Values& a) {
    uint64_t index = 0;
    for (std::size_t i = 0; i < m.k(); ++i) index = index * m.moduli[i] + mod(a[i], m.moduli[i]);
    return index;
}

}  // namespace

uint64_t Module::order() const {
    uint64_t o = 1;
    for (int64_t q : moduli) o *= static_cast<uint64_t>(q);
    return o;
}

Values Module::act_on(uint32_t g, const Values& a) const {
    const std::size_t kk = k();
    Values out(kk, 0);
    for (std::size_t i = 0; i < kk; ++i) {
        int64_t s = 0;
        for (std::size_t j = 0; j < kk; ++j) s += act[g][i * kk + j] * a[j];
        out[i] = mod(s, moduli[i]);
    }
    return out;
}

Values Map::apply(const Values& a) const {
    Values out(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out[i] += m[i * cols + j] * a[j];
    return out;
}

std::optional<uint64_t> space_size(const Module& m, int r) {
    uint64_t size = 1;
    const uint64_t a = m.order();
    for (uint64_t i = 0; i < blocks(m.n, r); ++i) {
        if (a > 1 && size > kMaxSpace / a) return std::nullopt;
        size *= a;
    }
    return size;
}

Values decode(const Module& m, int r, uint64_t index) {
    const uint64_t b = blocks(m.n, r);
    Values f(b * m.k());
    for (uint64_t i = b; i-- > 0;) {
        Values a = element(m, index % m.order());
        index /= m.order();
        std::copy(a.begin(), a.end(), f.begin() + static_cast<std::ptrdiff_t>(i * m.k()));
    }
    return f;
}

uint64_t encode(const Module& m, const Values& f) {
    uint64_t index = 0;
    const uint64_t b = f.size() / std::max<std::size_t>(m.k(), 1);
    for (uint64_t i = 0; i < b; ++i) index = index * m.order() + element_index(m, block(f, m.k(), i));
    return index;
}

Values reduce(const Module& m, Values f) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = mod(f[i], m.moduli[i % m.k()]);
    return f;
}

namespace {

// For each output tuple of d_r: x_1, the tail index, the r merged indices and
// the head index.
struct Faces {
    std::vector<uint32_t> first;
    std::vector<uint64_t> tail, head;
    std::vector<std::vector<uint64_t>> merged;
};

const Faces& faces(const Module& m, int r) {
    static std::map<std::pair<std::vector<uint32_t>, int>, Faces> memo;
    auto key = std::make_pair(m.table, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Faces fc;
    for (uint64_t t = 0; t < blocks(m.n, r + 1); ++t) {
        std::vector<uint32_t> x = tuple_at(m.n, r + 1, t);
        fc.first.push_back(x[0]);
        fc.tail.push_back(tuple_index(m.n, std::vector<uint32_t>(x.begin() + 1, x.end())));
        std::vector<uint64_t> mids;
        for (int i = 1; i <= r; ++i) {
            std::vector<uint32_t> merged;
            for (int j = 0; j < r + 1; ++j) {
                if (j == i - 1) {
                    merged.push_back(m.table[x[j] * m.n + x[j + 1]]);
                    ++j;
                } else {
                    merged.push_back(x[j]);
                }
            }
            mids.push_back(tuple_index(m.n, merged));
        }
        fc.merged.push_back(std::move(mids));
        fc.head.push_back(tuple_index(m.n, std::vector<uint32_t>(x.begin(), x.end() - 1)));
    }
    return memo.emplace(key, std::move(fc)).first->second;
}

}  // namespace

Values coboundary(const Module& m, int r, const Values& f) {
    const std::size_t k = m.k();
    const Faces& fc = faces(m, r);
    Values out(fc.first.size() * k, 0);
    for (uint64_t t = 0; t < fc.first.size(); ++t) {
        int64_t* acc = out.data() + t * k;
        const Values& a = m.act[fc.first[t]];
        const int64_t* tail = f.data() + fc.tail[t] * k;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) acc[i] += a[i * k + j] * tail[j];
        for (int i = 1; i <= r; ++i) {
            const int64_t* v = f.data() + fc.merged[t][i - 1] * k;
            for (std::size_t c = 0; c < k; ++c) acc[c] += (i % 2 == 0 ? 1 : -1) * v[c];
        }
        const int64_t* head = f.data() + fc.head[t] * k;
        for (std::size_t c = 0; c < k; ++c) acc[c] += ((r + 1) % 2 == 0 ? 1 : -1) * head[c];
    }
    return reduce(m, std::move(out));
}

Values cup(const Module& b, const Module& c, const Pairing& p, int r, int s, const Values& f, const Values& g) {
    const std::size_t n = b.n;
    const uint64_t out_blocks = blocks(n, r + s);
    Values out(out_blocks * c.k(), 0);
    for (uint64_t t = 0; t < out_blocks; ++t) {
        std::vector<uint32_t> x = tuple_at(n, r + s, t);
        std::vector<uint32_t> left(x.begin(), x.begin() + r);
        std::vector<uint32_t> right(x.begin() + r, x.end());
        uint32_t prod = 0;
        for (uint32_t v : left) prod = b.table[prod * n + v];
        Values fa = block(f, p.ka, tuple_index(n, left));
        Values gb = b.act_on(prod, block(g, p.kb, tuple_index(n, right)));
        for (std::size_t i = 0; i < p.ka; ++i)
            for (std::size_t j = 0; j < p.kb; ++j)
                for (std::size_t q = 0; q < c.k(); ++q)
                    out[t * c.k() + q] += fa[i] * gb[j] * p.tensor[i * p.kb + j][q];
    }
    return reduce(c, std::move(out));
}

Preimages::Preimages(const Module& source, const Module& target, const Map& map)
    : source_(source), target_(target), pre_(target.order()) {
    if (source.order() > 10 * kMaxSpace) throw std::runtime_error("oracle: source module too large to enumerate");
    for (uint64_t i = 0; i < source.order(); ++i) {
        pre_[element_index(target, map.apply(element(source, i)))].push_back(i);
    }
}

bool Preimages::surjective() const {
    return std::all_of(pre_.begin(), pre_.end(), [](const auto& v) { return !v.empty(); });
}

bool Preimages::injective() const {
    return std::all_of(pre_.begin(), pre_.end(), [](const auto& v) { return v.size() <= 1; });
}

std::optional<Values> Preimages::pick(const Values& y, std::mt19937_64& rng) const {
    const auto& cands = pre_[element_index(target_, y)];
    if (cands.empty()) return std::nullopt;
    return element(source_, cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)]);
}

std::optional<Values> Preimages::pick_cochain(const Values& f, std::mt19937_64& rng) const {
    const std::size_t kt = target_.k();
    const std::size_t b = kt == 0 ? 0 : f.size() / kt;
    Values out;
    for (std::size_t i = 0; i < b; ++i) {
        auto a = pick(block(f, kt, i), rng);
        if (!a) return std::nullopt;
        out.insert(out.end(), a->begin(), a->end());
    }
    if (kt == 0) out.assign(f.size() * source_.k(), 0);
    return out;
}

std::optional<Cohomology> Cohomology::compute(const Module& m, int r) {
    auto top = space_size(m, r);
    if (!top) return std::nullopt;
    std::vector<Values> bounds;
    std::vector<bool> seen(*top, false);
    if (r == 0) {
        bounds.push_back(Values(m.k(), 0));
    } else {
        auto below = space_size(m, r - 1);
        if (!below) return std::nullopt;
        for (uint64_t i = 0; i < *below; ++i) {
            Values b = coboundary(m, r - 1, decode(m, r - 1, i));
            uint64_t e = encode(m, b);
            if (!seen[e]) {
                seen[e] = true;
                bounds.push_back(std::move(b));
            }
        }
    }

    Cohomology h;
    h.m_ = m;
    h.r_ = r;
    h.boundaries_ = std::move(bounds);
    h.coset_of_.assign(*top, -1);
    std::vector<uint64_t> cocycles;
    for (uint64_t i = 0; i < *top; ++i) {
        Values d = coboundary(m, r, decode(m, r, i));
        if (std::all_of(d.begin(), d.end(), [](int64_t v) { return v == 0; })) cocycles.push_back(i);
    }
    h.cocycles_ = cocycles.size();
    for (uint64_t z : cocycles) {
        if (h.coset_of_[z] >= 0) continue;
        const int id = static_cast<int>(h.reps_.size());
        Values zv = decode(m, r, z);
        for (const auto& b : h.boundaries_) {
            Values s = zv;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
            uint64_t e = encode(m, reduce(m, std::move(s)));
            if (h.coset_of_[e] >= 0) throw std::logic_error("oracle: overlapping cosets");
            h.coset_of_[e] = id;
        }
        h.reps_.push_back(std::move(zv));
    }
    return h;
}

int Cohomology::coset(const Values& f) const { return coset_of_[encode(m_, reduce(m_, f))]; }

Values Cohomology::random_member(int coset, std::mt19937_64& rng) const {
    Values z = reps_[coset];
    const Values& b = boundaries_[std::uniform_int_distribution<std::size_t>(0, boundaries_.size() - 1)(rng)];
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += b[i];
    return reduce(m_, std::move(z));
}

std::vector<int64_t> Cohomology::invariants() const {
    const int zero = coset(Values(reps_.empty() ? 0 : reps_[0].size(), 0));
    // |H[q]|: classes killed by q
    auto killed = [&](int64_t q) {
        std::size_t count = 0;
        for (const auto& z : reps_) {
            Values s = z;
            for (auto& v : s) v *= q;
            if (coset(s) == zero) ++count;
        }
        return count;
    };
    std::size_t order = reps_.size();
    std::map<int64_t, std::vector<int64_t>> primary;  // prime -> exponents, largest first
    std::size_t rest = order;
    for (int64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        int total = 0;
        while (rest % p == 0) {
            rest /= p;
            ++total;
        }
        // c[j] = log_p |H[p^j]|
        std::vector<int> c{0};
        int64_t q = 1;
        while (c.back() < total) {
            q *= p;
            std::size_t h = killed(q);
            int e = 0;
            while (h > 1) {
                h /= p;
                ++e;
            }
            c.push_back(e);
        }
        c.push_back(total);
        // number of cyclic factors of order >= p^j is c[j] - c[j-1]
        for (std::size_t j = 1; j + 1 < c.size(); ++j) {
            int exactly = (c[j] - c[j - 1]) - (c[j + 1] - c[j]);
            for (int t = 0; t < exactly; ++t) primary[p].push_back(static_cast<int64_t>(j));
        }
        std::sort(primary[p].rbegin(), primary[p].rend());
    }
    std::vector<int64_t> out;
    for (std::size_t slot = 0;; ++slot) {
        int64_t d = 1;
        bool any = false;
        for (auto& [p, exps] : primary) {
            if (slot < exps.size()) {
                any = true;
                for (int64_t t = 0; t < exps[slot]; ++t) d *= p;
            }
        }
        if (!any) break;
        out.push_back(d);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace oracle

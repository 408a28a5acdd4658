#include "tatecup/finite_group.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"

namespace tatecup {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

FiniteGroup FiniteGroup::trusted(std::size_t n, std::vector<uint32_t> table, std::string name) {
    FiniteGroup g;
    g.order_ = n;
    g.name_ = std::move(name);
    g.table_ = std::move(table);
    g.inverses_.assign(n, 0);
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            if (g.mul(a, b) == 0) g.inverses_[a] = b;
    return g;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<uint32_t>>& table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0) throw InputError("group table is empty");
    if (n > kMaxCheckedOrder) {
        throw InputError("group order " + std::to_string(n) + " exceeds the checked maximum of " +
                         std::to_string(kMaxCheckedOrder));
    }
    std::vector<uint32_t> flat;
    flat.reserve(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) throw InputError("group table is not square (row " + std::to_string(a) + ")");
        for (std::size_t b = 0; b < n; ++b) {
            if (table[a][b] >= n) {
                throw CheckFailure("group table entry out of range", triple(a, b, table[a][b]));
            }
            flat.push_back(table[a][b]);
        }
    }
    auto at = [&](std::size_t a, std::size_t b) { return flat[a * n + b]; };
    for (std::size_t a = 0; a < n; ++a) {
        if (at(0, a) != a || at(a, 0) != a) throw CheckFailure("index 0 is not an identity", triple(0, a, 0));
    }
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b) found = at(a, b) == 0 && at(b, a) == 0;
        if (!found) throw CheckFailure("element has no inverse", triple(a, 0, 0));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) throw CheckFailure("multiplication is not associative", triple(a, b, c));
    return trusted(n, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw InputError("cyclic group of order 0");
    std::vector<uint32_t> flat(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<uint32_t>((a + b) % n);
    return trusted(n, std::move(flat), "Z/" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& x, const FiniteGroup& y) {
    const std::size_t n1 = x.order(), n2 = y.order(), n = n1 * n2;
    std::vector<uint32_t> flat(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            uint32_t p = x.mul(static_cast<uint32_t>(a / n2), static_cast<uint32_t>(b / n2));
            uint32_t q = y.mul(static_cast<uint32_t>(a % n2), static_cast<uint32_t>(b % n2));
            flat[a * n + b] = static_cast<uint32_t>(p * n2 + q);
        }
    return trusted(n, std::move(flat), x.name() + "x" + y.name());
}

FiniteGroup FiniteGroup::symmetric3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::array<int, 3>& q) {
        return static_cast<uint32_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<uint32_t> flat(36);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            flat[a * 6 + b] = index_of(c);
        }
    return trusted(6, std::move(flat), "S3");
}

std::size_t FiniteGroup::element_order(uint32_t a) const {
    std::size_t k = 1;
    for (uint32_t x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<uint32_t> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    const std::size_t n = source_->order();
    if (images_.size() != n) throw InputError("group homomorphism needs one image per source element");
    for (auto v : images_)
        if (v >= target_->order()) throw InputError("group homomorphism image out of range");
    if (images_[0] != 0) throw CheckFailure("group homomorphism does not preserve the identity", "0");
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b])) {
                throw CheckFailure("map is not a group homomorphism",
                                   "(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
}

GroupHom GroupHom::identity(const GroupPtr& g) {
    std::vector<uint32_t> images(g->order());
    for (uint32_t a = 0; a < images.size(); ++a) images[a] = a;
    return GroupHom(g, g, std::move(images));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    if (!(*inner.target_ == *source_)) throw InputError("composition of incompatible group homomorphisms");
    std::vector<uint32_t> images(inner.source_->order());
    for (uint32_t a = 0; a < images.size(); ++a) images[a] = images_[inner.images_[a]];
    return GroupHom(inner.source_, target_, std::move(images));
}

bool GroupHom::is_identity() const {
    if (!(*source_ == *target_)) return false;
    for (uint32_t a = 0; a < images_.size(); ++a)
        if (images_[a] != a) return false;
    return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<uint32_t> members) : parent_(std::move(parent)), members_(std::move(members)) {
    const std::size_t n = parent_->order();
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty() || members_[0] != 0) throw CheckFailure("subgroup must contain the identity", "");
    position_.assign(n, -1);
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (members_[k] >= n) throw InputError("subgroup member out of range");
        position_[members_[k]] = static_cast<int>(k);
    }
    for (auto a : members_)
        for (auto b : members_)
            if (!contains(parent_->mul(a, b))) {
                throw CheckFailure("subset is not closed under multiplication",
                                   "(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }

    std::vector<bool> seen_left(n, false), seen_right(n, false);
    right_factor_.assign(n, {0, 0});
    for (uint32_t x = 0; x < n; ++x) {
        if (!seen_left[x]) {
            left_reps_.push_back(x);
            for (auto h : members_) seen_left[parent_->mul(x, h)] = true;
        }
        if (!seen_right[x]) {
            std::size_t j = right_reps_.size();
            right_reps_.push_back(x);
            for (auto h : members_) {
                uint32_t g = parent_->mul(h, x);
                seen_right[g] = true;
                right_factor_[g] = {h, j};
            }
        }
    }

    const std::size_t m = members_.size();
    std::vector<uint32_t> flat(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            flat[a * m + b] = static_cast<uint32_t>(position_[parent_->mul(members_[a], members_[b])]);
    std::vector<std::vector<uint32_t>> rows(m);
    for (std::size_t a = 0; a < m; ++a) rows[a].assign(flat.begin() + a * m, flat.begin() + (a + 1) * m);
    group_ = make_group(FiniteGroup::from_table(rows, "H<" + parent_->name()));
    inclusion_ = GroupHom(group_, parent_, members_);
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<uint32_t>& seed) {
    std::set<uint32_t> members{0};
    for (auto s : seed) {
        if (s >= g->order()) throw InputError("subgroup generator out of range");
        members.insert(s);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint32_t> cur(members.begin(), members.end());
        for (auto a : cur)
            for (auto b : cur)
                if (members.insert(g->mul(a, b)).second) grew = true;
    }
    return Subgroup(g, std::vector<uint32_t>(members.begin(), members.end()));
}

std::vector<std::vector<uint32_t>> tuples(const FiniteGroup& g, int r) {
    const std::size_t n = g.order();
    const std::size_t count = kernels::power(n, r);
    std::vector<std::vector<uint32_t>> out(count, std::vector<uint32_t>(r));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t t = idx;
        for (int i = r - 1; i >= 0; --i) {
            out[idx][i] = static_cast<uint32_t>(t % n);
            t /= n;
        }
    }
    return out;
}

}  // namespace tatecup

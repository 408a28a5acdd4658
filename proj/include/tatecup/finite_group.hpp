#pragma once

// Finite groups given by multiplication tables. Elements are the indices
// 0..n-1 and the identity is always index 0.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tatecup {

class FiniteGroup {
public:
    // Largest order for which from_table checks associativity exhaustively.
    static constexpr std::size_t kMaxCheckedOrder = 64;

    FiniteGroup() = default;

    // Rejects tables that are not groups, naming the first failing triple.
    static FiniteGroup from_table(const std::vector<std::vector<uint32_t>>& table, std::string name = "");
    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    // Permutations of {0,1,2} in lexicographic order, composed right to left.
    static FiniteGroup symmetric3();

    std::size_t order() const noexcept { return order_; }
    const std::string& name() const noexcept { return name_; }
    uint32_t mul(uint32_t a, uint32_t b) const noexcept { return table_[std::size_t(a) * order_ + b]; }
    uint32_t inv(uint32_t a) const noexcept { return inverses_[a]; }
    std::span<const uint32_t> table() const noexcept { return table_; }
    const std::vector<uint32_t>& inverses() const noexcept { return inverses_; }
    std::size_t element_order(uint32_t a) const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
    std::size_t order_ = 0;
    std::string name_;
    std::vector<uint32_t> table_;
    std::vector<uint32_t> inverses_;

    static FiniteGroup trusted(std::size_t n, std::vector<uint32_t> table, std::string name);
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group(FiniteGroup g);

// Homomorphism of finite groups, stored as the image of every element.
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(GroupPtr source, GroupPtr target, std::vector<uint32_t> images);
    static GroupHom identity(const GroupPtr& g);

    const GroupPtr& source() const noexcept { return source_; }
    const GroupPtr& target() const noexcept { return target_; }
    const std::vector<uint32_t>& images() const noexcept { return images_; }
    uint32_t operator()(uint32_t g) const { return images_[g]; }
    GroupHom compose(const GroupHom& inner) const;  // this o inner
    bool is_identity() const;

private:
    GroupPtr source_;
    GroupPtr target_;
    std::vector<uint32_t> images_;
};

class Subgroup {
public:
    // `members` must already be a subgroup; use subgroup_closure otherwise.
    Subgroup(GroupPtr parent, std::vector<uint32_t> members);

    const GroupPtr& parent() const noexcept { return parent_; }
    const std::vector<uint32_t>& members() const noexcept { return members_; }
    bool contains(uint32_t g) const { return position_[g] >= 0; }
    // Index of g in members(), or -1.
    int position(uint32_t g) const { return position_[g]; }
    std::size_t order() const noexcept { return members_.size(); }
    std::size_t index() const noexcept { return parent_->order() / members_.size(); }

    // Least element of each left coset xH, in increasing order.
    const std::vector<uint32_t>& left_coset_reps() const noexcept { return left_reps_; }
    // Least element of each right coset Hx, in increasing order.
    const std::vector<uint32_t>& right_coset_reps() const noexcept { return right_reps_; }

    // g = h * right_coset_reps()[j]; returns (h, j).
    std::pair<uint32_t, std::size_t> right_factor(uint32_t g) const { return right_factor_[g]; }

    // H as a group in its own right (element k is members()[k]) and its
    // inclusion into the parent.
    const GroupPtr& as_group() const noexcept { return group_; }
    const GroupHom& inclusion() const noexcept { return inclusion_; }

private:
    GroupPtr parent_;
    std::vector<uint32_t> members_;
    std::vector<int> position_;
    std::vector<uint32_t> left_reps_;
    std::vector<uint32_t> right_reps_;
    std::vector<std::pair<uint32_t, std::size_t>> right_factor_;
    GroupPtr group_;
    GroupHom inclusion_;
};

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<uint32_t>& seed);

// G^r in lexicographic order; r = 0 gives the single empty tuple.
std::vector<std::vector<uint32_t>> tuples(const FiniteGroup& g, int r);

}  // namespace tatecup

#include "tatecup/abgroup.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "tatecup/error.hpp"

namespace tatecup {

namespace {

bool all_zero(std::span<const Int> v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x.is_zero(); });
}

std::string coords_string(std::span<const Int> v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

}  // namespace

FgAbGroup FgAbGroup::canonical(std::vector<Int> torsion, std::size_t free_rank) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (torsion[i] < Int(2)) throw InputError("invariant factor must be at least 2");
        if (i + 1 < torsion.size() && !divides(torsion[i], torsion[i + 1])) {
            throw InputError("invariant factors must form a divisibility chain");
        }
    }
    FgAbGroup g;
    g.torsion_ = std::move(torsion);
    g.free_rank_ = free_rank;
    g.moduli_ = g.torsion_;
    g.moduli_.resize(g.torsion_.size() + free_rank, Int(0));
    g.to_canonical_ = IntMatrix::identity(g.gens());
    g.from_canonical_ = IntMatrix::identity(g.gens());
    return g;
}

FgAbGroup FgAbGroup::cyclic(long long n) {
    if (n < 0) throw InputError("cyclic group order must be nonnegative");
    if (n == 0) return integers();
    if (n == 1) return trivial();
    return canonical({Int(n)}, 0);
}

FgAbGroup FgAbGroup::from_relations(std::size_t generators, const IntMatrix& relations) {
    if (relations.rows() != generators) throw InputError("relation matrix must have one row per generator");
    SmithForm snf = smith_normal_form(relations, true);
    std::vector<std::size_t> torsion_rows;
    std::vector<Int> torsion;
    for (std::size_t t = 0; t < snf.rank; ++t) {
        if (snf.S(t, t) > Int(1)) {
            torsion_rows.push_back(t);
            torsion.push_back(snf.S(t, t));
        }
    }
    std::vector<std::size_t> selected = torsion_rows;
    for (std::size_t t = snf.rank; t < generators; ++t) selected.push_back(t);

    FgAbGroup g;
    g.torsion_ = std::move(torsion);
    g.free_rank_ = generators - snf.rank;
    g.moduli_ = g.torsion_;
    g.moduli_.resize(selected.size(), Int(0));
    g.to_canonical_ = IntMatrix(selected.size(), generators);
    g.from_canonical_ = IntMatrix(generators, selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        for (std::size_t c = 0; c < generators; ++c) {
            Int v = snf.U(selected[i], c);
            reduce_mod(v, g.moduli_[i]);
            g.to_canonical_(i, c) = std::move(v);
            g.from_canonical_(c, i) = snf.U_inv(c, selected[i]);
        }
    }
    return g;
}

FgAbGroup FgAbGroup::from_diagonal(std::span<const Int> moduli) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i].is_zero()) continue;
        IntVector c(moduli.size());
        c[i] = moduli[i];
        cols.push_back(std::move(c));
    }
    return from_relations(moduli.size(), IntMatrix::from_columns(cols, moduli.size()));
}

std::optional<Int> FgAbGroup::order() const {
    if (free_rank_ > 0) return std::nullopt;
    Int out = 1;
    for (const auto& d : torsion_) out *= d;
    return out;
}

IntVector FgAbGroup::reduce(IntVector coords) const {
    if (coords.size() != gens()) throw InputError("coordinate vector has wrong length for " + describe());
    reduce_vector(coords, moduli_);
    return coords;
}

IntVector FgAbGroup::from_presentation(std::span<const Int> presentation_coords) const {
    return reduce(to_canonical_ * presentation_coords);
}

IntVector FgAbGroup::to_presentation(std::span<const Int> canonical_coords) const {
    return from_canonical_ * canonical_coords;
}

std::vector<IntVector> FgAbGroup::elements() const {
    if (!is_finite()) throw InputError("cannot enumerate the infinite group " + describe());
    std::vector<IntVector> out;
    IntVector cur(gens());
    while (true) {
        out.push_back(cur);
        std::size_t i = gens();
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < moduli_[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (gens() == 0) return out;
    }
}

std::string FgAbGroup::describe() const {
    if (gens() == 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    for (std::size_t i = 0; i < free_rank_; ++i) {
        os << (first ? "" : " + ") << "Z";
        first = false;
    }
    return os.str();
}

AbGroupPtr make_group(FgAbGroup g) { return std::make_shared<const FgAbGroup>(std::move(g)); }

AbElement::AbElement(AbGroupPtr parent, IntVector coords) : parent_(std::move(parent)) {
    if (!parent_) throw InputError("element without parent group");
    coords_ = parent_->reduce(std::move(coords));
}

AbElement AbElement::zero(AbGroupPtr parent) {
    IntVector z(parent->gens());
    return AbElement(std::move(parent), std::move(z));
}

bool AbElement::is_zero() const { return all_zero(coords_); }

AbElement AbElement::operator+(const AbElement& rhs) const {
    IntVector out = coords_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.coords_[i];
    return AbElement(parent_, std::move(out));
}

AbElement AbElement::operator-(const AbElement& rhs) const {
    IntVector out = coords_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs.coords_[i];
    return AbElement(parent_, std::move(out));
}

AbElement AbElement::operator-() const { return scaled(Int(-1)); }

AbElement AbElement::scaled(const Int& factor) const {
    IntVector out = coords_;
    for (auto& v : out) v *= factor;
    return AbElement(parent_, std::move(out));
}

std::string AbElement::to_string() const { return coords_string(coords_); }

namespace {

struct SolverCache {
    std::once_flag once;
    std::unique_ptr<LatticeSolver> solver;
};

}  // namespace

AbHom::AbHom(AbGroupPtr source, AbGroupPtr target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_->gens() || matrix_.cols() != source_->gens()) {
        throw InputError("homomorphism matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_->gens()) + "x" +
                         std::to_string(source_->gens()));
    }
    const auto& tm = target_->moduli();
    const auto& sm = source_->moduli();
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        for (std::size_t j = 0; j < matrix_.cols(); ++j) reduce_mod(matrix_(i, j), tm[i]);
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
        if (sm[j].is_zero()) continue;
        for (std::size_t i = 0; i < matrix_.rows(); ++i) {
            Int v = sm[j] * matrix_(i, j);
            reduce_mod(v, tm[i]);
            if (!v.is_zero()) {
                throw CheckFailure("homomorphism is not well defined on torsion",
                                   "generator " + std::to_string(j) + " of order " + sm[j].to_string());
            }
        }
    }
}

AbHom AbHom::identity(const AbGroupPtr& g) { return AbHom(g, g, IntMatrix::identity(g->gens())); }

AbHom AbHom::zero(AbGroupPtr source, AbGroupPtr target) {
    IntMatrix m(target->gens(), source->gens());
    return AbHom(std::move(source), std::move(target), std::move(m));
}

IntVector AbHom::apply(std::span<const Int> coords) const {
    IntVector out = matrix_ * coords;
    reduce_vector(out, target_->moduli());
    return out;
}

AbElement AbHom::operator()(const AbElement& a) const { return AbElement(target_, apply(a.coords())); }

AbHom AbHom::compose(const AbHom& inner) const {
    if (inner.target_->moduli() != source_->moduli()) throw InputError("composition of incompatible homomorphisms");
    return AbHom(inner.source_, target_, matrix_ * inner.matrix_);
}

AbHom AbHom::operator+(const AbHom& rhs) const { return AbHom(source_, target_, matrix_ + rhs.matrix_); }

AbHom AbHom::operator-(const AbHom& rhs) const { return AbHom(source_, target_, matrix_ - rhs.matrix_); }

bool AbHom::equals(const AbHom& other) const {
    return source_->moduli() == other.source_->moduli() && target_->moduli() == other.target_->moduli() &&
           matrix_ == other.matrix_;
}

std::vector<IntVector> AbHom::kernel() const {
    auto gens = kernel_generators(SparseMatrix::from_dense(matrix_), target_->moduli(), source_->moduli());
    std::vector<IntVector> out;
    for (auto& g : gens)
        if (!all_zero(g)) out.push_back(std::move(g));
    return out;
}

bool AbHom::is_injective() const { return kernel().empty(); }

bool AbHom::is_surjective() const {
    LatticeBasis image(
        [&] {
            std::vector<IntVector> cols;
            for (std::size_t j = 0; j < matrix_.cols(); ++j) cols.push_back(matrix_.column(j));
            return cols;
        }(),
        target_->moduli());
    if (image.rank() != target_->gens()) return false;
    for (std::size_t j = 0; j < image.rank(); ++j)
        if (!image.columns()[j][image.pivot_rows()[j]].is_one()) return false;
    return true;
}

std::optional<IntVector> AbHom::preimage(std::span<const Int> y) const {
    LatticeSolver solver(matrix_, target_->moduli());
    auto x = solver.solve(y);
    if (!x) return std::nullopt;
    return source_->reduce(std::move(*x));
}

Subquotient::Subquotient(std::vector<Int> ambient_moduli, std::vector<IntVector> numerator,
                         std::vector<IntVector> denominator)
    : ambient_(std::move(ambient_moduli)),
      numerator_(std::move(numerator), ambient_),
      denominator_(std::move(denominator), ambient_) {
    const std::size_t k = numerator_.rank();
    std::vector<IntVector> rel_cols;
    rel_cols.reserve(denominator_.rank());
    for (std::size_t j = 0; j < denominator_.rank(); ++j) {
        auto c = numerator_.coordinates(denominator_.columns()[j]);
        if (!c) {
            throw CheckFailure("denominator is not contained in numerator",
                               "denominator generator " + coords_string(denominator_.columns()[j]));
        }
        rel_cols.push_back(std::move(*c));
    }
    IntMatrix rel = IntMatrix::from_columns(rel_cols, k);
    SmithForm snf = smith_normal_form(rel, true);

    std::vector<std::size_t> selected;
    std::vector<Int> torsion;
    for (std::size_t t = 0; t < snf.rank; ++t) {
        if (snf.S(t, t) > Int(1)) {
            selected.push_back(t);
            torsion.push_back(snf.S(t, t));
        }
    }
    for (std::size_t t = snf.rank; t < k; ++t) selected.push_back(t);
    group_ = make_group(FgAbGroup::canonical(std::move(torsion), k - snf.rank));

    const auto& moduli = group_->moduli();
    projection_ = IntMatrix(selected.size(), k);
    for (std::size_t i = 0; i < selected.size(); ++i) {
        for (std::size_t c = 0; c < k; ++c) {
            Int v = snf.U(selected[i], c);
            reduce_mod(v, moduli[i]);
            projection_(i, c) = std::move(v);
        }
        section_gens_.push_back(numerator_.combine(snf.U_inv.column(selected[i])));
    }
}

std::optional<IntVector> Subquotient::try_project(std::span<const Int> x) const {
    auto y = numerator_.coordinates(x);
    if (!y) return std::nullopt;
    IntVector z = projection_ * *y;
    reduce_vector(z, group_->moduli());
    return z;
}

IntVector Subquotient::project(std::span<const Int> x) const {
    auto z = try_project(x);
    if (!z) throw CheckFailure("vector is not in the numerator lattice", coords_string(x));
    return std::move(*z);
}

IntVector Subquotient::section(std::span<const Int> canonical) const {
    if (canonical.size() != section_gens_.size()) throw InputError("canonical coordinates have wrong length");
    IntVector x(ambient_.size());
    for (std::size_t g = 0; g < canonical.size(); ++g) {
        if (canonical[g].is_zero()) continue;
        for (std::size_t r = 0; r < x.size(); ++r)
            if (!section_gens_[g][r].is_zero()) x[r] += canonical[g] * section_gens_[g][r];
    }
    return denominator_.reduce(x);
}

Subquotient subquotient(const FgAbGroup& ambient, const std::vector<AbElement>& numerator,
                        const std::vector<AbElement>& denominator) {
    std::vector<IntVector> num;
    std::vector<IntVector> den;
    for (const auto& e : numerator) num.push_back(e.coords());
    for (const auto& e : denominator) den.push_back(e.coords());
    return Subquotient(ambient.moduli(), std::move(num), std::move(den));
}

}  // namespace tatecup

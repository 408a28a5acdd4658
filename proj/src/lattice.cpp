#include "tatecup/lattice.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "tatecup/error.hpp"
#include "tatecup/kernels.hpp"

namespace tatecup {

namespace {

// |a| < |b| without allocating for small values.
bool abs_less(const Int& a, const Int& b) {
    if (a.is_small() && b.is_small()) {
        int64_t x = a.small_value();
        int64_t y = b.small_value();
        // Compare as unsigned magnitudes to stay defined at INT64_MIN.
        uint64_t ux = x < 0 ? uint64_t(0) - static_cast<uint64_t>(x) : static_cast<uint64_t>(x);
        uint64_t uy = y < 0 ? uint64_t(0) - static_cast<uint64_t>(y) : static_cast<uint64_t>(y);
        return ux < uy;
    }
    return abs(a) < abs(b);
}

struct Position {
    std::size_t row;
    std::size_t col;
};

}  // namespace

std::vector<Int> SmithForm::diagonal() const {
    std::vector<Int> out;
    const std::size_t n = std::min(S.rows(), S.cols());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(S(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m, bool with_inverse) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    SmithForm out;
    out.S = m;
    out.U = IntMatrix::identity(rows);
    out.V = IntMatrix::identity(cols);
    if (with_inverse) out.U_inv = IntMatrix::identity(rows);
    IntMatrix& S = out.S;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        S.swap_rows(a, b);
        out.U.swap_rows(a, b);
        if (with_inverse) out.U_inv.swap_cols(a, b);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        S.swap_cols(a, b);
        out.V.swap_cols(a, b);
    };
    // row dst += f * row src
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        S.add_row_multiple(dst, src, f);
        out.U.add_row_multiple(dst, src, f);
        if (with_inverse) out.U_inv.add_col_multiple(src, dst, -f);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        S.add_col_multiple(dst, src, f);
        out.V.add_col_multiple(dst, src, f);
    };

    const std::size_t limit = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < limit; ++t) {
        std::optional<Position> best;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                const Int& v = S(i, j);
                if (v.is_zero()) continue;
                if (!best || abs_less(v, S(best->row, best->col))) best = Position{i, j};
            }
        }
        if (!best) break;
        swap_rows(t, best->row);
        swap_cols(t, best->col);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (S(i, t).is_zero()) continue;
                Int q = floor_div(S(i, t), S(t, t));
                add_row(i, t, -q);
                if (!S(i, t).is_zero()) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (S(t, j).is_zero()) continue;
                Int q = floor_div(S(t, j), S(t, t));
                add_col(j, t, -q);
                if (!S(t, j).is_zero()) clean = false;
            }
            if (!clean) {
                // A nonzero remainder is strictly smaller than the pivot.
                Position p{t, t};
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (!S(i, t).is_zero() && abs_less(S(i, t), S(p.row, p.col))) p = {i, t};
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!S(t, j).is_zero() && abs_less(S(t, j), S(p.row, p.col))) p = {t, j};
                }
                swap_rows(t, p.row);
                swap_cols(t, p.col);
                continue;
            }
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < rows && !offender; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!divides(S(t, t), S(i, j))) {
                        offender = i;
                        break;
                    }
                }
            }
            if (!offender) break;
            add_row(t, *offender, Int(1));
        }
        if (S(t, t).sign() < 0) {
            S.negate_row(t);
            out.U.negate_row(t);
            if (with_inverse) out.U_inv.negate_col(t);
        }
    }
    out.rank = t;
    return out;
}

IntMatrix SparseMatrix::to_dense() const {
    IntMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (const auto& [c, v] : entries[r]) out(r, c) = v;
    return out;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m) {
    SparseMatrix out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.entries.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero()) out.entries[r].emplace_back(c, m(r, c));
    return out;
}

void reduce_vector(std::span<Int> v, std::span<const Int> moduli) {
    for (std::size_t i = 0; i < v.size(); ++i) reduce_mod(v[i], moduli[i]);
}

LatticeBasis::LatticeBasis(std::vector<IntVector> generators, std::vector<Int> moduli) : moduli_(std::move(moduli)) {
    const std::size_t n = moduli_.size();
    std::vector<IntVector> work;
    work.reserve(generators.size() + n);
    for (auto& g : generators) {
        if (g.size() != n) throw InputError("lattice generator has wrong length");
        reduce_vector(g, moduli_);
        if (std::any_of(g.begin(), g.end(), [](const Int& v) { return !v.is_zero(); })) work.push_back(std::move(g));
    }

    // `work` columns are zero in all rows above the current one.
    std::vector<std::size_t> live(work.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;

    std::vector<std::size_t> targets;
    std::vector<Int> factors;
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<std::size_t> cand;
        for (std::size_t idx : live)
            if (!work[idx][row].is_zero()) cand.push_back(idx);
        if (!moduli_[row].is_zero()) {
            IntVector rel(n);
            rel[row] = moduli_[row];
            work.push_back(std::move(rel));
            live.push_back(work.size() - 1);
            cand.push_back(work.size() - 1);
        }
        if (cand.empty()) continue;

        // Euclid across candidates: reduce everything against the smallest.
        // Rows other than `row` are reduced by their moduli; `row` itself is
        // not, since its relation vector already takes part.
        std::vector<Int> row_moduli(moduli_);
        row_moduli[row] = 0;
        std::size_t pivot = cand.front();
        while (true) {
            pivot = cand.front();
            for (std::size_t idx : cand)
                if (abs_less(work[idx][row], work[pivot][row])) pivot = idx;
            if (work[pivot][row].sign() < 0) {
                for (std::size_t r = row; r < n; ++r) work[pivot][r] = -work[pivot][r];
            }
            targets.clear();
            factors.clear();
            for (std::size_t idx : cand) {
                if (idx == pivot) continue;
                targets.push_back(idx);
                factors.push_back(floor_div(work[idx][row], work[pivot][row]));
            }
            if (targets.empty()) break;
            kernels::reduce_columns(work, pivot, targets, factors, row_moduli, row);
            std::vector<std::size_t> next{pivot};
            for (std::size_t idx : targets)
                if (!work[idx][row].is_zero()) next.push_back(idx);
            cand = std::move(next);
            if (cand.size() == 1) break;
        }
        columns_.push_back(std::move(work[pivot]));
        pivots_.push_back(row);
        live.erase(std::remove(live.begin(), live.end(), pivot), live.end());
        // Drop columns that became identically zero.
        live.erase(std::remove_if(live.begin(), live.end(),
                                  [&](std::size_t idx) {
                                      const auto& c = work[idx];
                                      return std::all_of(c.begin() + static_cast<std::ptrdiff_t>(row), c.end(),
                                                         [](const Int& v) { return v.is_zero(); });
                                  }),
                   live.end());
    }

    // Canonical form: reduce entries at later pivot rows into [0, pivot).
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        for (std::size_t l = j + 1; l < columns_.size(); ++l) {
            const Int& piv = columns_[l][pivots_[l]];
            Int q = floor_div(columns_[j][pivots_[l]], piv);
            if (q.is_zero()) continue;
            for (std::size_t r = pivots_[l]; r < n; ++r) {
                if (!columns_[l][r].is_zero()) columns_[j][r] -= q * columns_[l][r];
            }
        }
    }
}

std::optional<IntVector> LatticeBasis::coordinates(std::span<const Int> v) const {
    if (v.size() != dimension()) throw InputError("vector length does not match lattice dimension");
    IntVector rest(v.begin(), v.end());
    IntVector coords(columns_.size());
    std::size_t next_row = 0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const std::size_t p = pivots_[j];
        for (std::size_t r = next_row; r < p; ++r)
            if (!rest[r].is_zero()) return std::nullopt;
        const Int& piv = columns_[j][p];
        if (!divides(piv, rest[p])) return std::nullopt;
        Int c = exact_div(rest[p], piv);
        if (!c.is_zero()) {
            for (std::size_t r = p; r < rest.size(); ++r)
                if (!columns_[j][r].is_zero()) rest[r] -= c * columns_[j][r];
        }
        coords[j] = std::move(c);
        next_row = p + 1;
    }
    for (std::size_t r = next_row; r < rest.size(); ++r)
        if (!rest[r].is_zero()) return std::nullopt;
    return coords;
}

IntVector LatticeBasis::reduce(std::span<const Int> v) const {
    if (v.size() != dimension()) throw InputError("vector length does not match lattice dimension");
    IntVector out(v.begin(), v.end());
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const std::size_t p = pivots_[j];
        Int q = floor_div(out[p], columns_[j][p]);
        if (q.is_zero()) continue;
        for (std::size_t r = p; r < out.size(); ++r)
            if (!columns_[j][r].is_zero()) out[r] -= q * columns_[j][r];
    }
    return out;
}

IntVector LatticeBasis::combine(std::span<const Int> coords) const {
    if (coords.size() != rank()) throw InputError("coordinate count does not match lattice rank");
    IntVector out(dimension());
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (coords[j].is_zero()) continue;
        for (std::size_t r = pivots_[j]; r < out.size(); ++r)
            if (!columns_[j][r].is_zero()) out[r] += coords[j] * columns_[j][r];
    }
    return out;
}

std::vector<IntVector> kernel_generators(const SparseMatrix& m, std::span<const Int> row_moduli,
                                         std::span<const Int> col_moduli) {
    if (row_moduli.size() != m.rows || col_moduli.size() != m.cols) {
        throw InputError("kernel: moduli do not match matrix shape");
    }
    const std::size_t n = m.cols;
    std::vector<IntVector> basis(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        reduce_mod(basis[i][i], col_moduli[i]);
    }
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i)
        if (!basis[i][i].is_zero()) live.push_back(i);

    std::vector<Int> value(n);
    std::vector<std::size_t> targets;
    std::vector<Int> factors;
    for (std::size_t row = 0; row < m.rows; ++row) {
        const auto& entries = m.entries[row];
        if (entries.empty()) continue;
        const Int& mod = row_moduli[row];
        std::vector<std::size_t> cand;
        for (std::size_t idx : live) {
            Int s;
            for (const auto& [c, coeff] : entries) {
                const Int& b = basis[idx][c];
                if (!b.is_zero()) s += coeff * b;
            }
            reduce_mod(s, mod);
            if (!s.is_zero()) cand.push_back(idx);
            value[idx] = std::move(s);
        }
        if (cand.empty()) continue;

        std::size_t pivot = cand.front();
        while (cand.size() > 1) {
            pivot = cand.front();
            for (std::size_t idx : cand)
                if (abs_less(value[idx], value[pivot])) pivot = idx;
            if (value[pivot].sign() < 0) {
                value[pivot] = -value[pivot];
                for (auto& v : basis[pivot]) v = -v;
                reduce_vector(basis[pivot], col_moduli);
            }
            targets.clear();
            factors.clear();
            for (std::size_t idx : cand) {
                if (idx == pivot) continue;
                targets.push_back(idx);
                factors.push_back(floor_div(value[idx], value[pivot]));
            }
            kernels::reduce_columns(basis, pivot, targets, factors, col_moduli, 0);
            std::vector<std::size_t> next{pivot};
            for (std::size_t i = 0; i < targets.size(); ++i) {
                std::size_t idx = targets[i];
                value[idx] -= factors[i] * value[pivot];
                if (!value[idx].is_zero()) next.push_back(idx);
            }
            cand = std::move(next);
        }
        pivot = cand.front();
        if (mod.is_zero()) {
            live.erase(std::remove(live.begin(), live.end(), pivot), live.end());
        } else {
            Int scale = exact_div(mod, gcd(value[pivot], mod));
            if (!scale.is_one()) {
                for (auto& v : basis[pivot]) v *= scale;
                reduce_vector(basis[pivot], col_moduli);
                if (std::all_of(basis[pivot].begin(), basis[pivot].end(), [](const Int& v) { return v.is_zero(); })) {
                    live.erase(std::remove(live.begin(), live.end(), pivot), live.end());
                }
            }
        }
    }
    std::vector<IntVector> out;
    out.reserve(live.size());
    for (std::size_t idx : live) out.push_back(std::move(basis[idx]));
    return out;
}

LatticeSolver::LatticeSolver(const IntMatrix& m, std::vector<Int> moduli)
    : unknowns_(m.cols()), moduli_(std::move(moduli)) {
    if (moduli_.size() != m.rows()) throw InputError("solve: moduli length does not match row count");
    std::size_t extra = 0;
    for (const auto& md : moduli_)
        if (!md.is_zero()) ++extra;
    IntMatrix aug(m.rows(), m.cols() + extra);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    std::size_t col = m.cols();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (moduli_[r].is_zero()) continue;
        aug(r, col++) = moduli_[r];
    }
    smith_ = smith_normal_form(aug);
}

std::optional<IntVector> LatticeSolver::solve(std::span<const Int> b) const {
    if (b.size() != moduli_.size()) throw InputError("solve: right-hand side has wrong length");
    IntVector c = smith_.U * b;
    const std::size_t total = smith_.V.rows();
    IntVector z(total);
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (t < smith_.rank) {
            const Int& s = smith_.S(t, t);
            if (!divides(s, c[t])) return std::nullopt;
            z[t] = exact_div(c[t], s);
        } else if (!c[t].is_zero()) {
            return std::nullopt;
        }
    }
    IntVector full = smith_.V * z;
    full.resize(unknowns_);
    return full;
}

std::optional<IntVector> solve_in_lattice(const IntMatrix& m, std::span<const Int> b, std::span<const Int> moduli) {
    if (b.size() != m.rows() || moduli.size() != m.rows()) {
        throw InputError("solve_in_lattice: dimension mismatch");
    }
    LatticeSolver solver(m, std::vector<Int>(moduli.begin(), moduli.end()));
    return solver.solve(b);
}

}  // namespace tatecup

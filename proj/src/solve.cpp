#include "hptk/solve.hpp"

#include <algorithm>

namespace hptk {

namespace {

int leading_index(const SparseVec& v) { return v.empty() ? -1 : v.begin()->first; }

// Incremental fully-reduced row echelon form. Rows keep distinct leading
// indices with unit leading coefficient and zeros at every other pivot.
struct Rref {
    std::map<int, SparseVec> rows; // leading index -> row

    SparseVec reduce(SparseVec v) const {
        for (const auto& [lead, row] : rows) {
            auto it = v.find(lead);
            if (it == v.end()) continue;
            const Rational c = it->second;
            add_scaled(v, row, -c);
        }
        return v;
    }

    void insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return;
        const int lead = leading_index(v);
        const Rational inv = Rational(1) / v.begin()->second;
        for (auto& [i, c] : v) c *= inv;
        for (auto& [l, row] : rows) {
            auto it = row.find(lead);
            if (it == row.end()) continue;
            const Rational c = it->second;
            add_scaled(row, v, -c);
        }
        rows.emplace(lead, std::move(v));
    }

    std::vector<SparseVec> basis() const {
        std::vector<SparseVec> out;
        out.reserve(rows.size());
        for (const auto& [l, row] : rows) out.push_back(row);
        return out;
    }
};

} // namespace

std::vector<SparseVec> echelon_basis(const std::vector<SparseVec>& family) {
    Rref r;
    for (const auto& v : family) r.insert(v);
    return r.basis();
}

std::vector<SparseVec> echelon_complement(const std::vector<SparseVec>& family,
                                          const std::vector<SparseVec>& modulo) {
    Rref r;
    for (const auto& v : modulo) r.insert(v);
    std::vector<int> modulo_leads;
    for (const auto& [l, row] : r.rows) modulo_leads.push_back(l);
    for (const auto& v : family) r.insert(v);
    std::vector<SparseVec> out;
    for (const auto& [l, row] : r.rows)
        if (!std::binary_search(modulo_leads.begin(), modulo_leads.end(), l)) out.push_back(row);
    return out;
}

ExactSolver::ExactSolver(int rows, std::vector<SparseVec> columns)
    : rows_(rows), cols_(static_cast<int>(columns.size())) {
    // Row-reduce [A | I]: work rows are matrix rows of A, tags record the
    // elimination so preimages can be read off later.
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows_),
                                         std::vector<Rational>(static_cast<std::size_t>(cols_), Rational(0)));
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, c] : columns[static_cast<std::size_t>(j)])
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    std::vector<std::vector<Rational>> e(static_cast<std::size_t>(rows_),
                                         std::vector<Rational>(static_cast<std::size_t>(rows_), Rational(0)));
    for (int i = 0; i < rows_; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int sel = -1;
        for (int k = r; k < rows_; ++k)
            if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] != 0) { sel = k; break; }
        if (sel < 0) continue;
        std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(sel)]);
        std::swap(e[static_cast<std::size_t>(r)], e[static_cast<std::size_t>(sel)]);
        const Rational inv = Rational(1) / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (auto& x : a[static_cast<std::size_t>(r)]) x *= inv;
        for (auto& x : e[static_cast<std::size_t>(r)]) x *= inv;
        for (int k = 0; k < rows_; ++k) {
            if (k == r) continue;
            const Rational f = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols_; ++j)
                a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            for (int j = 0; j < rows_; ++j)
                e[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] -= f * e[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivot_cols_.push_back(c);
        pivot_col_of_row_.push_back(c);
        ++r;
    }
    rank_ = r;
    for (int k = 0; k < rank_; ++k) {
        reduced_.push_back(a[static_cast<std::size_t>(k)]);
        elim_.push_back(e[static_cast<std::size_t>(k)]);
    }
    for (int k = rank_; k < rows_; ++k) zero_elim_.push_back(e[static_cast<std::size_t>(k)]);

    // Kernel in source coordinates, reduced echelon by construction.
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
    for (int c : pivot_cols_) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int j = 0; j < cols_; ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        SparseVec k;
        k.emplace(j, 1);
        for (int rr = 0; rr < rank_; ++rr) {
            const Rational& c = reduced_[static_cast<std::size_t>(rr)][static_cast<std::size_t>(j)];
            if (c != 0) k[pivot_col_of_row_[static_cast<std::size_t>(rr)]] = -c;
        }
        kernel_.push_back(std::move(k));
    }

    image_ = echelon_basis(columns);
}

std::optional<SparseVec> ExactSolver::preimage(const SparseVec& target) const {
    std::vector<Rational> t(static_cast<std::size_t>(rows_), Rational(0));
    for (const auto& [i, c] : target) {
        if (i < 0 || i >= rows_) return std::nullopt;
        t[static_cast<std::size_t>(i)] = c;
    }
    for (const auto& z : zero_elim_) {
        Rational s = 0;
        for (int i = 0; i < rows_; ++i)
            if (z[static_cast<std::size_t>(i)] != 0) s += z[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
        if (s != 0) return std::nullopt;
    }
    SparseVec x;
    for (int r = 0; r < rank_; ++r) {
        Rational s = 0;
        for (int i = 0; i < rows_; ++i)
            if (elim_[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] != 0)
                s += elim_[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
        if (s != 0) x.emplace(pivot_col_of_row_[static_cast<std::size_t>(r)], s);
    }
    return x;
}

} // namespace hptk

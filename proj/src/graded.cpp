#include "hptk/graded.hpp"

#include "hptk/error.hpp"

#include <sstream>

namespace hptk {

void add_scaled(SparseVec& dst, const SparseVec& src, const Rational& c) {
    if (c == 0) return;
    for (const auto& [i, v] : src) {
        Rational& slot = dst[i];
        slot += v * c;
        if (slot == 0) dst.erase(i);
    }
}

SparseVec scaled(const SparseVec& v, const Rational& c) {
    SparseVec out;
    if (c == 0) return out;
    for (const auto& [i, x] : v) out.emplace(i, x * c);
    return out;
}

bool is_zero(const SparseVec& v) { return v.empty(); }

Rational coeff(const SparseVec& v, int i) {
    auto it = v.find(i);
    return it == v.end() ? Rational(0) : it->second;
}

int GradedSpace::index_of(const std::string& symbol) const {
    for (int i = 0; i < dim(); ++i)
        if (basis[i].symbol == symbol) return i;
    return -1;
}

std::vector<int> GradedSpace::indices_of_degree(int n) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (basis[i].degree == n) out.push_back(i);
    return out;
}

std::vector<int> GradedSpace::degrees() const {
    std::vector<int> out;
    out.reserve(basis.size());
    for (const auto& b : basis) out.push_back(b.degree);
    return out;
}

int koszul_sign(const std::vector<int>& left_degrees, const std::vector<int>& right_degrees) {
    long long l = 0, r = 0;
    for (int d : left_degrees) l += d;
    for (int d : right_degrees) r += d;
    return koszul_sign(static_cast<int>(l & 1), static_cast<int>(r & 1));
}

GradedSpace shift(const GradedSpace& space, int amount) {
    if (amount != 1 && amount != -1) fail_parse("shift amount must be +1 or -1");
    GradedSpace out = space;
    for (auto& b : out.basis) b.degree -= amount;
    return out;
}

GradedSpace dual(const GradedSpace& space) {
    GradedSpace out;
    out.basis.reserve(space.basis.size());
    for (const auto& b : space.basis) out.basis.push_back({b.symbol + "^t", -b.degree});
    return out;
}

SparseVec GradedMap::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [j, c] : v) {
        auto it = cols.find(j);
        if (it != cols.end()) add_scaled(out, it->second, c);
    }
    return out;
}

SparseVec GradedMap::column(int j) const {
    auto it = cols.find(j);
    return it == cols.end() ? SparseVec{} : it->second;
}

void GradedMap::set(int j, int i, const Rational& c) {
    if (c == 0) {
        auto it = cols.find(j);
        if (it != cols.end()) {
            it->second.erase(i);
            if (it->second.empty()) cols.erase(it);
        }
        return;
    }
    cols[j][i] = c;
}

GradedMap zero_map(const GradedSpace& src, const GradedSpace& tgt, int degree) {
    GradedMap f;
    f.src_degrees = src.degrees();
    f.tgt_degrees = tgt.degrees();
    f.degree = degree;
    return f;
}

GradedMap identity_map(const GradedSpace& space) {
    GradedMap f = zero_map(space, space, 0);
    for (int i = 0; i < space.dim(); ++i) f.set(i, i, 1);
    return f;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    GradedMap out;
    out.src_degrees = g.src_degrees;
    out.tgt_degrees = f.tgt_degrees;
    out.degree = f.degree + g.degree;
    for (const auto& [j, col] : g.cols) {
        SparseVec img = f.apply(col);
        if (!img.empty()) out.cols.emplace(j, std::move(img));
    }
    return out;
}

GradedMap add(const GradedMap& f, const GradedMap& g) {
    GradedMap out = f;
    for (const auto& [j, col] : g.cols) {
        SparseVec merged = out.column(j);
        add_scaled(merged, col, 1);
        if (merged.empty())
            out.cols.erase(j);
        else
            out.cols[j] = std::move(merged);
    }
    return out;
}

GradedMap scale(const GradedMap& f, const Rational& c) {
    GradedMap out = f;
    if (c == 0) {
        out.cols.clear();
        return out;
    }
    for (auto& [j, col] : out.cols)
        for (auto& [i, v] : col) v *= c;
    return out;
}

bool map_is_zero(const GradedMap& f) {
    for (const auto& [j, col] : f.cols)
        if (!col.empty()) return false;
    return true;
}

bool degree_consistent(const GradedMap& f) {
    for (const auto& [j, col] : f.cols) {
        if (j < 0 || j >= static_cast<int>(f.src_degrees.size())) return false;
        for (const auto& [i, c] : col) {
            (void)c;
            if (i < 0 || i >= static_cast<int>(f.tgt_degrees.size())) return false;
            if (f.tgt_degrees[i] != f.src_degrees[j] + f.degree) return false;
        }
    }
    return true;
}

std::optional<Rational> parse_rational_canonical(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t k = (s[0] == '-') ? 1 : 0;
        if (k == s.size()) return false;
        if (s[k] == '0' && s.size() > k + 1) return false; // no leading zeros
        for (; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Rational(BigInt(text));
        }
        const std::string p = text.substr(0, slash);
        const std::string q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q) || q.empty() || q[0] == '-') return std::nullopt;
        BigInt num(p), den(q);
        if (den < 2) return std::nullopt; // "p/1" is not canonical, "p/0" invalid
        if (gcd(abs(num), den) != 1) return std::nullopt;
        return Rational(num, den);
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace hptk

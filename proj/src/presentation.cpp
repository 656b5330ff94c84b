#include "hptk/presentation.hpp"

#include "hptk/error.hpp"

#include <sstream>

namespace hptk {

SparseVec AlgebraPresentation::mul(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) add_scaled(out, mul(i, j), ca * cb);
    return out;
}

SparseVec AlgebraPresentation::diff(const SparseVec& a) const {
    return differential ? differential->apply(a) : SparseVec{};
}

SparseVec AlgebraPresentation::bracket_of(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    if (!bracket) return out;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) add_scaled(out, bracket->at(i, j), ca * cb);
    return out;
}

SparseVec AlgebraPresentation::bv(const SparseVec& a) const {
    return bv_operator ? bv_operator->apply(a) : SparseVec{};
}

void AlgebraPresentation::validate_structure() const {
    for (int i = 0; i < space.dim(); ++i)
        for (int j = i + 1; j < space.dim(); ++j)
            if (space.symbol(i) == space.symbol(j)) fail_parse("duplicate basis symbol '" + space.symbol(i) + "'");
    for (const auto& [key, v] : product) {
        const auto [i, j] = key;
        const int want = space.degree(i) + space.degree(j);
        for (const auto& [k, c] : v) {
            (void)c;
            if (space.degree(k) != want)
                fail_parse("degree mismatch in product " + space.symbol(i) + " * " + space.symbol(j));
        }
    }
    if (differential) {
        if (differential->degree != 1) fail_parse("differential must have degree +1");
        if (!degree_consistent(*differential)) fail_parse("degree mismatch in differential");
    }
    if (bracket) {
        if (bracket->shift != 0 && bracket->shift != -1) fail_parse("bracket shift must be 0 or -1");
        // shift 0: degree 0 exactly; shift -1: one common odd degree (the
        // bracket lives on a suspension, so only the parity is pinned)
        std::optional<int> shifted_degree;
        for (const auto& [key, v] : bracket->entries) {
            const auto [i, j] = key;
            for (const auto& [k, c] : v) {
                (void)c;
                const int deg = space.degree(k) - space.degree(i) - space.degree(j);
                if (bracket->shift == 0) {
                    if (deg != 0)
                        fail_parse("degree mismatch in bracket " + space.symbol(i) + " , " +
                                   space.symbol(j));
                } else {
                    if (deg % 2 == 0)
                        fail_parse("shift -1 bracket must have odd degree at " + space.symbol(i) +
                                   " , " + space.symbol(j));
                    if (shifted_degree && *shifted_degree != deg)
                        fail_parse("shift -1 bracket entries have mixed degrees");
                    shifted_degree = deg;
                }
            }
        }
    }
    if (bv_operator && !degree_consistent(*bv_operator)) fail_parse("degree mismatch in bv operator");
    if (unit && (*unit < 0 || *unit >= space.dim())) fail_parse("unit symbol not declared");
}

std::string format_element(const GradedSpace& space, const SparseVec& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        if (!first) os << " ";
        os << to_string(c) << " " << space.symbol(i);
        first = false;
    }
    return os.str();
}

} // namespace hptk

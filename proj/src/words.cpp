#include "hptk/words.hpp"

#include "hptk/error.hpp"

#include <algorithm>
#include <numeric>

namespace hptk {

std::optional<SignedWord> canonicalize_word(Flavor flavor, std::vector<int> factors,
                                            const std::vector<int>& gen_degrees) {
    SignedWord out;
    if (flavor == Flavor::Tensor) {
        out.factors = std::move(factors);
        return out;
    }
    // Stable insertion sort by generator index; each adjacent swap of factors
    // with degrees d1, d2 contributes (-1)^{d1 d2}.
    int sign = 1;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && factors[j - 1] > factors[j]) {
            const int d1 = gen_degrees[static_cast<std::size_t>(factors[j - 1])];
            const int d2 = gen_degrees[static_cast<std::size_t>(factors[j])];
            if ((d1 & 1) && (d2 & 1)) sign = -sign;
            std::swap(factors[j - 1], factors[j]);
            --j;
        }
    }
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] == factors[i - 1] && (gen_degrees[static_cast<std::size_t>(factors[i])] & 1))
            return std::nullopt;
    out.factors = std::move(factors);
    out.sign = sign;
    return out;
}

WordIndex::WordIndex(Flavor flavor, std::vector<int> gen_degrees, int max_length,
                     std::vector<int> gen_weights, long long max_weight, std::size_t cap)
    : flavor_(flavor),
      gen_degrees_(std::move(gen_degrees)),
      gen_weights_(std::move(gen_weights)),
      max_length_(max_length),
      max_weight_(max_weight) {
    if (max_length_ < 0) fail_parse("word length bound must be >= 0");
    if (gen_weights_.empty()) gen_weights_.assign(gen_degrees_.size(), 0);
    by_length_.resize(static_cast<std::size_t>(max_length_) + 1);

    auto push = [&](std::vector<int> w) {
        long long wt = 0;
        int deg = 0;
        for (int g : w) {
            wt += gen_weights_[static_cast<std::size_t>(g)];
            deg += gen_degrees_[static_cast<std::size_t>(g)];
        }
        if (max_weight_ >= 0 && wt > max_weight_) return;
        if (words_.size() + 1 > cap)
            fail_verify("word enumeration exceeds the configured resource cap");
        const int id = static_cast<int>(words_.size());
        by_length_[w.size()].push_back(id);
        id_of_.emplace(w, id);
        degrees_.push_back(deg);
        weights_.push_back(wt);
        words_.push_back(std::move(w));
    };

    push({}); // empty word, id 0
    const int g = generator_count();
    std::vector<int> prev_start{0};       // index into words_ of first word of previous length
    for (int len = 1; len <= max_length_; ++len) {
        const std::vector<int> prev = by_length_[static_cast<std::size_t>(len - 1)];
        for (int id : prev) {
            const std::vector<int> base = words_[static_cast<std::size_t>(id)];
            const int lo = (flavor_ == Flavor::Symmetric && !base.empty()) ? base.back() : 0;
            for (int k = lo; k < g; ++k) {
                std::vector<int> w = base;
                w.push_back(k);
                if (flavor_ == Flavor::Symmetric && !w.empty()) {
                    // repeated odd-degree factor is zero and not enumerated
                    if (w.size() >= 2 && w[w.size() - 2] == k && (gen_degrees_[static_cast<std::size_t>(k)] & 1))
                        continue;
                }
                push(std::move(w));
            }
        }
    }
}

std::optional<std::pair<int, int>> WordIndex::find(const std::vector<int>& factors) const {
    if (static_cast<int>(factors.size()) > max_length_) return std::nullopt;
    auto canon = canonicalize_word(flavor_, factors, gen_degrees_);
    if (!canon) return std::nullopt;
    auto it = id_of_.find(canon->factors);
    if (it == id_of_.end()) return std::nullopt; // weight-truncated
    return std::make_pair(it->second, canon->sign);
}

std::optional<std::pair<int, int>> WordIndex::concat(int a, int b) const {
    std::vector<int> w = words_[static_cast<std::size_t>(a)];
    const auto& wb = words_[static_cast<std::size_t>(b)];
    w.insert(w.end(), wb.begin(), wb.end());
    return find(w);
}

std::vector<Unshuffle> unshuffles(int k, int n) {
    std::vector<Unshuffle> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Unshuffle u;
        u.perm.reserve(static_cast<std::size_t>(n));
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (int p : pick) {
            u.perm.push_back(p);
            used[static_cast<std::size_t>(p)] = true;
        }
        for (int i = 0; i < n; ++i)
            if (!used[static_cast<std::size_t>(i)]) u.perm.push_back(i);
        int inv = 0;
        for (std::size_t i = 0; i < u.perm.size(); ++i)
            for (std::size_t j = i + 1; j < u.perm.size(); ++j)
                if (u.perm[i] > u.perm[j]) ++inv;
        u.sign = (inv % 2 == 0) ? 1 : -1;
        out.push_back(std::move(u));
        // next k-combination
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

int koszul_permutation_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (degrees[static_cast<std::size_t>(perm[i])] & 1) &&
                (degrees[static_cast<std::size_t>(perm[j])] & 1))
                sign = -sign;
    return sign;
}

} // namespace hptk

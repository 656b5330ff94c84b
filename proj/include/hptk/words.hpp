#pragma once

#include "hptk/graded.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hptk {

enum class Flavor { Tensor, Symmetric };

// A word together with the Koszul sign produced by canonicalization.
struct SignedWord {
    std::vector<int> factors;
    int sign = 1; // +1 or -1
};

// Sorts symmetric words by generator index, accumulating the Koszul sign of
// the sorting permutation in the generators' stored degrees. Words with a
// repeated factor of odd degree are zero (nullopt). Tensor words pass through.
std::optional<SignedWord> canonicalize_word(Flavor flavor, std::vector<int> factors,
                                            const std::vector<int>& gen_degrees);

// Enumerates all canonical words over a generator set up to a length bound
// (and an optional filtration-weight bound), interning them with stable ids.
// Id 0 is the empty word; enumeration is length-major then lexicographic.
class WordIndex {
public:
    WordIndex(Flavor flavor, std::vector<int> gen_degrees, int max_length,
              std::vector<int> gen_weights = {}, long long max_weight = -1,
              std::size_t cap = 10'000'000);

    Flavor flavor() const { return flavor_; }
    int max_length() const { return max_length_; }
    long long max_weight() const { return max_weight_; }
    int generator_count() const { return static_cast<int>(gen_degrees_.size()); }
    const std::vector<int>& gen_degrees() const { return gen_degrees_; }
    const std::vector<int>& gen_weights() const { return gen_weights_; }

    std::size_t size() const { return words_.size(); }
    const std::vector<int>& factors(int id) const { return words_[static_cast<std::size_t>(id)]; }
    int length(int id) const { return static_cast<int>(words_[static_cast<std::size_t>(id)].size()); }
    int degree(int id) const { return degrees_[static_cast<std::size_t>(id)]; }
    long long weight(int id) const { return weights_[static_cast<std::size_t>(id)]; }

    // Canonicalizes and looks up; nullopt when the word is zero or truncated
    // away by the length/weight bounds.
    std::optional<std::pair<int, int>> find(const std::vector<int>& factors) const;

    // Word concatenation (tensor) / merge (symmetric, re-sorted with sign).
    std::optional<std::pair<int, int>> concat(int a, int b) const;

    // Ids of all words of the given length, in enumeration order.
    const std::vector<int>& ids_of_length(int n) const { return by_length_[static_cast<std::size_t>(n)]; }

private:
    Flavor flavor_;
    std::vector<int> gen_degrees_;
    std::vector<int> gen_weights_;
    int max_length_;
    long long max_weight_;
    std::vector<std::vector<int>> words_;
    std::vector<int> degrees_;
    std::vector<long long> weights_;
    std::vector<std::vector<int>> by_length_;
    std::map<std::vector<int>, int> id_of_;
};

// All (k, n)-unshuffles: permutations sigma of {0..n-1} (0-based) with
// sigma(0..k-1) and sigma(k..n-1) increasing, each with sgn(sigma).
struct Unshuffle {
    std::vector<int> perm;
    int sign = 1;
};
std::vector<Unshuffle> unshuffles(int k, int n);

// Koszul sign of permuting a list of graded symbols into perm order:
// result[i] = input[perm[i]].
int koszul_permutation_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

} // namespace hptk

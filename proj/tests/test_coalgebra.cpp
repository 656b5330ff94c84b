#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hptk/coalgebra.hpp"
#include "hptk/error.hpp"

#include "helpers.hpp"

#include <random>

using namespace hptk;

namespace {

// Random degree-homogeneous structure maps m_k of degree 2-k on a random
// small graded space (deterministic seed).
struct RandomAInfty {
    std::mt19937_64 rng;
    explicit RandomAInfty(unsigned seed) : rng(seed) {}

    Rational coin() {
        std::uniform_int_distribution<int> d(-2, 2);
        return Rational(d(rng));
    }

    AInftyStructure make(int dim, int arity) {
        AInftyStructure m;
        std::uniform_int_distribution<int> degd(0, 2);
        for (int i = 0; i < dim; ++i)
            m.space.basis.push_back({"v" + std::to_string(i), degd(rng)});
        m.arity_bound = arity;
        m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, m.space.degrees(), arity);
        for (int k = 1; k <= arity; ++k) {
            for (int id : m.vwords->ids_of_length(k)) {
                const int want = m.vwords->degree(id) + 2 - k;
                SparseVec val;
                for (int t = 0; t < dim; ++t)
                    if (m.space.degree(t) == want) {
                        Rational c = coin();
                        if (c != 0) val.emplace(t, c);
                    }
                if (!val.empty()) m.maps[k][id] = std::move(val);
            }
        }
        return m;
    }

    LInftyStructure make_l(int dim, int arity) {
        LInftyStructure l;
        std::uniform_int_distribution<int> degd(0, 2);
        for (int i = 0; i < dim; ++i)
            l.space.basis.push_back({"v" + std::to_string(i), degd(rng)});
        l.arity_bound = arity;
        std::vector<int> shifted;
        for (int d : l.space.degrees()) shifted.push_back(d - 1);
        l.swords = std::make_shared<WordIndex>(Flavor::Symmetric, shifted, arity);
        for (int k = 1; k <= arity; ++k) {
            for (int id : l.swords->ids_of_length(k)) {
                int wdeg = 0;
                for (int g : l.swords->factors(id)) wdeg += l.space.degree(g);
                const int want = wdeg + 2 - k;
                SparseVec val;
                for (int t = 0; t < dim; ++t)
                    if (l.space.degree(t) == want) {
                        Rational c = coin();
                        if (c != 0) val.emplace(t, c);
                    }
                if (!val.empty()) l.maps[k][id] = std::move(val);
            }
        }
        return l;
    }
};

AInftyStructure dga_as_ainfty(const AlgebraPresentation& p, int arity) {
    AInftyStructure m;
    m.space = p.space;
    m.arity_bound = arity;
    m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, p.space.degrees(), arity);
    for (int id : m.vwords->ids_of_length(1)) {
        SparseVec d = p.diff(SparseVec{{m.vwords->factors(id)[0], 1}});
        if (!d.empty()) m.maps[1][id] = std::move(d);
    }
    for (int id : m.vwords->ids_of_length(2)) {
        const auto& f = m.vwords->factors(id);
        SparseVec v = p.mul(f[0], f[1]);
        if (!v.empty()) m.maps[2][id] = std::move(v);
    }
    return m;
}

} // namespace

TEST_CASE("extend_coderivation") {
    // L_[1] only: Leibniz-style two-term sum on a 2-word
    Coderivation c;
    c.flavor = Flavor::Tensor;
    c.w_degrees = {0, 1};
    c.degree = 1;
    c.arity_bound = 3;
    c.words = std::make_shared<WordIndex>(Flavor::Tensor, c.w_degrees, 3);
    // L_[1](w0) = w1
    c.L[1][c.words->find({0})->first] = SparseVec{{1, 1}};
    const int w00 = c.words->find({0, 0})->first;
    auto ext = extend_coderivation(c, w00);
    // L(w0 w0) = (L w0) w0 + (-1)^{|L||w0|} w0 (L w0) = w1 w0 + w0 w1
    CHECK(ext.at(c.words->find({1, 0})->first) == 1);
    CHECK(ext.at(c.words->find({0, 1})->first) == 1);

    // empty word: zero (L(1) = 0)
    CHECK(extend_coderivation(c, c.words->find(std::vector<int>{})->first).empty());
}

TEST_CASE("extend_coderivation with a binary corestriction on a 3-word") {
    // W = span{x, y} with degrees 0 (desuspended degree-1 elements);
    // L_[2](x, x) = y models an interior product.
    Coderivation c;
    c.flavor = Flavor::Tensor;
    c.w_degrees = {0, 0};
    c.degree = 1;
    c.arity_bound = 3;
    c.words = std::make_shared<WordIndex>(Flavor::Tensor, c.w_degrees, 3);
    c.L[2][c.words->find({0, 0})->first] = SparseVec{{1, 1}};
    // L(x x y): two interior contractions, signs (+1, -1)^{|L| * prefix}
    auto ext = extend_coderivation(c, c.words->find({0, 0, 1})->first);
    // positions: L2(x,x) at start -> (y, y-word) ... only (0,0) block matches
    CHECK(ext.at(c.words->find({1, 1})->first) == 1);
    CHECK(ext.size() == 1);
}

TEST_CASE("both interior contractions appear with Koszul signs") {
    // odd generator: the two placements of L_[2] carry opposite signs
    Coderivation c;
    c.flavor = Flavor::Tensor;
    c.w_degrees = {1};
    c.degree = 1;
    c.arity_bound = 3;
    c.words = std::make_shared<WordIndex>(Flavor::Tensor, c.w_degrees, 3);
    c.L[2][c.words->find({0, 0})->first] = SparseVec{{0, 1}};
    auto odd = extend_coderivation(c, c.words->find({0, 0, 0})->first);
    CHECK(odd.empty()); // (+1) + (-1)^{|L||w|} = 0

    // even generator: both contractions add up
    Coderivation e;
    e.flavor = Flavor::Tensor;
    e.w_degrees = {0};
    e.degree = 1;
    e.arity_bound = 3;
    e.words = std::make_shared<WordIndex>(Flavor::Tensor, e.w_degrees, 3);
    e.L[2][e.words->find({0, 0})->first] = SparseVec{{0, 1}};
    auto even = extend_coderivation(e, e.words->find({0, 0, 0})->first);
    CHECK(even.at(e.words->find({0, 0})->first) == 2);
}

TEST_CASE("coderivation_square is zero iff the DGA laws hold") {
    AlgebraPresentation p = model("h3ce");
    AInftyStructure m = dga_as_ainfty(p, 4);
    Coderivation b = ainfty_to_codifferential(m);
    Coderivation sq = coderivation_square(b); // internal two-route assert
    for (const auto& [k, fam] : sq.L) {
        (void)k;
        CHECK(fam.empty());
    }

    // breaking Leibniz makes the square nonzero
    AlgebraPresentation q = p;
    q.differential->set(q.space.index_of("ac"), q.space.index_of("abc"), 1);
    Coderivation bq = ainfty_to_codifferential(dga_as_ainfty(q, 4));
    Coderivation sq2 = coderivation_square(bq);
    bool nonzero = false;
    for (const auto& [k, fam] : sq2.L)
        if (!fam.empty()) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("stasheff check on corpus DGAs and the biconditional on random structures") {
    AlgebraPresentation p = model("h3ce");
    IdentityCheck ids = check_stasheff(dga_as_ainfty(p, 4));
    CHECK(ids.report.all_pass());
    CHECK(ids.routes_agree);

    RandomAInfty rnd(20240809);
    int passes = 0, fails = 0;
    for (int trial = 0; trial < 120; ++trial) {
        AInftyStructure m = rnd.make(1 + trial % 3, 3);
        IdentityCheck check = check_stasheff(m);
        CHECK(check.routes_agree);
        if (check.report.all_pass())
            ++passes;
        else
            ++fails;
    }
    CHECK(passes > 0); // zero maps and degree-starved cases pass
    CHECK(fails > 0);  // generic random maps violate the identities
}

TEST_CASE("linfty check biconditional on random structures") {
    RandomAInfty rnd(977);
    int passes = 0, fails = 0;
    for (int trial = 0; trial < 120; ++trial) {
        LInftyStructure l = rnd.make_l(1 + trial % 3, 3);
        IdentityCheck check = check_linfty(l);
        CHECK(check.routes_agree);
        if (check.report.all_pass())
            ++passes;
        else
            ++fails;
    }
    CHECK(passes > 0);
    CHECK(fails > 0);
}

TEST_CASE("a DGLA as an L-infinity structure passes the generalized Jacobi check") {
    // Heisenberg Lie algebra in degree 0 with l_2 = bracket
    LInftyStructure l;
    l.space.basis = {{"e1", 0}, {"e2", 0}, {"e3", 0}};
    l.arity_bound = 3;
    std::vector<int> shifted = {-1, -1, -1};
    l.swords = std::make_shared<WordIndex>(Flavor::Symmetric, shifted, 3);
    l.maps[2][l.swords->find({0, 1})->first] = SparseVec{{2, 1}};
    IdentityCheck ids = check_linfty(l);
    CHECK(ids.report.all_pass());
    CHECK(ids.routes_agree);
}

TEST_CASE("ainfty dictionary") {
    // all maps zero -> zero codifferential
    AInftyStructure zero;
    zero.space.basis = {{"v", 1}};
    zero.arity_bound = 3;
    zero.vwords = std::make_shared<WordIndex>(Flavor::Tensor, zero.space.degrees(), 3);
    Coderivation bz = ainfty_to_codifferential(zero);
    CHECK(bz.L.empty());

    // an m3 violating the n = 3 identity with m1 = m2 = 0 never squares to zero:
    // with only m3 present the identity at n = 3 is vacuous, so build the
    // violation at n = 5 via m3 o m3 instead; brute-force over a 2-dim space.
    AInftyStructure m;
    m.space.basis = {{"u", 1}, {"w", 0}};
    m.arity_bound = 5;
    m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, m.space.degrees(), 5);
    // m3(u,u,u) = w (degree: 3*1 + 2 - 3 = 2 ... pick degrees to match: use w deg 2)
    m.space.basis[1].degree = 2;
    m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, m.space.degrees(), 5);
    m.maps[3][m.vwords->find({0, 0, 0})->first] = SparseVec{{1, 1}};
    // m3(w,u,u) = u would need degree 2+1+1+2-3 = 3 != 1, so instead check
    // the identity family is still consistent between the two routes.
    IdentityCheck ids = check_stasheff(m);
    CHECK(ids.routes_agree);
}

TEST_CASE("dualize round-trips exactly on random derivations (both flavors)") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> degd(-1, 2);
    std::uniform_int_distribution<int> coin(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        const Flavor flavor = (trial % 2 == 0) ? Flavor::Tensor : Flavor::Symmetric;
        const int dim = 1 + trial % 3;
        GeneratorDerivation d;
        d.flavor = flavor;
        for (int i = 0; i < dim; ++i) d.gen_degrees.push_back(degd(rng));
        d.degree = 1;
        d.words = std::make_shared<WordIndex>(flavor, d.gen_degrees, 3);
        d.images.assign(static_cast<std::size_t>(dim), {});
        for (int g = 0; g < dim; ++g)
            for (int len = 1; len <= 3; ++len)
                for (int id : d.words->ids_of_length(len)) {
                    const Rational c(coin(rng));
                    if (c != 0 && coin(rng) > 0) d.images[static_cast<std::size_t>(g)][id] = c;
                }
        Coderivation b = dualize(d);
        GeneratorDerivation back = dualize_back(b, dim);
        CHECK(back.gen_degrees == d.gen_degrees);
        for (int g = 0; g < dim; ++g) {
            // compare modulo canonicalization: transport all entries through find()
            std::map<int, Rational> want;
            for (const auto& [w, c] : d.images[static_cast<std::size_t>(g)]) {
                auto f = d.words->find(d.words->factors(w));
                REQUIRE(f.has_value());
                want[f->first] += c * f->second;
                if (want[f->first] == 0) want.erase(f->first);
            }
            CHECK(back.images[static_cast<std::size_t>(g)] == want);
        }
    }
}

TEST_CASE("symmetric corestrictions are permutation invariant with sign") {
    // dualize of a symmetric derivation produces corestrictions that are
    // invariant under argument transpositions up to the Koszul sign
    GeneratorDerivation d;
    d.flavor = Flavor::Symmetric;
    d.gen_degrees = {1, 0};
    d.degree = 1;
    d.words = std::make_shared<WordIndex>(Flavor::Symmetric, d.gen_degrees, 2);
    d.images.assign(2, {});
    d.images[0][d.words->find({0, 1})->first] = Rational(3);
    Coderivation b = dualize(d);
    SparseVec v01 = b.corestriction({0, 1});
    SparseVec v10 = b.corestriction({1, 0});
    // degrees of W are -1 and 0: swapping an odd/even pair costs nothing
    CHECK(v01 == v10);
}

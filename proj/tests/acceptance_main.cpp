// Acceptance suite: one line per criterion, all equalities exact.
#include "hptk/corpus.hpp"
#include "hptk/document.hpp"
#include "hptk/drivers.hpp"
#include "hptk/error.hpp"
#include "hptk/perturb.hpp"
#include "hptk/validators.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace hptk;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void criterion(int number, const std::string& label, bool pass) {
    std::cout << "criterion " << number << " " << (pass ? "PASS" : "FAIL") << " - " << label
              << std::endl;
    if (!pass) ++failures;
}

AlgebraPresentation corpus_model(const std::string& name) {
    return parse_document(corpus_document(name)).presentation;
}

bool run(const std::string& label, int number, bool (*fn)()) {
    try {
        const bool ok = fn();
        criterion(number, label, ok);
        return ok;
    } catch (const std::exception& e) {
        std::cout << "criterion " << number << " exception: " << e.what() << std::endl;
        criterion(number, label, false);
        return false;
    }
}

// 1. all five models validate; five injected single-entry defects are
// detected with correct witnesses; runtime < 5 s.
bool c1() {
    Timer t;
    bool ok = true;
    for (const auto& name : corpus_names())
        ok = ok && run_validate(corpus_document(name)).exit_code == 0;

    auto fails_with_witness = [](const AlgebraPresentation& p, auto checker,
                                 const std::vector<std::string>& witness,
                                 const std::string& lawname) {
        StructureReport rep = checker(p);
        for (const auto& l : rep.laws)
            if (l.law == lawname && !l.pass && l.witness == witness) return true;
        return false;
    };

    // T2: corrupt the unit row at x
    {
        AlgebraPresentation p = corpus_model("t2");
        p.product[{p.space.index_of("one"), p.space.index_of("x")}] =
            SparseVec{{p.space.index_of("x"), 2}};
        ok = ok && fails_with_witness(p, check_dga, {"x"}, "unit");
    }
    // D2: corrupt d so that d^2 != 0
    {
        AlgebraPresentation p = corpus_model("d2");
        p.space.basis.push_back({"z", 3});
        p.differential->src_degrees = p.space.degrees();
        p.differential->tgt_degrees = p.space.degrees();
        p.differential->set(p.space.index_of("y"), p.space.index_of("z"), 1);
        StructureReport rep = check_dga(p);
        ok = ok && fails_with_witness(p, check_dga, {"x"}, "d_squared");
        (void)rep;
    }
    // H3CE: corrupt the Leibniz sign of d(ac)
    {
        AlgebraPresentation p = corpus_model("h3ce");
        p.differential->set(p.space.index_of("ac"), p.space.index_of("abc"), 1);
        ok = ok && fails_with_witness(p, check_dga, {"a", "c"}, "leibniz");
    }
    // H3GBV: corrupt Delta so the bracket Leibniz fails
    {
        AlgebraPresentation p = corpus_model("h3gbv");
        p.bv_operator->set(p.space.index_of("e1e3"), p.space.index_of("e3"), 1);
        StructureReport rep = check_gbv(p);
        bool found = false;
        for (const auto& l : rep.laws)
            if (!l.pass && !l.witness.empty()) found = true;
        ok = ok && found;
    }
    // MAT2: corrupt one bracket entry; Jacobi or Leibniz must fail with witness
    {
        AlgebraPresentation p = corpus_model("mat2");
        p.bracket->entries[{p.space.index_of("m12"), p.space.index_of("m21")}] =
            SparseVec{{p.space.index_of("m11"), 1}};
        StructureReport rep = check_poisson(p);
        bool found = false;
        for (const auto& l : rep.laws)
            if (!l.pass && !l.witness.empty()) found = true;
        ok = ok && found;
    }
    ok = ok && t.seconds() < 5.0;
    return ok;
}

// 2. splittings match Betti numbers on every model under both routes;
// make_sdr passes verify_sdr; for H3CE, Betti = (1,2,2,1) and Q(ab) = c.
bool c2() {
    bool ok = true;
    for (const auto& name : corpus_names()) {
        AlgebraPresentation p = corpus_model(name);
        CohomologyData h = cohomology(p);
        for (const Splitting& s :
             {compute_splitting(p), hodge_splitting(p, GramSpec{}).first}) {
            std::map<int, int> rank;
            for (int i = 0; i < s.h_space.dim(); ++i) rank[s.h_space.degree(i)]++;
            for (const auto& [deg, dim] : h.betti) ok = ok && rank[deg] == dim;
            StructureReport rep = verify_sdr(make_sdr(s, p));
            ok = ok && rep.all_pass();
        }
    }
    AlgebraPresentation p = corpus_model("h3ce");
    CohomologyData h = cohomology(p);
    ok = ok && h.betti.at(0) == 1 && h.betti.at(1) == 2 && h.betti.at(2) == 2 &&
         h.betti.at(3) == 1;
    for (const Splitting& s : {compute_splitting(p), hodge_splitting(p, GramSpec{}).first})
        ok = ok && s.homotopy.column(p.space.index_of("ab")) ==
                       SparseVec{{p.space.index_of("c"), 1}};
    return ok;
}

// 3. Chen transfer on H3CE with N = 5: flatness, partial^2, Stasheff to
// arity 5, m1 = 0, m2 = induced product, Massey m3 entries; runtime < 30 s.
bool c3() {
    Timer t;
    AlgebraPresentation p = corpus_model("h3ce");
    Splitting s = compute_splitting(p);
    TransferRun run = chen_transfer(p, s, 5);
    bool ok = verify_flatness(run.ctx, run.result).all_pass();
    AInftyStructure m = extract_ainfty(run.result);
    IdentityCheck ids = check_stasheff(m);
    ok = ok && ids.report.all_pass() && ids.routes_agree;
    ok = ok && m.maps.count(1) == 0;
    CohomologyData h = cohomology_with_representatives(p, s.harmonic);
    for (int i = 0; i < m.space.dim(); ++i)
        for (int j = 0; j < m.space.dim(); ++j) {
            SparseVec want;
            auto it = h.product.find({i, j});
            if (it != h.product.end()) want = it->second;
            ok = ok && m.value(2, {i, j}) == want;
        }
    const int ia = m.space.index_of("a"), ib = m.space.index_of("b");
    const int iac = m.space.index_of("ac"), ibc = m.space.index_of("bc");
    SparseVec aab = m.value(3, {ia, ia, ib});
    SparseVec abb = m.value(3, {ia, ib, ib});
    ok = ok && aab.size() == 1 && aab.begin()->first == iac &&
         (aab.begin()->second == 1 || aab.begin()->second == -1);
    ok = ok && abb.size() == 1 && abb.begin()->first == ibc &&
         (abb.begin()->second == 1 || abb.begin()->second == -1);
    ok = ok && t.seconds() < 30.0;
    return ok;
}

// 4. formality baseline on T2: m_n = 0 for 3 <= n <= 5 and omega = omega_[1].
bool c4() {
    AlgebraPresentation p = corpus_model("t2");
    TransferRun run = chen_transfer(p, compute_splitting(p), 5);
    bool ok = true;
    for (const auto& [w, vec] : run.result.omega.coef) {
        (void)vec;
        ok = ok && run.result.words->length(w) == 1;
    }
    AInftyStructure m = extract_ainfty(run.result);
    for (int k = 3; k <= 5; ++k) ok = ok && m.maps.count(k) == 0;
    return ok;
}

// 5. dictionary biconditional on >= 100 randomized small structures, dualize
// round-trips, unshuffle counts.
bool c5() {
    bool ok = true;
    std::mt19937_64 rng(1618);
    std::uniform_int_distribution<int> degd(0, 2);
    std::uniform_int_distribution<int> coin(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 1 + trial % 3;
        // A-infinity side
        {
            AInftyStructure m;
            for (int i = 0; i < dim; ++i)
                m.space.basis.push_back({"v" + std::to_string(i), degd(rng)});
            m.arity_bound = 3;
            m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, m.space.degrees(), 3);
            for (int k = 1; k <= 3; ++k)
                for (int id : m.vwords->ids_of_length(k)) {
                    const int want = m.vwords->degree(id) + 2 - k;
                    SparseVec val;
                    for (int t = 0; t < dim; ++t)
                        if (m.space.degree(t) == want) {
                            Rational c(coin(rng));
                            if (c != 0) val.emplace(t, c);
                        }
                    if (!val.empty()) m.maps[k][id] = std::move(val);
                }
            IdentityCheck ids = check_stasheff(m);
            ok = ok && ids.routes_agree;
            ++checked;
        }
        // L-infinity side
        {
            LInftyStructure l;
            for (int i = 0; i < dim; ++i)
                l.space.basis.push_back({"v" + std::to_string(i), degd(rng)});
            l.arity_bound = 3;
            std::vector<int> shifted;
            for (int d : l.space.degrees()) shifted.push_back(d - 1);
            l.swords = std::make_shared<WordIndex>(Flavor::Symmetric, shifted, 3);
            for (int k = 1; k <= 3; ++k)
                for (int id : l.swords->ids_of_length(k)) {
                    int wdeg = 0;
                    for (int g : l.swords->factors(id)) wdeg += l.space.degree(g);
                    const int want = wdeg + 2 - k;
                    SparseVec val;
                    for (int t = 0; t < dim; ++t)
                        if (l.space.degree(t) == want) {
                            Rational c(coin(rng));
                            if (c != 0) val.emplace(t, c);
                        }
                    if (!val.empty()) l.maps[k][id] = std::move(val);
                }
            IdentityCheck ids = check_linfty(l);
            ok = ok && ids.routes_agree;
            ++checked;
        }
        // dualize round-trip
        {
            const Flavor flavor = (trial % 2 == 0) ? Flavor::Tensor : Flavor::Symmetric;
            GeneratorDerivation d;
            d.flavor = flavor;
            for (int i = 0; i < dim; ++i) d.gen_degrees.push_back(degd(rng) - 1);
            d.degree = 1;
            d.words = std::make_shared<WordIndex>(flavor, d.gen_degrees, 3);
            d.images.assign(static_cast<std::size_t>(dim), {});
            for (int g = 0; g < dim; ++g)
                for (std::size_t id = 0; id < d.words->size(); ++id) {
                    Rational c(coin(rng));
                    if (c != 0 && d.words->length(static_cast<int>(id)) > 0 && coin(rng) > 0)
                        d.images[static_cast<std::size_t>(g)][static_cast<int>(id)] = c;
                }
            GeneratorDerivation back = dualize_back(dualize(d), dim);
            for (int g = 0; g < dim; ++g) {
                std::map<int, Rational> want;
                for (const auto& [w, c] : d.images[static_cast<std::size_t>(g)]) {
                    auto f = d.words->find(d.words->factors(w));
                    if (!f) continue;
                    want[f->first] += c * f->second;
                    if (want[f->first] == 0) want.erase(f->first);
                }
                ok = ok && back.images[static_cast<std::size_t>(g)] == want;
            }
        }
    }
    ok = ok && checked >= 100;
    for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            long long binom = 1;
            for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
            ok = ok && static_cast<long long>(unshuffles(k, n).size()) == binom;
        }
    return ok;
}

// 6. twisting cochain identity on H3CE at N = 5, exactly.
bool c6() {
    AlgebraPresentation p = corpus_model("h3ce");
    TransferRun run = chen_transfer(p, compute_splitting(p), 5);
    auto [tau, rep] = twisting_cochain(p, run.result);
    (void)tau;
    return rep.all_pass();
}

// 7. BPL: t = 0 identity; t phi = 0 collapse; stage stabilization and the
// hand-expanded D_M on H3CE.
bool c7() {
    bool ok = true;
    AlgebraPresentation p = corpus_model("h3ce");
    Splitting s = compute_splitting(p);
    SDRData base = make_sdr(s, p);
    auto shared_p = std::make_shared<const AlgebraPresentation>(p);
    TensoredSDR tens = tensor_sdr(base, shared_p, Flavor::Tensor, 3);
    {
        GradedMap zero = zero_map(tens.sdr.big_space, tens.sdr.big_space, 1);
        BPLState st = run_bpl(tens.sdr, zero);
        ok = ok && st.output.nabla == tens.sdr.nabla && st.output.f == tens.sdr.f &&
             st.output.phi == tens.sdr.phi && st.output.d_small == tens.sdr.d_small;
    }
    {
        AlgebraPresentation t2 = corpus_model("t2");
        TransferRun r1 = chen_transfer(t2, compute_splitting(t2), 2);
        SDRData b2 = make_sdr(compute_splitting(t2), t2);
        auto sp2 = std::make_shared<const AlgebraPresentation>(t2);
        TensoredSDR tt = tensor_sdr(b2, sp2, Flavor::Tensor, 2);
        GradedMap t = word_operator(tt.big, r1.result.partial);
        ok = ok && map_is_zero(compose(t, tt.sdr.phi));
        BPLState st = run_bpl(tt.sdr, t);
        GradedMap expect = add(tt.sdr.d_small, compose(tt.sdr.f, compose(t, tt.sdr.nabla)));
        ok = ok && st.output.d_small == expect;
    }
    {
        TransferRun r1 = chen_transfer(p, s, 3);
        GradedMap t = word_operator(tens.big, r1.result.partial);
        BPLState st = run_bpl(tens.sdr, t);
        ok = ok && st.verification.all_pass();
        for (std::size_t n = 2; n <= st.stage_d_small.size(); ++n) {
            GradedMap diff = add(st.stage_d_small[n - 1], scale(st.stage_d_small[n - 2], -1));
            for (const auto& [j, col] : diff.cols) {
                (void)j;
                for (const auto& [i, c] : col) {
                    (void)c;
                    ok = ok && tens.small_weights[static_cast<std::size_t>(i)] >=
                                   static_cast<long long>(n);
                }
            }
        }
        GradedMap t2map = compose(t, compose(tens.sdr.phi, t));
        GradedMap oracle =
            add(tens.sdr.d_small, compose(tens.sdr.f, compose(add(t, t2map), tens.sdr.nabla)));
        for (int j = 0; j < tens.small_pairs.dim(); ++j) {
            if (tens.small_weights[static_cast<std::size_t>(j)] > 2) continue;
            SparseVec got, want;
            for (const auto& [i, c] : st.output.d_small.column(j))
                if (tens.small_weights[static_cast<std::size_t>(i)] <= 2) got.emplace(i, c);
            for (const auto& [i, c] : oracle.column(j))
                if (tens.small_weights[static_cast<std::size_t>(i)] <= 2) want.emplace(i, c);
            ok = ok && got == want;
        }
    }
    return ok;
}

// 8. deformation pipelines at (3, 2) on H3GBV and MAT2; zero-bracket
// degeneration reproduces partial^a; runtime < 2 min each.
bool c8() {
    bool ok = true;
    {
        Timer t;
        AlgebraPresentation p = corpus_model("h3gbv");
        p.bracket = bracket_from_delta(p);
        DeformPoissonGerstenhaber d =
            deform_poisson_gerstenhaber(p, compute_splitting(p), 3, 2, true);
        ok = ok && d.initiator_report.all_pass() && d.bpl.verification.all_pass() &&
             d.flatness2.all_pass() && d.stasheff2.report.all_pass();
        ok = ok && t.seconds() < 120.0;
    }
    {
        Timer t;
        AlgebraPresentation p = corpus_model("mat2");
        DeformPoissonGerstenhaber d =
            deform_poisson_gerstenhaber(p, compute_splitting(p), 3, 2, true);
        ok = ok && d.initiator_report.all_pass() && d.bpl.verification.all_pass() &&
             d.flatness2.all_pass() && d.stasheff2.report.all_pass();
        ok = ok && t.seconds() < 120.0;
    }
    {
        AlgebraPresentation p = corpus_model("t2");
        p.bracket = BracketTable{};
        DeformPoissonGerstenhaber d =
            deform_poisson_gerstenhaber(p, compute_splitting(p), 3, 2, true);
        ok = ok && empty_sector_matches(d.stage2, d.product_run.result, p.space.dim(), true);
    }
    return ok;
}

// 9. GBV laws: H3GBV passes including bracket-exactness; the theta
// counterexample is rejected with witness (t1, t2, t2).
bool c9() {
    bool ok = true;
    {
        AlgebraPresentation p = corpus_model("h3gbv");
        StructureReport rep = check_gbv(p);
        ok = ok && rep.all_pass();
        bool saw_exactness = false;
        for (const auto& l : rep.laws)
            if (l.law == "delta_closed_bracket_exact" && l.pass) saw_exactness = true;
        ok = ok && saw_exactness;
    }
    {
        AlgebraPresentation p;
        p.name = "THETA";
        p.space.basis = {{"one", 0}, {"t1", 1}, {"t2", 1}, {"t1t2", 2}};
        p.unit = 0;
        auto set = [&](const char* a, const char* b, int sign, const char* r) {
            p.product[{p.space.index_of(a), p.space.index_of(b)}] =
                SparseVec{{p.space.index_of(r), sign}};
        };
        for (const char* sym : {"one", "t1", "t2", "t1t2"}) {
            set("one", sym, 1, sym);
            if (std::string(sym) != "one") set(sym, "one", 1, sym);
        }
        set("t1", "t2", 1, "t1t2");
        set("t2", "t1", -1, "t1t2");
        p.bv_operator = zero_map(p.space, p.space, -2);
        p.bv_operator->set(p.space.index_of("t1t2"), p.space.index_of("one"), 1);
        StructureReport rep = check_gbv(p);
        bool leibniz_failed = false;
        for (const auto& l : rep.laws)
            if (l.law == "delta_bracket_leibniz" && !l.pass && l.witness.size() == 3)
                leibniz_failed = true;
        ok = ok && !rep.all_pass() && leibniz_failed;
        // the named triple (t1, t2, t2) exhibits the failure with defect 2 t2
        AlgebraPresentation q = p;
        q.bracket = bracket_from_delta(p);
        const int t1 = q.space.index_of("t1"), t2 = q.space.index_of("t2");
        SparseVec defect = q.bracket_of(SparseVec{{t1, 1}}, q.mul(t2, t2));
        add_scaled(defect, q.mul(q.bracket_at(t1, t2), SparseVec{{t2, 1}}), -1);
        add_scaled(defect, q.mul(SparseVec{{t2, 1}}, q.bracket_at(t1, t2)), -1);
        ok = ok && defect == SparseVec{{t2, 2}};
    }
    return ok;
}

// 10. determinism: certificates byte-identical across parallelism settings.
bool c10() {
    bool ok = true;
    setenv("HPTK_THREADS", "1", 1);
    DriverResult a1 = run_validate(corpus_document("mat2"));
    DriverResult b1 = run_transfer(corpus_document("h3ce"), 4, "ainfty", "auto");
    DriverResult c1r = run_deform(corpus_document("h3gbv"), 2, 2, "aL");
    setenv("HPTK_THREADS", "5", 1);
    DriverResult a2 = run_validate(corpus_document("mat2"));
    DriverResult b2 = run_transfer(corpus_document("h3ce"), 4, "ainfty", "auto");
    DriverResult c2r = run_deform(corpus_document("h3gbv"), 2, 2, "aL");
    unsetenv("HPTK_THREADS");
    ok = ok && a1.certificate == a2.certificate;
    ok = ok && b1.certificate == b2.certificate;
    ok = ok && c1r.certificate == c2r.certificate;
    return ok;
}

} // namespace

int main() {
    run("structure validation with defect detection", 1, c1);
    run("splitting and SDR consistency", 2, c2);
    run("Heisenberg transfer at N = 5 with Massey oracle", 3, c3);
    run("formality baseline on the torus model", 4, c4);
    run("dictionary biconditional on randomized structures", 5, c5);
    run("twisting cochain identity at N = 5", 6, c6);
    run("basic perturbation lemma cases", 7, c7);
    run("deformation pipelines at (3, 2)", 8, c8);
    run("GBV laws and counterexample rejection", 9, c9);
    run("byte-identical certificates across parallelism", 10, c10);
    if (failures == 0) {
        std::cout << "acceptance: all criteria PASS" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
    return 1;
}

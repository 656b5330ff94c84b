#include "hptk/perturb.hpp"

#include "hptk/error.hpp"
#include "hptk/parallel.hpp"

#include <optional>
#include <sstream>

namespace hptk {

namespace {

int pow_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace

std::string ProductAlgebra::label(int id) const {
    const int i = pair_sym(id);
    const int w = pair_word(id);
    if (cwords->length(w) == 0) return base->space.symbol(i);
    std::ostringstream os;
    os << base->space.symbol(i) << "@[";
    const auto& f = cwords->factors(w);
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) os << "|";
        os << gen_symbols[static_cast<std::size_t>(f[k])];
    }
    os << "]";
    return os.str();
}

SparseVec ProductAlgebra::mul(int a, int b) const {
    const int i = pair_sym(a), u = pair_word(a);
    const int j = pair_sym(b), v = pair_word(b);
    SparseVec out;
    auto merged = cwords->concat(u, v);
    if (!merged) return out;
    const int sgn = pow_sign(static_cast<long long>(cwords->degree(u)) *
                             base->space.degree(j));
    const SparseVec prod = base->mul(i, j);
    for (const auto& [k, c] : prod) {
        const int id = pair_id(k, merged->first);
        Rational val = c * sgn * merged->second;
        Rational& slot = out[id];
        slot += val;
        if (slot == 0) out.erase(id);
    }
    return out;
}

GradedSpace ProductAlgebra::pair_space() const {
    GradedSpace sp;
    for (int w = 0; w < static_cast<int>(cwords->size()); ++w)
        for (int i = 0; i < base_dim(); ++i)
            sp.basis.push_back({label(pair_id(i, w)), degree(pair_id(i, w))});
    return sp;
}

AlgebraView ProductAlgebra::view() const {
    AlgebraView v;
    v.dim = dim();
    v.degrees.reserve(static_cast<std::size_t>(v.dim));
    v.weights.reserve(static_cast<std::size_t>(v.dim));
    for (int id = 0; id < v.dim; ++id) {
        v.degrees.push_back(degree(id));
        v.weights.push_back(weight(id));
        v.labels.push_back(label(id));
    }
    ProductAlgebra self = *this;
    v.mul2 = [self](int a, int b) { return self.mul(a, b); };
    v.curvature_factor = 1;
    v.owned = base;
    return v;
}

TensoredSDR tensor_sdr(const SDRData& base, std::shared_ptr<const AlgebraPresentation> p,
                       Flavor flavor, int bound, const GradedSpace* gen_source) {
    TensoredSDR out;
    const GradedSpace& gens = gen_source ? *gen_source : base.small_space;
    if (gens.dim() != base.small_space.dim())
        fail_structure("generator source does not match the small side");
    std::vector<int> gen_degrees;
    std::vector<int> gen_weights;
    for (int g = 0; g < gens.dim(); ++g) {
        gen_degrees.push_back(1 - gens.degree(g));
        gen_weights.push_back(1);
    }
    out.big.base = std::move(p);
    out.big.cwords = std::make_shared<WordIndex>(flavor, gen_degrees, bound, gen_weights, bound);
    for (int g = 0; g < gens.dim(); ++g)
        out.big.gen_symbols.push_back("X." + gens.symbol(g));

    const int nwords = static_cast<int>(out.big.cwords->size());
    const int nbig = base.big_space.dim();
    const int nsmall = base.small_space.dim();

    // Small pair space: small basis (x) words, word-major like the big side.
    for (int w = 0; w < nwords; ++w) {
        for (int h = 0; h < nsmall; ++h) {
            std::ostringstream os;
            os << base.small_space.symbol(h);
            if (out.big.cwords->length(w) > 0) {
                os << "@[";
                const auto& f = out.big.cwords->factors(w);
                for (std::size_t k = 0; k < f.size(); ++k) {
                    if (k) os << "|";
                    os << out.big.gen_symbols[static_cast<std::size_t>(f[k])];
                }
                os << "]";
            }
            out.small_pairs.basis.push_back(
                {os.str(), base.small_space.degree(h) + out.big.cwords->degree(w)});
            out.small_weights.push_back(out.big.cwords->weight(w));
        }
    }

    GradedSpace big_pairs = out.big.pair_space();
    SDRData& sdr = out.sdr;
    sdr.small_space = out.small_pairs;
    sdr.big_space = big_pairs;
    sdr.d_small = zero_map(out.small_pairs, out.small_pairs, 1);
    sdr.d_big = zero_map(big_pairs, big_pairs, 1);
    sdr.nabla = zero_map(out.small_pairs, big_pairs, 0);
    sdr.f = zero_map(big_pairs, out.small_pairs, 0);
    sdr.phi = zero_map(big_pairs, big_pairs, -1);

    // Coefficientwise extension: every map acts on the algebra factor only.
    for (int w = 0; w < nwords; ++w) {
        for (int h = 0; h < nsmall; ++h) {
            const int src = w * nsmall + h;
            if (!map_is_zero(base.d_small))
                for (const auto& [k, c] : base.d_small.column(h)) sdr.d_small.set(src, w * nsmall + k, c);
            for (const auto& [k, c] : base.nabla.column(h))
                sdr.nabla.set(src, out.big.pair_id(k, w), c);
        }
        for (int i = 0; i < nbig; ++i) {
            const int src = out.big.pair_id(i, w);
            for (const auto& [k, c] : base.d_big.column(i)) sdr.d_big.set(src, out.big.pair_id(k, w), c);
            for (const auto& [k, c] : base.f.column(i)) sdr.f.set(src, w * nsmall + k, c);
            for (const auto& [k, c] : base.phi.column(i)) sdr.phi.set(src, out.big.pair_id(k, w), c);
        }
    }
    return out;
}

GradedMap word_operator(const ProductAlgebra& alg, const GeneratorDerivation& partial) {
    GradedSpace pairs = alg.pair_space();
    GradedMap t = zero_map(pairs, pairs, 1);
    const int nwords = static_cast<int>(alg.cwords->size());
    for (int w = 0; w < nwords; ++w) {
        // derivation extension of the generator images on the word factor
        const auto& f = alg.cwords->factors(w);
        std::map<int, Rational> dw;
        long long prefix = 0;
        for (std::size_t pos = 0; pos < f.size(); ++pos) {
            const int g = f[pos];
            const int sgn = pow_sign(prefix);
            for (const auto& [img, c] : partial.images[static_cast<std::size_t>(g)]) {
                std::vector<int> nf;
                nf.insert(nf.end(), f.begin(), f.begin() + static_cast<long>(pos));
                const auto& imgf = partial.words->factors(img);
                nf.insert(nf.end(), imgf.begin(), imgf.end());
                nf.insert(nf.end(), f.begin() + static_cast<long>(pos) + 1, f.end());
                auto found = alg.cwords->find(nf);
                if (!found) continue;
                Rational& slot = dw[found->first];
                slot += c * sgn * found->second;
                if (slot == 0) dw.erase(found->first);
            }
            prefix += alg.cwords->gen_degrees()[static_cast<std::size_t>(g)];
        }
        if (dw.empty()) continue;
        for (int i = 0; i < alg.base_dim(); ++i) {
            const int sgn = pow_sign(alg.base->space.degree(i));
            for (const auto& [w2, c] : dw) t.set(alg.pair_id(i, w), alg.pair_id(i, w2), c * sgn);
        }
    }
    return t;
}

GradedMap adjoint_operator(const ProductAlgebra& alg, const Series& omega,
                           const WordIndex& omega_words) {
    if (!alg.base->bracket) fail_structure("adjoint operator needs a bracket");
    const int shift = alg.base->bracket->shift;
    GradedSpace pairs = alg.pair_space();
    GradedMap t = zero_map(pairs, pairs, 1);
    const int nwords = static_cast<int>(alg.cwords->size());
    for (const auto& [u, coef] : omega.coef) {
        const std::vector<int>& uf = omega_words.factors(u);
        const int udeg = omega_words.degree(u);
        for (int v = 0; v < nwords; ++v) {
            std::vector<int> merged_factors = uf;
            const auto& vf = alg.cwords->factors(v);
            merged_factors.insert(merged_factors.end(), vf.begin(), vf.end());
            auto merged = alg.cwords->find(merged_factors);
            if (!merged) continue;
            for (int j = 0; j < alg.base_dim(); ++j) {
                const int sgn =
                    pow_sign(static_cast<long long>(udeg) * (alg.base->space.degree(j) + shift));
                SparseVec br = alg.base->bracket_of(coef, SparseVec{{j, 1}});
                if (br.empty()) continue;
                for (const auto& [k, c] : br) {
                    const int src = alg.pair_id(j, v);
                    const int dst = alg.pair_id(k, merged->first);
                    Rational val = c * sgn * merged->second;
                    SparseVec col = t.column(src);
                    Rational& slot = col[dst];
                    slot += val;
                    if (slot == 0) col.erase(dst);
                    if (col.empty())
                        t.cols.erase(src);
                    else
                        t.cols[src] = std::move(col);
                }
            }
        }
    }
    return t;
}

StructureReport verify_initiator(const ProductAlgebra& alg, const GradedMap& d_big,
                                 const GradedMap& t) {
    StructureReport rep;
    const int n = alg.dim();
    {
        LawResult r;
        r.law = "initiator_degree_one";
        for (const auto& [j, col] : t.cols) {
            for (const auto& [i, c] : col) {
                (void)c;
                if (alg.degree(i) != alg.degree(j) + 1) {
                    r.pass = false;
                    r.witness.push_back(alg.label(j));
                    break;
                }
            }
            if (!r.pass) break;
        }
        rep.laws.push_back(std::move(r));
    }
    {
        LawResult r;
        r.law = "initiator_raises_weight";
        for (const auto& [j, col] : t.cols) {
            for (const auto& [i, c] : col) {
                (void)c;
                if (alg.weight(i) < alg.weight(j) + 1) {
                    r.pass = false;
                    r.witness.push_back(alg.label(j));
                    break;
                }
            }
            if (!r.pass) break;
        }
        rep.laws.push_back(std::move(r));
    }
    {
        LawResult r;
        r.law = "initiator_product_derivation";
        std::vector<std::optional<std::pair<std::pair<int, int>, SparseVec>>> slots(
            static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        parallel_for(slots.size(), [&](std::size_t s) {
            const int a = static_cast<int>(s / static_cast<std::size_t>(n));
            const int b = static_cast<int>(s % static_cast<std::size_t>(n));
            SparseVec defect = t.apply(alg.mul(a, b));
            for (const auto& [k, c] : t.column(a)) add_scaled(defect, alg.mul(k, b), -c);
            const int sgn = pow_sign(alg.degree(a));
            for (const auto& [k, c] : t.column(b)) add_scaled(defect, alg.mul(a, k), -c * sgn);
            if (!defect.empty()) slots[s] = std::make_pair(std::make_pair(a, b), std::move(defect));
        });
        for (const auto& s : slots) {
            if (!s) continue;
            r.pass = false;
            r.witness.push_back(alg.label(s->first.first));
            r.witness.push_back(alg.label(s->first.second));
            r.defect = s->second;
            break;
        }
        rep.laws.push_back(std::move(r));
    }
    {
        LawResult r;
        r.law = "perturbed_differential_squares_to_zero";
        GradedMap d = add(d_big, t);
        GradedMap sq = compose(d, d);
        for (const auto& [j, col] : sq.cols) {
            if (col.empty()) continue;
            r.pass = false;
            r.witness.push_back(alg.label(j));
            r.defect = col;
            break;
        }
        rep.laws.push_back(std::move(r));
    }
    return rep;
}

BPLState run_bpl(const SDRData& sdr, const GradedMap& t) {
    BPLState st;
    {
        GradedMap d = add(sdr.d_big, t);
        if (!map_is_zero(compose(d, d)))
            fail_verify("perturbed differential does not square to zero at the truncation");
    }
    const GradedMap idA = identity_map(sdr.big_space);
    GradedMap sigma = zero_map(sdr.big_space, sdr.big_space, 1);
    GradedMap tk = t;
    int guard = 0;
    while (!map_is_zero(tk)) {
        if (++guard > 512) fail_verify("perturbation stages did not stabilize");
        st.stage_t.push_back(tk);
        sigma = add(sigma, tk);
        st.stage_d_small.push_back(add(sdr.d_small, compose(sdr.f, compose(sigma, sdr.nabla))));
        tk = compose(t, compose(sdr.phi, tk));
    }
    GradedMap s_inf = add(idA, compose(sigma, sdr.phi));
    GradedMap r_inf = add(idA, compose(sdr.phi, sigma));

    st.output.small_space = sdr.small_space;
    st.output.big_space = sdr.big_space;
    st.output.d_big = add(sdr.d_big, t);
    st.output.d_small = st.stage_d_small.empty() ? sdr.d_small : st.stage_d_small.back();
    st.output.nabla = compose(r_inf, sdr.nabla);
    st.output.f = compose(sdr.f, s_inf);
    st.output.phi = compose(sdr.phi, s_inf);

    st.verification = verify_sdr(st.output);
    {
        LawResult r;
        r.law = "perturbed_small_differential_squares_to_zero";
        GradedMap sq = compose(st.output.d_small, st.output.d_small);
        for (const auto& [j, col] : sq.cols) {
            if (col.empty()) continue;
            r.pass = false;
            r.witness.push_back(st.output.small_space.symbol(j));
            r.defect = col;
            break;
        }
        st.verification.laws.push_back(std::move(r));
    }
    if (!st.verification.all_pass())
        fail_verify("perturbed SDR verification failed: " + st.verification.first_failure()->law);
    return st;
}

namespace {

TransferContext stage2_context(const TensoredSDR& tens, const BPLState& bpl, long long weight_cap) {
    TransferContext ctx;
    ctx.A = tens.big.view();
    ctx.d_big = bpl.output.d_big;
    ctx.nabla = bpl.output.nabla;
    ctx.f = bpl.output.f;
    ctx.phi = bpl.output.phi;
    ctx.d_small = bpl.output.d_small;
    ctx.small_space = tens.small_pairs;
    ctx.small_weights = tens.small_weights;
    ctx.weight_cap = weight_cap;
    ctx.flavor = Flavor::Tensor;
    // the perturbed SDR maps do not come from a cohomological splitting, so
    // the step obstruction is only closed for the twisted differential
    ctx.splitting_derived = false;
    return ctx;
}

} // namespace

DeformDga deform_dga(const AlgebraPresentation& p, const Splitting& s, int word_bound,
                     int stage2_bound) {
    DeformDga out;
    out.stage1 = chen_transfer(p, s, word_bound);
    auto shared_p = out.stage1.ctx.A.owned;
    SDRData base = make_sdr(s, p);
    out.tensored = tensor_sdr(base, shared_p, Flavor::Tensor, word_bound);
    {
        StructureReport rep = verify_sdr(out.tensored.sdr);
        if (!rep.all_pass()) fail_verify("tensored SDR verification failed");
    }
    out.initiator = word_operator(out.tensored.big, out.stage1.result.partial);
    out.bpl = run_bpl(out.tensored.sdr, out.initiator);
    out.ctx2 = stage2_context(out.tensored, out.bpl, word_bound);
    out.stage2 = chen_transfer(out.ctx2, stage2_bound);
    out.flatness2 = verify_flatness(out.ctx2, out.stage2);
    if (!out.flatness2.all_pass()) fail_verify("stage-2 flatness verification failed");
    out.stasheff2 = check_stasheff(extract_ainfty(out.stage2));
    return out;
}

DeformPoissonGerstenhaber deform_poisson_gerstenhaber(const AlgebraPresentation& p,
                                                      const Splitting& s, int tensor_bound,
                                                      int sym_bound, bool include_adjoint) {
    if (!p.bracket) fail_structure("deformation pipeline needs a bracket");
    DeformPoissonGerstenhaber out;
    out.product_run = chen_transfer(p, s, tensor_bound);
    out.lie_run = hain_transfer(p, s, sym_bound);
    auto shared_p = out.product_run.ctx.A.owned;

    // S-bar tensored SDR over the Lie-side generators. For a shift--1 bracket
    // the Lie run lives on the suspension, whose small space is the suspended
    // harmonic space; the generator degrees line up either way.
    SDRData base = make_sdr(s, p);
    out.tensored = tensor_sdr(base, shared_p, Flavor::Symmetric, sym_bound,
                              &out.lie_run.ctx.small_space);
    {
        StructureReport rep = verify_sdr(out.tensored.sdr);
        if (!rep.all_pass()) fail_verify("tensored SDR verification failed");
    }

    out.initiator = word_operator(out.tensored.big, out.lie_run.result.partial);
    if (include_adjoint) {
        GradedMap ad =
            adjoint_operator(out.tensored.big, out.lie_run.result.omega, *out.lie_run.result.words);
        out.initiator = add(out.initiator, ad);
    }
    out.initiator_report = verify_initiator(out.tensored.big, out.tensored.sdr.d_big, out.initiator);
    if (!out.initiator_report.all_pass())
        fail_verify("initiator verification failed: " + out.initiator_report.first_failure()->law);

    out.bpl = run_bpl(out.tensored.sdr, out.initiator);
    out.ctx2 = stage2_context(out.tensored, out.bpl, sym_bound);
    out.stage2 = chen_transfer(out.ctx2, tensor_bound);
    out.flatness2 = verify_flatness(out.ctx2, out.stage2);
    if (!out.flatness2.all_pass()) fail_verify("stage-2 flatness verification failed");
    out.stasheff2 = check_stasheff(extract_ainfty(out.stage2));
    return out;
}

bool empty_sector_matches(const TransferResult& stage2, const TransferResult& stage1,
                          int small_dim, bool strict) {
    for (int h = 0; h < small_dim; ++h) {
        std::map<int, Rational> projected;
        for (const auto& [w, c] : stage2.partial.images[static_cast<std::size_t>(h)]) {
            std::vector<int> f = stage2.words->factors(w);
            bool inside = true;
            for (int g : f)
                if (g >= small_dim) inside = false;
            if (!inside) {
                if (strict) return false;
                continue;
            }
            auto found = stage1.words->find(f);
            if (!found) return false;
            projected[found->first] += c * found->second;
            if (projected[found->first] == 0) projected.erase(found->first);
        }
        if (!(projected == stage1.partial.images[static_cast<std::size_t>(h)])) return false;
    }
    return true;
}

} // namespace hptk

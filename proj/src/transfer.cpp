#include "hptk/transfer.hpp"

#include "hptk/error.hpp"

#include <sstream>

namespace hptk {

namespace {

int pow_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

std::string word_label(const WordIndex& words, const GradedSpace& small_space, int id) {
    const auto& f = words.factors(id);
    if (f.empty()) return "()";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) os << "|";
        os << "X." << small_space.symbol(f[i]);
    }
    return os.str();
}

struct Engine {
    const TransferContext& ctx;
    std::shared_ptr<WordIndex> words;
    std::vector<int> gen_degrees;

    Engine(const TransferContext& c, int truncation) : ctx(c) {
        for (int g = 0; g < ctx.small_space.dim(); ++g)
            gen_degrees.push_back(1 - ctx.small_space.degree(g));
        std::vector<int> gen_weights;
        for (long long w : ctx.small_weights) gen_weights.push_back(static_cast<int>(w));
        words = std::make_shared<WordIndex>(ctx.flavor, gen_degrees, truncation, gen_weights,
                                            ctx.weight_cap);
    }

    long long coeff_weight(int i) const { return ctx.A.weights[static_cast<std::size_t>(i)]; }

    void put(Series& s, int word, int i, const Rational& v) const {
        if (v == 0) return;
        // deformation-order ideal: the coefficient word carries +|u|, every
        // generator label -|u|; terms above the cap are quotiented away
        if (ctx.weight_cap >= 0 && coeff_weight(i) - words->weight(word) > ctx.weight_cap) return;
        Rational& slot = s.coef[word][i];
        slot += v;
        if (slot == 0) {
            s.coef[word].erase(i);
            if (s.coef[word].empty()) s.coef.erase(word);
        }
    }

    void put_vec(Series& s, int word, const SparseVec& v, const Rational& c = 1) const {
        for (const auto& [i, x] : v) put(s, word, i, x * c);
    }

    // Derivation extension of the generator images applied to one word.
    std::map<int, Rational> apply_partial_word(const GeneratorDerivation& partial, int word) const {
        std::map<int, Rational> out;
        const auto& f = words->factors(word);
        long long prefix = 0;
        for (std::size_t pos = 0; pos < f.size(); ++pos) {
            const int g = f[pos];
            const int sgn = pow_sign(static_cast<long long>(partial.degree) * prefix);
            for (const auto& [img, c] : partial.images[static_cast<std::size_t>(g)]) {
                std::vector<int> nf;
                nf.insert(nf.end(), f.begin(), f.begin() + static_cast<long>(pos));
                const auto& imgf = words->factors(img);
                nf.insert(nf.end(), imgf.begin(), imgf.end());
                nf.insert(nf.end(), f.begin() + static_cast<long>(pos) + 1, f.end());
                auto found = words->find(nf);
                if (!found) continue;
                Rational& slot = out[found->first];
                slot += c * sgn * found->second;
                if (slot == 0) out.erase(found->first);
            }
            prefix += gen_degrees[static_cast<std::size_t>(g)];
        }
        return out;
    }

    // partial extended to A (x) words: (-1)^{|a|} a (x) partial(word).
    Series apply_partial(const GeneratorDerivation& partial, const Series& s, int only_length) const {
        Series out;
        for (const auto& [w, vec] : s.coef) {
            auto dw = apply_partial_word(partial, w);
            for (const auto& [w2, c] : dw) {
                if (only_length >= 0 && words->length(w2) != only_length) continue;
                for (const auto& [i, x] : vec)
                    put(out, w2, i, x * c * pow_sign(ctx.A.degrees[static_cast<std::size_t>(i)]));
            }
        }
        return out;
    }

    Series apply_dbig(const Series& s, int only_length) const {
        Series out;
        for (const auto& [w, vec] : s.coef) {
            if (only_length >= 0 && words->length(w) != only_length) continue;
            put_vec(out, w, ctx.d_big.apply(vec));
        }
        return out;
    }

    // factor * s * s restricted to one word length; Koszul sign on the word
    // past the second coefficient.
    Series square(const Series& s, int only_length) const {
        Series out;
        for (const auto& [u, a] : s.coef) {
            for (const auto& [v, b] : s.coef) {
                if (only_length >= 0 && words->length(u) + words->length(v) != only_length) continue;
                auto merged = words->concat(u, v);
                if (!merged) continue;
                const int udeg = words->degree(u);
                for (const auto& [j, bj] : b) {
                    const int sgn = pow_sign(static_cast<long long>(udeg) *
                                             ctx.A.degrees[static_cast<std::size_t>(j)]);
                    for (const auto& [i, ai] : a) {
                        SparseVec prod = ctx.A.mul2(i, j);
                        if (prod.empty()) continue;
                        put_vec(out, merged->first, prod,
                                ai * bj * ctx.A.curvature_factor * sgn * merged->second);
                    }
                }
            }
        }
        return out;
    }

    Series curvature_component(const Series& omega, const GeneratorDerivation& partial,
                               int length) const {
        Series out = apply_partial(partial, omega, length);
        Series d = apply_dbig(omega, length);
        for (const auto& [w, vec] : d.coef) put_vec(out, w, vec);
        Series sq = square(omega, length);
        for (const auto& [w, vec] : sq.coef) put_vec(out, w, vec);
        return out;
    }
};

} // namespace

AlgebraView view_of(std::shared_ptr<const AlgebraPresentation> p) {
    AlgebraView v;
    v.dim = p->space.dim();
    v.degrees = p->space.degrees();
    v.weights.assign(static_cast<std::size_t>(v.dim), 0);
    for (int i = 0; i < v.dim; ++i) v.labels.push_back(p->space.symbol(i));
    v.mul2 = [p](int i, int j) { return p->mul(i, j); };
    v.curvature_factor = 1;
    v.owned = p;
    return v;
}

AlgebraView bracket_view_of(std::shared_ptr<const AlgebraPresentation> p) {
    AlgebraView v = view_of(p);
    v.mul2 = [p](int i, int j) { return p->bracket_at(i, j); };
    v.curvature_factor = Rational(1, 2);
    return v;
}

TransferContext context_from_sdr(const SDRData& sdr, const AlgebraView& view, Flavor flavor) {
    TransferContext ctx;
    ctx.A = view;
    ctx.d_big = sdr.d_big;
    ctx.nabla = sdr.nabla;
    ctx.f = sdr.f;
    ctx.phi = sdr.phi;
    ctx.d_small = sdr.d_small;
    ctx.small_space = sdr.small_space;
    ctx.small_weights.assign(static_cast<std::size_t>(sdr.small_space.dim()), 0);
    ctx.flavor = flavor;
    ctx.splitting_derived = map_is_zero(sdr.d_small);
    return ctx;
}

bool Series::empty() const {
    for (const auto& [w, v] : coef)
        if (!v.empty()) return false;
    return true;
}

TransferResult chen_transfer(const TransferContext& ctx, int truncation) {
    if (truncation < 1) fail_parse("transfer truncation must be >= 1");
    Engine eng(ctx, truncation);
    TransferResult r;
    r.flavor = ctx.flavor;
    r.truncation = truncation;
    r.small_space = ctx.small_space;
    r.words = eng.words;
    r.gen_degrees = eng.gen_degrees;
    r.partial.flavor = ctx.flavor;
    r.partial.gen_degrees = eng.gen_degrees;
    r.partial.degree = 1;
    r.partial.words = eng.words;
    r.partial.images.assign(static_cast<std::size_t>(ctx.small_space.dim()), {});

    // omega_[1] = sum nabla(g) X^g
    for (int g = 0; g < ctx.small_space.dim(); ++g) {
        auto found = eng.words->find({g});
        if (!found) continue;
        eng.put_vec(r.omega, found->first, ctx.nabla.column(g));
    }
    // length-preserving part of the generator images from the small
    // differential: the coefficient of X^g in partial(X^h) is
    // -(-1)^{|h|} (d_small g)_h, which cancels d(omega_[1]) exactly.
    if (!map_is_zero(ctx.d_small)) {
        for (int g = 0; g < ctx.small_space.dim(); ++g) {
            auto found = eng.words->find({g});
            if (!found) continue;
            for (const auto& [h, c] : ctx.d_small.column(g)) {
                r.partial.images[static_cast<std::size_t>(h)][found->first] +=
                    -c * found->second * pow_sign(ctx.small_space.degree(h));
            }
        }
    }

    const long long iteration_cap = (ctx.weight_cap >= 0 ? ctx.weight_cap : 0) + 4;
    for (int n = 1; n < truncation; ++n) {
        for (long long iter = 0;; ++iter) {
            Series gamma = eng.curvature_component(r.omega, r.partial, n + 1);
            if (gamma.empty()) break;
            if (iter >= iteration_cap)
                fail_verify("transfer update did not stabilize at word length " +
                            std::to_string(n + 1));
            if (ctx.splitting_derived) {
                for (const auto& [w, vec] : gamma.coef) {
                    if (!ctx.d_big.apply(vec).empty())
                        fail_verify("step obstruction is not closed at word " +
                                    word_label(*eng.words, ctx.small_space, w));
                }
            }
            for (const auto& [w, vec] : gamma.coef) {
                eng.put_vec(r.omega, w, ctx.phi.apply(vec));
                const SparseVec fv = ctx.f.apply(vec);
                for (const auto& [h, c] : fv) {
                    Rational& slot = r.partial.images[static_cast<std::size_t>(h)][w];
                    slot += -c * pow_sign(ctx.small_space.degree(h));
                    if (slot == 0) r.partial.images[static_cast<std::size_t>(h)].erase(w);
                }
            }
        }
    }
    return r;
}

TransferRun chen_transfer(const AlgebraPresentation& p, const Splitting& s, int truncation) {
    auto owned = std::make_shared<const AlgebraPresentation>(p);
    SDRData sdr = make_sdr(s, *owned);
    TransferRun run;
    run.ctx = context_from_sdr(sdr, view_of(owned), Flavor::Tensor);
    run.result = chen_transfer(run.ctx, truncation);
    return run;
}

int bracket_degree(const AlgebraPresentation& p) {
    if (!p.bracket) return -1;
    for (const auto& [key, v] : p.bracket->entries) {
        if (v.empty()) continue;
        return p.space.degree(v.begin()->first) - p.space.degree(key.first) -
               p.space.degree(key.second);
    }
    return -1; // zero bracket: any suspension works
}

AlgebraPresentation suspend_presentation(const AlgebraPresentation& p, int amount) {
    AlgebraPresentation q = p;
    q.name = p.name + "~susp";
    for (auto& b : q.space.basis) b.degree += amount;
    if (q.bracket) q.bracket->shift = 0;
    q.product.clear();
    q.unit.reset();
    q.bv_operator.reset();
    if (q.differential) {
        q.differential->src_degrees = q.space.degrees();
        q.differential->tgt_degrees = q.space.degrees();
    }
    return q;
}

Splitting suspend_splitting(const Splitting& s, int amount) {
    Splitting t = s;
    for (auto& b : t.h_space.basis) b.degree += amount;
    auto move = [amount](GradedMap& m) {
        for (auto& d : m.src_degrees) d += amount;
        for (auto& d : m.tgt_degrees) d += amount;
    };
    move(t.homotopy);
    move(t.projector);
    move(t.include_h);
    move(t.project_h);
    return t;
}

TransferRun hain_transfer(const AlgebraPresentation& p, const Splitting& s, int truncation) {
    if (!p.bracket) fail_structure("hain_transfer needs a bracket");
    TransferRun run;
    if (p.bracket->shift == 0) {
        auto owned = std::make_shared<const AlgebraPresentation>(p);
        SDRData sdr = make_sdr(s, *owned);
        run.ctx = context_from_sdr(sdr, bracket_view_of(owned), Flavor::Symmetric);
        run.result = chen_transfer(run.ctx, truncation);
        return run;
    }
    // shift -1: run on the suspension, where the bracket has degree 0. The
    // suspension amount is the bracket's own degree (odd; -1 for cohomological
    // Gerstenhaber brackets, +1 for bv brackets on negatively graded spaces).
    const int amount = bracket_degree(p);
    auto suspended = std::make_shared<const AlgebraPresentation>(suspend_presentation(p, amount));
    Splitting ssus = suspend_splitting(s, amount);
    SDRData sdr = make_sdr(ssus, *suspended);
    run.ctx = context_from_sdr(sdr, bracket_view_of(suspended), Flavor::Symmetric);
    run.result = chen_transfer(run.ctx, truncation);
    return run;
}

StructureReport verify_flatness(const TransferContext& ctx, const TransferResult& r) {
    StructureReport rep;
    Engine eng(ctx, r.truncation);

    {
        LawResult law;
        law.law = "connection_normalized";
        for (const auto& [w, vec] : r.omega.coef) {
            if (eng.words->length(w) != 0 || vec.empty()) continue;
            law.pass = false;
            law.defect = vec;
        }
        for (int g = 0; g < ctx.small_space.dim() && law.pass; ++g) {
            auto found = eng.words->find({g});
            if (!found) continue;
            SparseVec got = r.omega.at(found->first);
            // compare against the inclusion modulo the truncation ideal
            Series gated;
            eng.put_vec(gated, found->first, ctx.nabla.column(g));
            add_scaled(got, gated.at(found->first), -Rational(found->second));
            if (!got.empty()) {
                law.pass = false;
                law.witness.push_back(ctx.small_space.symbol(g));
                law.defect = got;
            }
        }
        rep.laws.push_back(std::move(law));
    }

    for (int len = 1; len <= r.truncation; ++len) {
        LawResult law;
        law.law = "flatness[" + std::to_string(len) + "]";
        Series gamma = eng.curvature_component(r.omega, r.partial, len);
        for (const auto& [w, vec] : gamma.coef) {
            if (vec.empty()) continue;
            law.pass = false;
            law.witness.push_back(word_label(*eng.words, ctx.small_space, w));
            law.defect = vec;
            break;
        }
        rep.laws.push_back(std::move(law));
    }

    {
        LawResult law;
        law.law = "partial_squared";
        for (int h = 0; h < ctx.small_space.dim() && law.pass; ++h) {
            std::map<int, Rational> total;
            for (const auto& [w, c] : r.partial.images[static_cast<std::size_t>(h)]) {
                for (const auto& [w2, c2] : eng.apply_partial_word(r.partial, w)) {
                    Rational& slot = total[w2];
                    slot += c * c2;
                    if (slot == 0) total.erase(w2);
                }
            }
            if (!total.empty()) {
                law.pass = false;
                law.witness.push_back("X." + ctx.small_space.symbol(h));
                law.witness.push_back(word_label(*eng.words, ctx.small_space, total.begin()->first));
            }
        }
        rep.laws.push_back(std::move(law));
    }
    return rep;
}

AInftyStructure extract_ainfty(const TransferResult& r) {
    if (r.flavor != Flavor::Tensor) fail_verify("extract_ainfty needs tensor flavor");
    Coderivation b = dualize(r.partial);
    AInftyStructure m;
    m.space = r.small_space;
    m.arity_bound = r.truncation;
    std::vector<int> gw = r.words->gen_weights();
    m.vwords = std::make_shared<WordIndex>(Flavor::Tensor, m.space.degrees(), r.truncation, gw,
                                           r.words->max_weight());
    for (const auto& [k, fam] : b.L) {
        for (const auto& [wid, val] : fam) {
            const auto& factors = b.words->factors(wid);
            auto found = m.vwords->find(factors);
            if (!found) continue;
            long long e = 0;
            const long long kk = static_cast<long long>(factors.size());
            for (std::size_t j = 0; j < factors.size(); ++j)
                e += (kk - 1 - static_cast<long long>(j)) * m.space.degree(factors[j]);
            SparseVec v = scaled(val, found->second * pow_sign(e));
            if (!v.empty()) m.maps[k][found->first] = std::move(v);
        }
    }
    return m;
}

LInftyStructure extract_linfty(const TransferResult& r) {
    if (r.flavor != Flavor::Symmetric) fail_verify("extract_linfty needs symmetric flavor");
    Coderivation b = dualize(r.partial);
    LInftyStructure l;
    l.space = r.small_space;
    l.arity_bound = r.truncation;
    l.swords = b.words;
    for (const auto& [k, fam] : b.L) {
        for (const auto& [wid, val] : fam) {
            const auto& factors = b.words->factors(wid);
            long long e = 0;
            const long long kk = static_cast<long long>(factors.size());
            for (std::size_t j = 0; j < factors.size(); ++j)
                e += (kk - 1 - static_cast<long long>(j)) * l.space.degree(factors[j]);
            SparseVec v = scaled(val, pow_sign(e));
            if (!v.empty()) l.maps[k][wid] = std::move(v);
        }
    }
    return l;
}

std::pair<TwistingCochain, StructureReport> twisting_cochain(const AlgebraPresentation& p,
                                                             const TransferResult& r) {
    if (r.flavor != Flavor::Tensor) fail_verify("twisting cochains need tensor flavor");
    TwistingCochain tc;
    tc.words = r.words;
    std::vector<int> shifted;
    for (int g : r.gen_degrees) shifted.push_back(-g);
    for (const auto& [w, vec] : r.omega.coef) {
        if (r.words->length(w) == 0) continue;
        const int ps = diagonal_pairing_sign(r.words->factors(w), shifted);
        SparseVec v = scaled(vec, -ps);
        if (!v.empty()) tc.tau[w] = std::move(v);
    }

    Coderivation b = dualize(r.partial);
    StructureReport rep;
    auto tau_at = [&](int wid) -> SparseVec {
        auto it = tc.tau.find(wid);
        return it == tc.tau.end() ? SparseVec{} : it->second;
    };
    for (int len = 1; len <= r.truncation; ++len) {
        LawResult law;
        law.law = "twisting_cochain[" + std::to_string(len) + "]";
        for (int id : r.words->ids_of_length(len)) {
            SparseVec defect;
            // tau b
            auto bmap = extend_coderivation(b, id);
            for (const auto& [w2, c] : bmap) add_scaled(defect, tau_at(w2), c);
            // + d tau
            add_scaled(defect, p.diff(tau_at(id)), 1);
            // - tau cup tau
            const auto& f = r.words->factors(id);
            for (std::size_t cut = 1; cut < f.size(); ++cut) {
                std::vector<int> left(f.begin(), f.begin() + static_cast<long>(cut));
                std::vector<int> right(f.begin() + static_cast<long>(cut), f.end());
                auto lw = r.words->find(left);
                auto rw = r.words->find(right);
                if (!lw || !rw) continue;
                long long ldeg = 0;
                for (int g : left) ldeg += shifted[static_cast<std::size_t>(g)];
                add_scaled(defect, p.mul(tau_at(lw->first), tau_at(rw->first)),
                           -Rational(pow_sign(ldeg)));
            }
            if (!defect.empty()) {
                law.pass = false;
                law.witness.push_back(word_label(*r.words, r.small_space, id));
                law.defect = defect;
                break;
            }
        }
        rep.laws.push_back(std::move(law));
    }
    return {std::move(tc), std::move(rep)};
}

} // namespace hptk

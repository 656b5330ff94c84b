#include "hptk/drivers.hpp"

#include "hptk/error.hpp"
#include "hptk/validators.hpp"

#include <sstream>

namespace hptk {

namespace {

std::string digest_of(const AlgebraDocument& doc) { return sha256_hex(serialize_document(doc)); }

DriverResult finish(Certificate& cert, int code) {
    DriverResult out;
    out.exit_code = code;
    out.certificate = cert.text();
    return out;
}

DriverResult error_result(const Error& e) {
    Certificate cert;
    cert.line("error " + std::string(e.what()));
    DriverResult out;
    out.exit_code = static_cast<int>(e.kind());
    out.certificate = cert.text();
    return out;
}

std::string combo_text(const WordIndex& words, const GradedSpace& small_space,
                       const std::map<int, Rational>& combo) {
    if (combo.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : combo) {
        if (!first) os << " ";
        os << to_string(c) << " " << word_text(words, small_space, w);
        first = false;
    }
    return os.str();
}

// default cap: |basis| x (word count at the bound) <= 10^7 coefficient slots
void enforce_resource_cap(int basis_dim, int generators, int bound) {
    long double words = 0, layer = 1;
    for (int k = 0; k <= bound; ++k) {
        words += layer;
        layer *= generators;
    }
    if (static_cast<long double>(basis_dim) * words > 1e7L)
        fail_parse("input exceeds the resource cap (basis size times word count at the bound)");
}

Splitting splitting_for(const AlgebraDocument& doc, const std::string& kind) {
    if (kind == "hodge") return hodge_splitting(doc.presentation, doc.gram).first;
    if (kind != "auto") fail_parse("unknown splitting kind '" + kind + "'");
    return compute_splitting(doc.presentation);
}

void omega_tables(Certificate& cert, const TransferResult& r, const GradedSpace& coeff_space,
                  const std::string& kind) {
    for (const auto& [w, vec] : r.omega.coef)
        cert.table(kind, word_text(*r.words, r.small_space, w), format_element(coeff_space, vec));
}

void partial_tables(Certificate& cert, const TransferResult& r, const std::string& kind) {
    for (std::size_t g = 0; g < r.partial.images.size(); ++g) {
        if (r.partial.images[g].empty()) continue;
        cert.table(kind, "X." + r.small_space.symbol(static_cast<int>(g)),
                   combo_text(*r.words, r.small_space, r.partial.images[g]));
    }
}

void structure_tables(Certificate& cert, const AInftyStructure& m, const std::string& kind) {
    for (const auto& [k, fam] : m.maps) {
        for (const auto& [wid, val] : fam) {
            const auto& f = m.vwords->factors(wid);
            std::ostringstream key;
            key << k << " ";
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) key << "|";
                key << m.space.symbol(f[i]);
            }
            cert.table(kind, key.str(), format_element(m.space, val));
        }
    }
}

void structure_tables(Certificate& cert, const LInftyStructure& l, const std::string& kind) {
    for (const auto& [k, fam] : l.maps) {
        for (const auto& [wid, val] : fam) {
            const auto& f = l.swords->factors(wid);
            std::ostringstream key;
            key << k << " ";
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) key << "|";
                key << l.space.symbol(f[i]);
            }
            cert.table(kind, key.str(), format_element(l.space, val));
        }
    }
}

void map_tables(Certificate& cert, const GradedMap& m, const GradedSpace& src,
                const GradedSpace& tgt, const std::string& kind) {
    for (const auto& [j, col] : m.cols) {
        if (col.empty()) continue;
        cert.table(kind, src.symbol(j), format_element(tgt, col));
    }
}

} // namespace

std::string word_text(const WordIndex& words, const GradedSpace& small_space, int id) {
    const auto& f = words.factors(id);
    if (f.empty()) return "()";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) os << "|";
        os << "X." << small_space.symbol(f[i]);
    }
    return os.str();
}

StructureReport validate_presentation(const AlgebraPresentation& p) {
    StructureReport rep;
    if (p.bracket && p.bracket->shift == 0)
        rep = check_poisson(p);
    else if (p.bracket && p.bracket->shift == -1)
        rep = check_gerstenhaber(p);
    else
        rep = check_dga(p);
    if (p.bv_operator) {
        StructureReport gbv = check_gbv(p);
        for (auto& law : gbv.laws) {
            law.law = "gbv." + law.law;
            rep.laws.push_back(std::move(law));
        }
    }
    return rep;
}

DriverResult run_validate(const std::string& document_text) {
    try {
        AlgebraDocument doc = parse_document(document_text);
        Certificate cert;
        cert.header("validate", doc.presentation.name, digest_of(doc));
        StructureReport rep = validate_presentation(doc.presentation);
        cert.report("", rep, doc.presentation.space);
        return finish(cert, rep.all_pass() ? 0 : 1);
    } catch (const Error& e) {
        return error_result(e);
    }
}

DriverResult run_cohomology(const std::string& document_text) {
    try {
        AlgebraDocument doc = parse_document(document_text);
        Certificate cert;
        cert.header("cohomology", doc.presentation.name, digest_of(doc));
        CohomologyData h = cohomology(doc.presentation);
        for (const auto& [deg, dim] : h.betti)
            cert.line("betti " + std::to_string(deg) + " " + std::to_string(dim));
        for (int i = 0; i < h.h_space.dim(); ++i)
            cert.table("representative", h.h_space.symbol(i),
                       format_element(doc.presentation.space, h.representatives[static_cast<std::size_t>(i)]));
        for (const auto& [key, val] : h.product)
            cert.table("product", h.h_space.symbol(key.first) + "|" + h.h_space.symbol(key.second),
                       format_element(h.h_space, val));
        return finish(cert, 0);
    } catch (const Error& e) {
        return error_result(e);
    }
}

DriverResult run_transfer(const std::string& document_text, int arity, const std::string& mode,
                          const std::string& splitting_kind) {
    try {
        AlgebraDocument doc = parse_document(document_text);
        AlgebraPresentation p = doc.presentation;
        Certificate cert;
        cert.header("transfer", p.name, digest_of(doc));
        cert.param("arity", arity);
        cert.param("mode", mode);
        cert.param("splitting", splitting_kind);

        if (mode == "linfty" && !p.bracket) {
            // commutator bracket reading of an associative algebra
            BracketTable br;
            br.shift = 0;
            for (int i = 0; i < p.space.dim(); ++i)
                for (int j = 0; j < p.space.dim(); ++j) {
                    SparseVec v = p.mul(i, j);
                    add_scaled(v, p.mul(j, i),
                               -Rational(koszul_sign(p.space.degree(i), p.space.degree(j))));
                    if (!v.empty()) br.entries.emplace(std::make_pair(i, j), std::move(v));
                }
            p.bracket = std::move(br);
        }

        StructureReport structure =
            (mode == "linfty") ? check_dgla(p) : check_dga(p);
        cert.report("structure.", structure, p.space);
        if (!structure.all_pass()) return finish(cert, 1);

        Splitting s = splitting_for(doc, splitting_kind);
        enforce_resource_cap(p.space.dim(), s.h_space.dim(), arity);
        {
            CohomologyData h = cohomology(p);
            bool betti_ok = h.h_space.dim() == s.h_space.dim();
            std::map<int, int> rank;
            for (int i = 0; i < s.h_space.dim(); ++i) rank[s.h_space.degree(i)]++;
            for (const auto& [deg, dim] : h.betti)
                if (rank[deg] != dim) betti_ok = false;
            cert.check("splitting.betti_consistent", betti_ok);
        }

        if (mode == "ainfty") {
            TransferRun run = chen_transfer(p, s, arity);
            StructureReport flat = verify_flatness(run.ctx, run.result);
            cert.report("transfer.", flat, p.space);
            AInftyStructure m = extract_ainfty(run.result);
            IdentityCheck ids = check_stasheff(m);
            cert.report("ainfty.", ids.report, m.space);
            auto [tau, taurep] = twisting_cochain(p, run.result);
            cert.report("twisting.", taurep, p.space);
            omega_tables(cert, run.result, p.space, "omega");
            partial_tables(cert, run.result, "partial");
            structure_tables(cert, m, "m");
            for (const auto& [w, vec] : tau.tau)
                cert.table("tau", word_text(*run.result.words, run.result.small_space, w),
                           format_element(p.space, vec));
            return finish(cert, cert.all_pass() ? 0 : 2);
        }
        if (mode == "linfty") {
            TransferRun run = hain_transfer(p, s, arity);
            StructureReport flat = verify_flatness(run.ctx, run.result);
            cert.report("transfer.", flat, p.space);
            LInftyStructure l = extract_linfty(run.result);
            IdentityCheck ids = check_linfty(l);
            cert.report("linfty.", ids.report, l.space);
            omega_tables(cert, run.result, p.space, "omega");
            partial_tables(cert, run.result, "partial");
            structure_tables(cert, l, "l");
            return finish(cert, cert.all_pass() ? 0 : 2);
        }
        fail_parse("unknown mode '" + mode + "'");
    } catch (const Error& e) {
        return error_result(e);
    }
}

DriverResult run_deform(const std::string& document_text, int word_bound, int sym_bound,
                        const std::string& initiator) {
    try {
        AlgebraDocument doc = parse_document(document_text);
        AlgebraPresentation p = doc.presentation;
        Certificate cert;
        cert.header("deform", p.name, digest_of(doc));
        cert.param("word-bound", word_bound);
        cert.param("sym-bound", sym_bound);
        cert.param("initiator", initiator);
        if (initiator != "aL" && initiator != "L") fail_parse("initiator must be aL or L");

        if (!p.bracket && !p.bv_operator)
            fail_structure("deformation needs a bracket or a bv operator");
        if (!p.bracket) p.bracket = bracket_from_delta(p);

        StructureReport structure =
            p.bracket->shift == 0 ? check_poisson(p) : check_gerstenhaber(p);
        cert.report("structure.", structure, p.space);
        if (!structure.all_pass()) return finish(cert, 1);

        Splitting s = compute_splitting(p);
        enforce_resource_cap(p.space.dim(), s.h_space.dim(), word_bound + sym_bound);
        DeformPoissonGerstenhaber d =
            deform_poisson_gerstenhaber(p, s, word_bound, sym_bound, initiator == "aL");

        cert.report("initiator.", d.initiator_report, d.tensored.big.pair_space());
        cert.report("bpl.", d.bpl.verification, d.bpl.output.big_space);
        cert.report("stage2.", d.flatness2, d.tensored.big.pair_space());
        cert.report("stage2.stasheff.", d.stasheff2.report, d.ctx2.small_space);

        omega_tables(cert, d.product_run.result, p.space, "omega-a");
        partial_tables(cert, d.product_run.result, "partial-a");
        omega_tables(cert, d.lie_run.result, p.space, "omega-L");
        partial_tables(cert, d.lie_run.result, "partial-L");
        map_tables(cert, d.bpl.output.d_small, d.bpl.output.small_space, d.bpl.output.small_space,
                   "D");
        omega_tables(cert, d.stage2, d.tensored.big.pair_space(), "omega-aL");
        partial_tables(cert, d.stage2, "partial-aL");
        return finish(cert, cert.all_pass() ? 0 : 2);
    } catch (const Error& e) {
        return error_result(e);
    }
}

DriverResult run_massey(const std::string& document_text, const std::string& x,
                        const std::string& y, const std::string& z) {
    try {
        AlgebraDocument doc = parse_document(document_text);
        const AlgebraPresentation& p = doc.presentation;
        Certificate cert;
        cert.header("massey", p.name, digest_of(doc));
        Splitting s = compute_splitting(p);
        TransferRun run = chen_transfer(p, s, 3);
        AInftyStructure m = extract_ainfty(run.result);
        auto find_label = [&](const std::string& label) {
            const int idx = m.space.index_of(label);
            if (idx < 0) fail_parse("unknown cohomology class label '" + label + "'");
            return idx;
        };
        const int ix = find_label(x), iy = find_label(y), iz = find_label(z);
        SparseVec val = m.value(3, {ix, iy, iz});
        cert.table("m", "3 " + x + "|" + y + "|" + z, format_element(m.space, val));
        return finish(cert, 0);
    } catch (const Error& e) {
        return error_result(e);
    }
}

} // namespace hptk

#include "hptk/splitting.hpp"

#include "hptk/error.hpp"
#include "hptk/solve.hpp"

#include <sstream>

namespace hptk {

namespace {

GradedSpace label_by_leading(const AlgebraPresentation& p, const std::vector<SparseVec>& reps) {
    GradedSpace h;
    for (const auto& r : reps) {
        const int lead = r.begin()->first;
        h.basis.push_back({p.space.symbol(lead), p.space.degree(lead)});
    }
    return h;
}

// Assembles homotopy/projector/inclusion/projection from the harmonic and
// complement bases and checks the direct-sum axioms exactly.
Splitting assemble_splitting(const AlgebraPresentation& p, std::vector<SparseVec> harmonic,
                             std::vector<SparseVec> complement) {
    const int n = p.space.dim();
    Splitting s;
    s.h_space = label_by_leading(p, harmonic);
    s.harmonic = std::move(harmonic);
    s.complement = std::move(complement);

    const int h = static_cast<int>(s.harmonic.size());
    const int m = static_cast<int>(s.complement.size());
    std::vector<SparseVec> cols;
    cols.reserve(static_cast<std::size_t>(h + 2 * m));
    for (const auto& v : s.harmonic) cols.push_back(v);
    for (const auto& v : s.complement) cols.push_back(p.diff(v));
    for (const auto& v : s.complement) cols.push_back(v);
    ExactSolver dec(n, cols);
    if (dec.rank() != n || h + 2 * m != n)
        fail_structure("cohomological splitting summands do not decompose the space");

    s.homotopy = zero_map(p.space, p.space, -1);
    s.projector = zero_map(p.space, p.space, 0);
    GradedSpace h_space = s.h_space;
    s.include_h = zero_map(h_space, p.space, 0);
    s.project_h = zero_map(p.space, h_space, 0);
    for (int k = 0; k < h; ++k)
        for (const auto& [i, c] : s.harmonic[static_cast<std::size_t>(k)]) s.include_h.set(k, i, c);

    for (int i = 0; i < n; ++i) {
        auto pre = dec.preimage(SparseVec{{i, 1}});
        if (!pre) fail_structure("splitting decomposition failed");
        SparseVec aH, x1, fcoords;
        for (const auto& [j, c] : *pre) {
            if (j < h) {
                add_scaled(aH, s.harmonic[static_cast<std::size_t>(j)], c);
                fcoords.emplace(j, c);
            } else if (j < h + m) {
                add_scaled(x1, s.complement[static_cast<std::size_t>(j - h)], c);
            }
        }
        for (const auto& [t, c] : aH) s.projector.set(i, t, c);
        for (const auto& [t, c] : x1) s.homotopy.set(i, t, c);
        for (const auto& [t, c] : fcoords) s.project_h.set(i, t, c);
    }

    // Splitting axioms, checked exactly.
    for (const auto& v : s.harmonic)
        if (!p.diff(v).empty()) fail_structure("harmonic representative is not closed");
    {
        std::vector<SparseVec> dm;
        for (const auto& v : s.complement) dm.push_back(p.diff(v));
        if (static_cast<int>(echelon_basis(dm).size()) != m)
            fail_structure("differential is not injective on the complement");
    }
    const GradedMap q2 = compose(s.homotopy, s.homotopy);
    if (!map_is_zero(q2)) fail_structure("homotopy does not square to zero");
    if (!map_is_zero(compose(s.homotopy, s.include_h))) fail_structure("homotopy does not kill harmonics");
    if (!map_is_zero(compose(s.project_h, s.homotopy))) fail_structure("projection does not kill homotopy image");
    // (1 - [d, Q]) = projector
    GradedMap d = p.differential ? *p.differential : zero_map(p.space, p.space, 1);
    GradedMap lhs = add(identity_map(p.space),
                        scale(add(compose(d, s.homotopy), compose(s.homotopy, d)), -1));
    if (!(lhs == s.projector)) fail_structure("homotopy identity (1 - [d,Q]) != projector");
    return s;
}

} // namespace

Splitting compute_splitting(const AlgebraPresentation& p) {
    const int n = p.space.dim();
    for (int i = 0; i < n; ++i)
        if (!p.diff(p.diff(SparseVec{{i, 1}})).empty())
            fail_structure("differential does not square to zero");
    std::vector<SparseVec> dcols;
    for (int j = 0; j < n; ++j) dcols.push_back(p.diff(SparseVec{{j, 1}}));
    ExactSolver dsolver(n, dcols);
    std::vector<SparseVec> harmonic = echelon_complement(dsolver.kernel_basis(), dsolver.image_basis());
    std::vector<SparseVec> complement;
    for (int j : dsolver.pivot_columns()) complement.push_back(SparseVec{{j, 1}});
    return assemble_splitting(p, std::move(harmonic), std::move(complement));
}

namespace {

std::vector<std::vector<Rational>> gram_matrix_for_degree(const GramSpec& gram, int degree,
                                                          std::size_t dim) {
    if (gram.monomial_orthonormal) {
        std::vector<std::vector<Rational>> id(dim, std::vector<Rational>(dim, Rational(0)));
        for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
        return id;
    }
    auto it = gram.matrices.find(degree);
    if (it == gram.matrices.end()) {
        std::vector<std::vector<Rational>> id(dim, std::vector<Rational>(dim, Rational(0)));
        for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
        return id;
    }
    if (it->second.size() != dim) fail_parse("gram matrix dimension mismatch in degree " + std::to_string(degree));
    return it->second;
}

Rational leading_minor(const std::vector<std::vector<Rational>>& m, std::size_t k) {
    // Determinant of the leading k x k block by fraction-free-ish elimination.
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i][j] = m[i][j];
    Rational det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t sel = c;
        while (sel < k && a[sel][c] == 0) ++sel;
        if (sel == k) return 0;
        if (sel != c) {
            std::swap(a[sel], a[c]);
            det = -det;
        }
        det *= a[c][c];
        const Rational inv = Rational(1) / a[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            const Rational f = a[r][c] * inv;
            if (f == 0) continue;
            for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

} // namespace

std::pair<Splitting, HodgeData> hodge_splitting(const AlgebraPresentation& p, const GramSpec& gram) {
    const int n = p.space.dim();
    for (int i = 0; i < n; ++i)
        if (!p.diff(p.diff(SparseVec{{i, 1}})).empty())
            fail_structure("differential does not square to zero");

    // Collect per-degree index blocks and Gram data; check positive
    // definiteness via leading principal minors.
    std::map<int, std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks[p.space.degree(i)].push_back(i);
    std::map<int, std::vector<std::vector<Rational>>> g, ginv;
    for (const auto& [deg, idx] : blocks) {
        auto m = gram_matrix_for_degree(gram, deg, idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (m[i][j] != m[j][i]) fail_parse("gram matrix not symmetric in degree " + std::to_string(deg));
        for (std::size_t k = 1; k <= idx.size(); ++k)
            if (leading_minor(m, k) <= 0) {
                std::ostringstream os;
                os << "gram matrix not positive definite in degree " << deg << " (leading minor " << k << ")";
                fail_parse(os.str());
            }
        // invert by solving m x = e_k
        std::vector<std::vector<Rational>> inv(idx.size(), std::vector<Rational>(idx.size(), Rational(0)));
        std::vector<SparseVec> cols;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            SparseVec cvec;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (m[i][j] != 0) cvec.emplace(static_cast<int>(i), m[i][j]);
            cols.push_back(std::move(cvec));
        }
        ExactSolver sol(static_cast<int>(idx.size()), cols);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            auto x = sol.preimage(SparseVec{{static_cast<int>(k), 1}});
            if (!x) fail_parse("gram matrix is singular in degree " + std::to_string(deg));
            for (const auto& [i, c] : *x) inv[static_cast<std::size_t>(i)][k] = c;
        }
        g.emplace(deg, std::move(m));
        ginv.emplace(deg, std::move(inv));
    }

    auto block_pos = [&](int i) {
        const auto& idx = blocks[p.space.degree(i)];
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] == i) return k;
        fail_structure("basis index missing from degree block");
    };

    // d* = G^{-1} d^T G computed blockwise: for target degree n+1 -> source n.
    GradedMap dstar = zero_map(p.space, p.space, -1);
    const GradedMap d = p.differential ? *p.differential : zero_map(p.space, p.space, 1);
    for (const auto& [deg, idx] : blocks) {
        auto up = blocks.find(deg + 1);
        if (up == blocks.end()) continue;
        const auto& hi = up->second;
        // dmat[a][b] = coefficient of hi[a] in d(idx[b])
        std::vector<std::vector<Rational>> dmat(hi.size(), std::vector<Rational>(idx.size(), Rational(0)));
        for (std::size_t b = 0; b < idx.size(); ++b) {
            SparseVec img = d.column(idx[b]);
            for (const auto& [t, c] : img) dmat[block_pos(t)][b] = c;
        }
        // dstar_block = ginv[deg] * dmat^T * g[deg+1]
        const auto& gl = ginv.at(deg);
        const auto& gh = g.at(deg + 1);
        for (std::size_t a = 0; a < hi.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                Rational v = 0;
                for (std::size_t r = 0; r < idx.size(); ++r)
                    for (std::size_t s = 0; s < hi.size(); ++s) v += gl[b][r] * dmat[s][r] * gh[s][a];
                if (v != 0) dstar.set(hi[a], idx[b], v);
            }
        }
    }

    // <d a, b> = <a, d* b> exactly, on all basis pairs.
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (p.space.degree(b) != p.space.degree(a) + 1) continue;
            Rational lhs = 0, rhs = 0;
            for (const auto& [t, c] : d.column(a)) {
                const auto& gm = g.at(p.space.degree(b));
                if (p.space.degree(t) == p.space.degree(b)) lhs += c * gm[block_pos(t)][block_pos(b)];
            }
            for (const auto& [t, c] : dstar.column(b)) {
                const auto& gm = g.at(p.space.degree(a));
                if (p.space.degree(t) == p.space.degree(a)) rhs += c * gm[block_pos(a)][block_pos(t)];
            }
            if (lhs != rhs) fail_verify("gram adjoint identity failed");
        }
    }

    HodgeData hd;
    hd.adjoint = dstar;
    hd.laplacian = add(compose(d, dstar), compose(dstar, d));

    // Harmonics and the Green operator.
    std::vector<SparseVec> lap_cols;
    for (int j = 0; j < n; ++j) lap_cols.push_back(hd.laplacian.column(j));
    ExactSolver lap(n, lap_cols);
    std::vector<SparseVec> harmonic = lap.kernel_basis();
    {
        // ker box = ker d cap ker d*, checked exactly.
        for (const auto& v : harmonic)
            if (!d.apply(v).empty() || !dstar.apply(v).empty())
                fail_verify("laplacian kernel is not ker d cap ker d*");
    }
    std::vector<SparseVec> image_box = lap.image_basis();
    std::vector<SparseVec> dec_cols = harmonic;
    for (const auto& v : image_box) dec_cols.push_back(v);
    ExactSolver dec(n, dec_cols);
    if (dec.rank() != n) fail_verify("hodge decomposition is not a direct sum");

    // G: zero on harmonics, inverse of the laplacian on its image.
    std::vector<SparseVec> box_on_image;
    for (const auto& v : image_box) box_on_image.push_back(hd.laplacian.apply(v));
    ExactSolver box_inv(n, box_on_image);
    hd.green = zero_map(p.space, p.space, 0);
    const int hdim = static_cast<int>(harmonic.size());
    for (int i = 0; i < n; ++i) {
        auto coords = dec.preimage(SparseVec{{i, 1}});
        if (!coords) fail_verify("hodge decomposition failed");
        SparseVec im_part;
        for (const auto& [j, c] : *coords)
            if (j >= hdim) add_scaled(im_part, image_box[static_cast<std::size_t>(j - hdim)], c);
        auto y = box_inv.preimage(im_part);
        if (!y) fail_verify("laplacian not invertible on its image");
        SparseVec gi;
        for (const auto& [j, c] : *y) add_scaled(gi, image_box[static_cast<std::size_t>(j)], c);
        for (const auto& [t, c] : gi) hd.green.set(i, t, c);
    }
    // G commutes with d and d*.
    if (!(compose(hd.green, d) == compose(d, hd.green))) fail_verify("green operator does not commute with d");
    if (!(compose(hd.green, dstar) == compose(dstar, hd.green)))
        fail_verify("green operator does not commute with d*");

    // Explicit decomposition identity a - a^H = d d* G a + d* G d a.
    GradedMap q = compose(dstar, hd.green);
    GradedMap rec = add(compose(d, q), compose(q, d));
    GradedMap projected = add(identity_map(p.space), scale(rec, -1));
    for (int i = 0; i < n; ++i) {
        SparseVec h = projected.column(i);
        if (!hd.laplacian.apply(h).empty()) fail_verify("hodge projector image is not harmonic");
    }

    std::vector<SparseVec> complement;
    std::vector<SparseVec> dstar_cols;
    for (int j = 0; j < n; ++j) dstar_cols.push_back(dstar.column(j));
    complement = echelon_basis(dstar_cols);

    Splitting s = assemble_splitting(p, echelon_basis(harmonic), complement);
    // For the hodge route the homotopy is d* G; this must agree with the
    // decomposition-derived Q.
    if (!(s.homotopy == q)) fail_verify("hodge homotopy d*G disagrees with the decomposition homotopy");
    return {std::move(s), std::move(hd)};
}

SDRData make_sdr(const Splitting& s, const AlgebraPresentation& p) {
    SDRData sdr;
    sdr.small_space = s.h_space;
    sdr.big_space = p.space;
    sdr.d_small = zero_map(s.h_space, s.h_space, 1);
    sdr.d_big = p.differential ? *p.differential : zero_map(p.space, p.space, 1);
    sdr.nabla = s.include_h;
    sdr.f = s.project_h;
    sdr.phi = scale(s.homotopy, -1);
    return sdr;
}

StructureReport verify_sdr(const SDRData& sdr) {
    StructureReport rep;
    auto law = [&](const std::string& name, const GradedMap& defect, const GradedSpace& witness_space) {
        LawResult r;
        r.law = name;
        for (const auto& [j, col] : defect.cols) {
            if (col.empty()) continue;
            r.pass = false;
            r.witness.push_back(witness_space.symbol(j));
            r.defect = col;
            break;
        }
        rep.laws.push_back(std::move(r));
    };
    const GradedMap idA = identity_map(sdr.big_space);
    const GradedMap idM = identity_map(sdr.small_space);
    law("sdr1_f_nabla", add(compose(sdr.f, sdr.nabla), scale(idM, -1)), sdr.small_space);
    GradedMap rhs = add(idA, add(compose(sdr.d_big, sdr.phi), compose(sdr.phi, sdr.d_big)));
    law("sdr2_nabla_f", add(compose(sdr.nabla, sdr.f), scale(rhs, -1)), sdr.big_space);
    law("chain_map_nabla", add(compose(sdr.d_big, sdr.nabla), scale(compose(sdr.nabla, sdr.d_small), -1)),
        sdr.small_space);
    law("chain_map_f", add(compose(sdr.d_small, sdr.f), scale(compose(sdr.f, sdr.d_big), -1)), sdr.big_space);
    law("side_phi_nabla", compose(sdr.phi, sdr.nabla), sdr.small_space);
    law("side_f_phi", compose(sdr.f, sdr.phi), sdr.big_space);
    law("side_phi_phi", compose(sdr.phi, sdr.phi), sdr.big_space);
    return rep;
}

} // namespace hptk

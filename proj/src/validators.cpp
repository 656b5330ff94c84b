#include "hptk/validators.hpp"

#include "hptk/error.hpp"
#include "hptk/parallel.hpp"

#include <functional>
#include <optional>

namespace hptk {

namespace {

int sgn_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

struct Failure {
    std::vector<int> tuple;
    SparseVec defect;
};

// Evaluates defect(tuple) over all index tuples of the given arity in
// parallel; records the first failing tuple in enumeration order.
void run_law(StructureReport& report, const AlgebraPresentation& p, const std::string& law, int arity,
             const std::function<SparseVec(const std::vector<int>&)>& defect) {
    const int n = p.space.dim();
    std::size_t total = 1;
    for (int k = 0; k < arity; ++k) total *= static_cast<std::size_t>(n);
    std::vector<std::optional<Failure>> slots(total);
    parallel_for(total, [&](std::size_t t) {
        std::vector<int> tuple(static_cast<std::size_t>(arity));
        std::size_t rem = t;
        for (int k = arity - 1; k >= 0; --k) {
            tuple[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        SparseVec d = defect(tuple);
        if (!d.empty()) slots[t] = Failure{tuple, std::move(d)};
    });
    LawResult r;
    r.law = law;
    for (const auto& s : slots) {
        if (!s) continue;
        r.pass = false;
        for (int i : s->tuple) r.witness.push_back(p.space.symbol(i));
        r.defect = s->defect;
        break;
    }
    report.laws.push_back(std::move(r));
}

void product_laws(StructureReport& rep, const AlgebraPresentation& p) {
    run_law(rep, p, "associativity", 3, [&](const std::vector<int>& t) {
        SparseVec lhs = p.mul(p.mul(t[0], t[1]), SparseVec{{t[2], 1}});
        SparseVec rhs = p.mul(SparseVec{{t[0], 1}}, p.mul(t[1], t[2]));
        add_scaled(lhs, rhs, -1);
        return lhs;
    });
    if (p.unit) {
        run_law(rep, p, "unit", 1, [&](const std::vector<int>& t) {
            SparseVec l = p.mul(*p.unit, t[0]);
            SparseVec r = p.mul(t[0], *p.unit);
            add_scaled(l, SparseVec{{t[0], 1}}, -1);
            add_scaled(r, SparseVec{{t[0], 1}}, -1);
            add_scaled(l, r, 1);
            return l;
        });
    }
}

void differential_laws(StructureReport& rep, const AlgebraPresentation& p) {
    run_law(rep, p, "d_squared", 1,
            [&](const std::vector<int>& t) { return p.diff(p.diff(SparseVec{{t[0], 1}})); });
    run_law(rep, p, "leibniz", 2, [&](const std::vector<int>& t) {
        SparseVec d = p.diff(p.mul(t[0], t[1]));
        add_scaled(d, p.mul(p.diff(SparseVec{{t[0], 1}}), SparseVec{{t[1], 1}}), -1);
        add_scaled(d, p.mul(SparseVec{{t[0], 1}}, p.diff(SparseVec{{t[1], 1}})),
                   -sgn_pow(p.space.degree(t[0])));
        return d;
    });
}

// Lie laws with all sign exponents read through the shift.
void lie_laws(StructureReport& rep, const AlgebraPresentation& p, int shift, const std::string& prefix) {
    auto deg = [&](int i) { return p.space.degree(i) + shift; };
    run_law(rep, p, prefix + "antisymmetry", 2, [&](const std::vector<int>& t) {
        SparseVec d = p.bracket_at(t[0], t[1]);
        add_scaled(d, p.bracket_at(t[1], t[0]), sgn_pow(static_cast<long long>(deg(t[0])) * deg(t[1])));
        return d;
    });
    run_law(rep, p, prefix + "jacobi", 3, [&](const std::vector<int>& t) {
        SparseVec d = p.bracket_of(SparseVec{{t[0], 1}}, p.bracket_at(t[1], t[2]));
        add_scaled(d, p.bracket_of(p.bracket_at(t[0], t[1]), SparseVec{{t[2], 1}}), -1);
        add_scaled(d, p.bracket_of(SparseVec{{t[1], 1}}, p.bracket_at(t[0], t[2])),
                   -sgn_pow(static_cast<long long>(deg(t[0])) * deg(t[1])));
        return d;
    });
    if (p.differential) {
        run_law(rep, p, prefix + "d_derivation", 2, [&](const std::vector<int>& t) {
            SparseVec d = p.diff(p.bracket_at(t[0], t[1]));
            add_scaled(d, p.bracket_of(p.diff(SparseVec{{t[0], 1}}), SparseVec{{t[1], 1}}), -1);
            add_scaled(d, p.bracket_of(SparseVec{{t[0], 1}}, p.diff(SparseVec{{t[1], 1}})),
                       -sgn_pow(deg(t[0])));
            return d;
        });
    }
}

} // namespace

StructureReport check_dga(const AlgebraPresentation& p) {
    StructureReport rep;
    product_laws(rep, p);
    differential_laws(rep, p);
    return rep;
}

StructureReport check_dgla(const AlgebraPresentation& p) {
    if (!p.bracket || p.bracket->shift != 0) fail_structure("check_dgla needs a shift-0 bracket");
    StructureReport rep;
    lie_laws(rep, p, 0, "");
    run_law(rep, p, "d_squared", 1,
            [&](const std::vector<int>& t) { return p.diff(p.diff(SparseVec{{t[0], 1}})); });
    return rep;
}

StructureReport check_poisson(const AlgebraPresentation& p) {
    if (!p.bracket || p.bracket->shift != 0) fail_structure("check_poisson needs a shift-0 bracket");
    StructureReport rep;
    product_laws(rep, p);
    differential_laws(rep, p);
    lie_laws(rep, p, 0, "lie.");
    run_law(rep, p, "poisson_leibniz", 3, [&](const std::vector<int>& t) {
        SparseVec d = p.bracket_of(SparseVec{{t[0], 1}}, p.mul(t[1], t[2]));
        add_scaled(d, p.mul(p.bracket_at(t[0], t[1]), SparseVec{{t[2], 1}}), -1);
        add_scaled(d, p.mul(SparseVec{{t[1], 1}}, p.bracket_at(t[0], t[2])),
                   -sgn_pow(static_cast<long long>(p.space.degree(t[0])) * p.space.degree(t[1])));
        return d;
    });
    return rep;
}

StructureReport check_gerstenhaber(const AlgebraPresentation& p) {
    if (!p.bracket || p.bracket->shift != -1) fail_structure("check_gerstenhaber needs a shift--1 bracket");
    StructureReport rep;
    product_laws(rep, p);
    differential_laws(rep, p);
    lie_laws(rep, p, -1, "lie.");
    run_law(rep, p, "gerstenhaber_leibniz", 3, [&](const std::vector<int>& t) {
        SparseVec d = p.bracket_of(SparseVec{{t[0], 1}}, p.mul(t[1], t[2]));
        add_scaled(d, p.mul(p.bracket_at(t[0], t[1]), SparseVec{{t[2], 1}}), -1);
        add_scaled(d, p.mul(SparseVec{{t[1], 1}}, p.bracket_at(t[0], t[2])),
                   -sgn_pow(static_cast<long long>(p.space.degree(t[0]) - 1) * p.space.degree(t[1])));
        return d;
    });
    return rep;
}

BracketTable bracket_from_delta(const AlgebraPresentation& p) {
    if (!p.bv_operator) fail_structure("bracket_from_delta needs a bv operator");
    for (int i = 0; i < p.space.dim(); ++i)
        if (!p.bv(p.bv(SparseVec{{i, 1}})).empty())
            fail_structure("bv operator does not square to zero (witness " + p.space.symbol(i) + ")");
    BracketTable out;
    out.shift = -1;
    for (int i = 0; i < p.space.dim(); ++i) {
        for (int j = 0; j < p.space.dim(); ++j) {
            const int da = p.space.degree(i);
            SparseVec v = p.bv(p.mul(i, j));
            add_scaled(v, p.mul(p.bv(SparseVec{{i, 1}}), SparseVec{{j, 1}}), -1);
            add_scaled(v, p.mul(SparseVec{{i, 1}}, p.bv(SparseVec{{j, 1}})), -sgn_pow(da));
            SparseVec scaled_v = scaled(v, sgn_pow(da));
            if (!scaled_v.empty()) out.entries.emplace(std::make_pair(i, j), std::move(scaled_v));
        }
    }
    return out;
}

StructureReport check_gbv(const AlgebraPresentation& p) {
    if (!p.bv_operator) fail_structure("check_gbv needs a bv operator");
    StructureReport rep;

    LawResult odd;
    odd.law = "delta_odd_degree";
    if (p.bv_operator->degree % 2 == 0) {
        odd.pass = false;
        odd.witness.push_back("degree " + std::to_string(p.bv_operator->degree));
    }
    rep.laws.push_back(std::move(odd));

    run_law(rep, p, "delta_squared", 1,
            [&](const std::vector<int>& t) { return p.bv(p.bv(SparseVec{{t[0], 1}})); });
    if (!rep.laws.back().pass) return rep; // bracket undefined without a square-zero operator

    AlgebraPresentation q = p;
    q.bracket = bracket_from_delta(p);

    run_law(rep, q, "delta_bracket_leibniz", 3, [&](const std::vector<int>& t) {
        SparseVec d = q.bracket_of(SparseVec{{t[0], 1}}, q.mul(t[1], t[2]));
        add_scaled(d, q.mul(q.bracket_at(t[0], t[1]), SparseVec{{t[2], 1}}), -1);
        add_scaled(d, q.mul(SparseVec{{t[1], 1}}, q.bracket_at(t[0], t[2])),
                   -sgn_pow(static_cast<long long>(q.space.degree(t[0]) - 1) * q.space.degree(t[1])));
        return d;
    });
    run_law(rep, q, "delta_bracket_antisymmetry", 2, [&](const std::vector<int>& t) {
        SparseVec d = q.bracket_at(t[0], t[1]);
        add_scaled(d, q.bracket_at(t[1], t[0]),
                   sgn_pow(static_cast<long long>(q.space.degree(t[0]) - 1) * (q.space.degree(t[1]) - 1)));
        return d;
    });
    run_law(rep, q, "delta_bracket_jacobi", 3, [&](const std::vector<int>& t) {
        SparseVec d = q.bracket_of(SparseVec{{t[0], 1}}, q.bracket_at(t[1], t[2]));
        add_scaled(d, q.bracket_of(q.bracket_at(t[0], t[1]), SparseVec{{t[2], 1}}), -1);
        add_scaled(d, q.bracket_of(SparseVec{{t[1], 1}}, q.bracket_at(t[0], t[2])),
                   -sgn_pow(static_cast<long long>(q.space.degree(t[0]) - 1) * (q.space.degree(t[1]) - 1)));
        return d;
    });
    run_law(rep, q, "delta_dgla_law", 2, [&](const std::vector<int>& t) {
        SparseVec d = q.bv(q.bracket_at(t[0], t[1]));
        add_scaled(d, q.bracket_of(q.bv(SparseVec{{t[0], 1}}), SparseVec{{t[1], 1}}), -1);
        add_scaled(d, q.bracket_of(SparseVec{{t[0], 1}}, q.bv(SparseVec{{t[1], 1}})),
                   -sgn_pow(q.space.degree(t[0]) - 1));
        return d;
    });
    if (q.unit) {
        run_law(rep, q, "unit_bracket_trivial", 1,
                [&](const std::vector<int>& t) { return q.bracket_at(*q.unit, t[0]); });
    }

    // Bracket of delta-closed elements is delta-exact.
    {
        std::vector<SparseVec> delta_cols;
        for (int j = 0; j < p.space.dim(); ++j) delta_cols.push_back(p.bv(SparseVec{{j, 1}}));
        ExactSolver delta_solver(p.space.dim(), delta_cols);
        LawResult r;
        r.law = "delta_closed_bracket_exact";
        const auto closed = delta_solver.kernel_basis();
        for (std::size_t a = 0; a < closed.size() && r.pass; ++a) {
            for (std::size_t b = 0; b < closed.size() && r.pass; ++b) {
                SparseVec br = q.bracket_of(closed[a], closed[b]);
                if (br.empty()) continue;
                if (!delta_solver.in_image(br)) {
                    r.pass = false;
                    r.witness.push_back(format_element(p.space, closed[a]));
                    r.witness.push_back(format_element(p.space, closed[b]));
                    r.defect = br;
                }
            }
        }
        rep.laws.push_back(std::move(r));
    }

    if (p.differential) {
        run_law(rep, q, "d_squared", 1,
                [&](const std::vector<int>& t) { return q.diff(q.diff(SparseVec{{t[0], 1}})); });
        run_law(rep, q, "d_delta_anticommute", 1, [&](const std::vector<int>& t) {
            SparseVec d = q.diff(q.bv(SparseVec{{t[0], 1}}));
            add_scaled(d, q.bv(q.diff(SparseVec{{t[0], 1}})), 1);
            return d;
        });
        differential_laws(rep, q);
        run_law(rep, q, "d_derivation_bracket", 2, [&](const std::vector<int>& t) {
            SparseVec d = q.diff(q.bracket_at(t[0], t[1]));
            add_scaled(d, q.bracket_of(q.diff(SparseVec{{t[0], 1}}), SparseVec{{t[1], 1}}), -1);
            add_scaled(d, q.bracket_of(SparseVec{{t[0], 1}}, q.diff(SparseVec{{t[1], 1}})),
                       -sgn_pow(q.space.degree(t[0]) - 1));
            return d;
        });
    }
    return rep;
}

GradedMap adjoint_action(const AlgebraPresentation& p, const SparseVec& a) {
    if (!p.bracket) fail_structure("adjoint_action needs a bracket");
    int adeg = 0;
    if (!a.empty()) adeg = p.space.degree(a.begin()->first);
    GradedMap out = zero_map(p.space, p.space, adeg + p.bracket->shift);
    for (int j = 0; j < p.space.dim(); ++j) {
        SparseVec img = p.bracket_of(a, SparseVec{{j, 1}});
        if (!img.empty()) out.cols.emplace(j, std::move(img));
    }
    return out;
}

namespace {

CohomologyData build_cohomology(const AlgebraPresentation& p, std::vector<SparseVec> reps) {
    CohomologyData out;
    const int n = p.space.dim();
    {
        std::map<int, bool> seen;
        for (int i = 0; i < n; ++i) seen[p.space.degree(i)] = true;
        for (const auto& [d, b] : seen) {
            (void)b;
            out.degrees_present.push_back(d);
            out.betti[d] = 0;
        }
    }
    for (const auto& r : reps) {
        const int lead = r.begin()->first;
        out.h_space.basis.push_back({p.space.symbol(lead), p.space.degree(lead)});
        out.betti[p.space.degree(lead)] += 1;
    }
    out.representatives = std::move(reps);

    // Membership system [reps | d-columns] for quotient coordinates.
    std::vector<SparseVec> cols = out.representatives;
    for (int j = 0; j < n; ++j) cols.push_back(p.diff(SparseVec{{j, 1}}));
    ExactSolver member(n, cols);
    const int h = static_cast<int>(out.representatives.size());

    auto quotient_coords = [&](const SparseVec& v) -> std::optional<SparseVec> {
        auto pre = member.preimage(v);
        if (!pre) return std::nullopt;
        SparseVec coords;
        for (const auto& [j, c] : *pre)
            if (j < h) coords.emplace(j, c);
        return coords;
    };

    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) {
            SparseVec v = p.mul(out.representatives[static_cast<std::size_t>(i)],
                                out.representatives[static_cast<std::size_t>(j)]);
            if (!p.diff(v).empty())
                fail_verify("product of closed representatives is not closed");
            auto coords = quotient_coords(v);
            if (!coords) fail_verify("product of closed representatives is not closed modulo exact");
            if (!coords->empty()) out.product.emplace(std::make_pair(i, j), std::move(*coords));
        }
    }
    return out;
}

} // namespace

CohomologyData cohomology(const AlgebraPresentation& p) {
    const int n = p.space.dim();
    for (int i = 0; i < n; ++i)
        if (!p.diff(p.diff(SparseVec{{i, 1}})).empty())
            fail_structure("differential does not square to zero");
    std::vector<SparseVec> dcols;
    for (int j = 0; j < n; ++j) dcols.push_back(p.diff(SparseVec{{j, 1}}));
    ExactSolver dsolver(n, dcols);
    std::vector<SparseVec> reps = echelon_complement(dsolver.kernel_basis(), dsolver.image_basis());
    return build_cohomology(p, std::move(reps));
}

CohomologyData cohomology_with_representatives(const AlgebraPresentation& p,
                                               const std::vector<SparseVec>& reps) {
    for (const auto& r : reps)
        if (!p.diff(r).empty()) fail_structure("representative is not closed");
    return build_cohomology(p, reps);
}

std::optional<SparseVec> CohomologyData::to_h(const AlgebraPresentation& p, const SparseVec& v) const {
    if (!p.diff(v).empty()) return std::nullopt;
    const int n = p.space.dim();
    std::vector<SparseVec> cols = representatives;
    for (int j = 0; j < n; ++j) cols.push_back(p.diff(SparseVec{{j, 1}}));
    ExactSolver member(n, cols);
    auto pre = member.preimage(v);
    if (!pre) return std::nullopt;
    SparseVec coords;
    const int h = static_cast<int>(representatives.size());
    for (const auto& [j, c] : *pre)
        if (j < h) coords.emplace(j, c);
    return coords;
}

} // namespace hptk

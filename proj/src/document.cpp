#include "hptk/document.hpp"

#include "hptk/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hptk {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string raw;
    int number = 0;
    while (std::getline(is, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        Line line;
        line.number = number;
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void bad(int line, const std::string& msg) {
    fail_parse("line " + std::to_string(line) + ": " + msg);
}

bool valid_symbol(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

int parse_int(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) bad(line.number, "malformed integer '" + tok + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        bad(line.number, "malformed integer '" + tok + "'");
    }
}

// section ranks enforce the canonical order of directives
int rank_of(const std::string& head) {
    if (head == "hptk-algebra") return 0;
    if (head == "name") return 1;
    if (head == "scalars") return 2;
    if (head == "basis") return 3;
    if (head == "unit") return 4;
    if (head == "product") return 5;
    if (head == "d") return 6;
    if (head == "bracket-shift") return 7;
    if (head == "bracket") return 8;
    if (head == "delta") return 9;
    if (head == "inner-product") return 10;
    if (head == "gram") return 11;
    return -1;
}

SparseVec parse_terms(const Line& line, std::size_t from, const GradedSpace& space) {
    SparseVec out;
    if ((line.tokens.size() - from) % 2 != 0 || line.tokens.size() == from)
        bad(line.number, "expected coefficient/symbol pairs after '='");
    for (std::size_t k = from; k + 1 < line.tokens.size() + 1 && k < line.tokens.size(); k += 2) {
        auto coef = parse_rational_canonical(line.tokens[k]);
        if (!coef) bad(line.number, "coefficient '" + line.tokens[k] + "' is not canonical");
        if (*coef == 0) bad(line.number, "zero coefficients are not stored");
        const int idx = space.index_of(line.tokens[k + 1]);
        if (idx < 0) bad(line.number, "unknown symbol '" + line.tokens[k + 1] + "'");
        if (out.count(idx)) bad(line.number, "repeated symbol '" + line.tokens[k + 1] + "'");
        out.emplace(idx, *coef);
    }
    return out;
}

} // namespace

AlgebraDocument parse_document(const std::string& text) {
    AlgebraDocument doc;
    AlgebraPresentation& p = doc.presentation;
    auto lines = tokenize(text);
    if (lines.empty()) fail_parse("line 1: empty document");

    int prev_rank = -1;
    bool saw_header = false, saw_name = false, saw_scalars = false;
    bool saw_inner = false;
    bool saw_bracket_shift = false;
    bool gram_explicit = false;

    for (const auto& line : lines) {
        const std::string& head = line.tokens[0];
        const int rank = rank_of(head);
        if (rank < 0) bad(line.number, "unknown directive '" + head + "'");
        if (rank < prev_rank) bad(line.number, "directive '" + head + "' out of canonical order");
        prev_rank = rank;

        auto expect_eq = [&](std::size_t pos) {
            if (line.tokens.size() <= pos || line.tokens[pos] != "=")
                bad(line.number, "expected '='");
        };

        if (head == "hptk-algebra") {
            if (saw_header) bad(line.number, "duplicate header");
            if (line.tokens.size() != 2 || line.tokens[1] != "1")
                bad(line.number, "expected 'hptk-algebra 1'");
            saw_header = true;
        } else if (head == "name") {
            if (!saw_header) bad(line.number, "missing 'hptk-algebra 1' header");
            if (saw_name) bad(line.number, "duplicate name");
            if (line.tokens.size() != 2 || !valid_symbol(line.tokens[1]))
                bad(line.number, "expected 'name <identifier>'");
            p.name = line.tokens[1];
            saw_name = true;
        } else if (head == "scalars") {
            if (saw_scalars) bad(line.number, "duplicate scalars");
            if (line.tokens.size() != 2 || line.tokens[1] != "rational")
                bad(line.number, "only 'scalars rational' is supported");
            saw_scalars = true;
        } else if (head == "basis") {
            if (line.tokens.size() != 3) bad(line.number, "expected 'basis <symbol> <degree>'");
            if (!valid_symbol(line.tokens[1])) bad(line.number, "bad symbol '" + line.tokens[1] + "'");
            if (p.space.index_of(line.tokens[1]) >= 0)
                bad(line.number, "duplicate basis symbol '" + line.tokens[1] + "'");
            p.space.basis.push_back({line.tokens[1], parse_int(line, line.tokens[2])});
        } else if (head == "unit") {
            if (p.unit) bad(line.number, "duplicate unit");
            if (line.tokens.size() != 2) bad(line.number, "expected 'unit <symbol>'");
            const int idx = p.space.index_of(line.tokens[1]);
            if (idx < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            p.unit = idx;
        } else if (head == "product") {
            if (line.tokens.size() < 5) bad(line.number, "expected 'product <l> <r> = terms'");
            const int l = p.space.index_of(line.tokens[1]);
            const int r = p.space.index_of(line.tokens[2]);
            if (l < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            if (r < 0) bad(line.number, "unknown symbol '" + line.tokens[2] + "'");
            expect_eq(3);
            if (p.product.count({l, r})) bad(line.number, "duplicate product entry");
            p.product.emplace(std::make_pair(l, r), parse_terms(line, 4, p.space));
        } else if (head == "d") {
            if (line.tokens.size() < 4) bad(line.number, "expected 'd <symbol> = terms'");
            const int a = p.space.index_of(line.tokens[1]);
            if (a < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            expect_eq(2);
            if (!p.differential) p.differential = zero_map(p.space, p.space, 1);
            if (p.differential->cols.count(a)) bad(line.number, "duplicate differential entry");
            SparseVec v = parse_terms(line, 3, p.space);
            if (!v.empty()) p.differential->cols.emplace(a, std::move(v));
        } else if (head == "bracket-shift") {
            if (saw_bracket_shift) bad(line.number, "duplicate bracket-shift");
            if (line.tokens.size() != 2) bad(line.number, "expected 'bracket-shift 0|-1'");
            const int s = parse_int(line, line.tokens[1]);
            if (s != 0 && s != -1) bad(line.number, "bracket shift must be 0 or -1");
            p.bracket = BracketTable{};
            p.bracket->shift = s;
            saw_bracket_shift = true;
        } else if (head == "bracket") {
            if (!saw_bracket_shift) bad(line.number, "bracket entries need a bracket-shift line first");
            if (line.tokens.size() < 5) bad(line.number, "expected 'bracket <l> <r> = terms'");
            const int l = p.space.index_of(line.tokens[1]);
            const int r = p.space.index_of(line.tokens[2]);
            if (l < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            if (r < 0) bad(line.number, "unknown symbol '" + line.tokens[2] + "'");
            expect_eq(3);
            if (p.bracket->entries.count({l, r})) bad(line.number, "duplicate bracket entry");
            p.bracket->entries.emplace(std::make_pair(l, r), parse_terms(line, 4, p.space));
        } else if (head == "delta") {
            if (line.tokens.size() < 4) bad(line.number, "expected 'delta <symbol> = terms'");
            const int a = p.space.index_of(line.tokens[1]);
            if (a < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            expect_eq(2);
            if (!p.bv_operator) {
                p.bv_operator = zero_map(p.space, p.space, 0);
                p.bv_operator->degree = 0; // fixed below from the first entry
            }
            if (p.bv_operator->cols.count(a)) bad(line.number, "duplicate delta entry");
            SparseVec v = parse_terms(line, 3, p.space);
            if (!v.empty()) p.bv_operator->cols.emplace(a, std::move(v));
        } else if (head == "inner-product") {
            if (saw_inner) bad(line.number, "duplicate inner-product");
            if (line.tokens.size() != 2) bad(line.number, "expected 'inner-product <kind>'");
            if (line.tokens[1] == "monomial-orthonormal") {
                doc.gram.monomial_orthonormal = true;
            } else if (line.tokens[1] == "explicit") {
                doc.gram.monomial_orthonormal = false;
                gram_explicit = true;
            } else {
                bad(line.number, "inner-product kind must be monomial-orthonormal or explicit");
            }
            saw_inner = true;
        } else if (head == "gram") {
            if (!gram_explicit) bad(line.number, "gram entries need 'inner-product explicit'");
            if (line.tokens.size() != 5) bad(line.number, "expected 'gram <a> <b> = <coef>'");
            const int a = p.space.index_of(line.tokens[1]);
            const int b = p.space.index_of(line.tokens[2]);
            if (a < 0) bad(line.number, "unknown symbol '" + line.tokens[1] + "'");
            if (b < 0) bad(line.number, "unknown symbol '" + line.tokens[2] + "'");
            if (p.space.degree(a) != p.space.degree(b))
                bad(line.number, "gram entries must pair basis elements of equal degree");
            if (a > b) bad(line.number, "gram entries are stored upper-triangular (first index <= second)");
            expect_eq(3);
            auto coef = parse_rational_canonical(line.tokens[4]);
            if (!coef) bad(line.number, "coefficient '" + line.tokens[4] + "' is not canonical");
            const int deg = p.space.degree(a);
            auto idx = p.space.indices_of_degree(deg);
            auto& m = doc.gram.matrices[deg];
            if (m.empty())
                m.assign(idx.size(), std::vector<Rational>(idx.size(), Rational(0)));
            std::size_t pa = 0, pb = 0;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                if (idx[k] == a) pa = k;
                if (idx[k] == b) pb = k;
            }
            if (m[pa][pb] != 0) bad(line.number, "duplicate gram entry");
            m[pa][pb] = *coef;
            m[pb][pa] = *coef;
        }
    }
    if (!saw_header) fail_parse("line 1: missing 'hptk-algebra 1' header");
    if (!saw_name) fail_parse("line 1: missing name");
    if (!saw_scalars) fail_parse("line 1: missing 'scalars rational'");
    if (p.space.dim() == 0 && !p.product.empty()) fail_parse("line 1: entries without basis");

    // Fix the bv degree from its entries and validate all degree bookkeeping.
    if (p.bv_operator && !p.bv_operator->cols.empty()) {
        const auto& [src, col] = *p.bv_operator->cols.begin();
        p.bv_operator->degree = p.space.degree(col.begin()->first) - p.space.degree(src);
    }
    if (p.differential) {
        p.differential->src_degrees = p.space.degrees();
        p.differential->tgt_degrees = p.space.degrees();
    }
    if (p.bv_operator) {
        p.bv_operator->src_degrees = p.space.degrees();
        p.bv_operator->tgt_degrees = p.space.degrees();
    }
    p.validate_structure();
    return doc;
}

std::string serialize_document(const AlgebraDocument& doc) {
    const AlgebraPresentation& p = doc.presentation;
    std::ostringstream os;
    os << "hptk-algebra 1\n";
    os << "name " << p.name << "\n";
    os << "scalars rational\n";
    for (const auto& b : p.space.basis) os << "basis " << b.symbol << " " << b.degree << "\n";
    if (p.unit) os << "unit " << p.space.symbol(*p.unit) << "\n";
    auto terms = [&](const SparseVec& v) {
        std::ostringstream ts;
        bool first = true;
        for (const auto& [i, c] : v) {
            if (!first) ts << " ";
            ts << to_string(c) << " " << p.space.symbol(i);
            first = false;
        }
        return ts.str();
    };
    for (const auto& [key, v] : p.product) {
        if (v.empty()) continue;
        os << "product " << p.space.symbol(key.first) << " " << p.space.symbol(key.second) << " = "
           << terms(v) << "\n";
    }
    if (p.differential)
        for (const auto& [a, v] : p.differential->cols) {
            if (v.empty()) continue;
            os << "d " << p.space.symbol(a) << " = " << terms(v) << "\n";
        }
    if (p.bracket) {
        os << "bracket-shift " << p.bracket->shift << "\n";
        for (const auto& [key, v] : p.bracket->entries) {
            if (v.empty()) continue;
            os << "bracket " << p.space.symbol(key.first) << " " << p.space.symbol(key.second)
               << " = " << terms(v) << "\n";
        }
    }
    if (p.bv_operator)
        for (const auto& [a, v] : p.bv_operator->cols) {
            if (v.empty()) continue;
            os << "delta " << p.space.symbol(a) << " = " << terms(v) << "\n";
        }
    if (doc.gram.monomial_orthonormal) {
        os << "inner-product monomial-orthonormal\n";
    } else {
        os << "inner-product explicit\n";
        for (const auto& [deg, m] : doc.gram.matrices) {
            const auto idx = p.space.indices_of_degree(deg);
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i; j < idx.size(); ++j)
                    if (m[i][j] != 0)
                        os << "gram " << p.space.symbol(idx[i]) << " " << p.space.symbol(idx[j])
                           << " = " << to_string(m[i][j]) << "\n";
        }
    }
    return os.str();
}

} // namespace hptk

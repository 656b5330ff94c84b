#include "hptk/corpus.hpp"
#include "hptk/error.hpp"

namespace hptk {

namespace {
const char* k_t2 = R"ALG(hptk-algebra 1
name T2
scalars rational
basis one 0
basis x 1
basis y 1
basis xy 2
unit one
product one one = 1 one
product one x = 1 x
product one y = 1 y
product one xy = 1 xy
product x one = 1 x
product x y = 1 xy
product y one = 1 y
product y x = -1 xy
product xy one = 1 xy
inner-product monomial-orthonormal
)ALG";
const char* k_d2 = R"ALG(hptk-algebra 1
name D2
scalars rational
basis x 1
basis y 2
d x = 1 y
inner-product monomial-orthonormal
)ALG";
const char* k_h3ce = R"ALG(hptk-algebra 1
name H3CE
scalars rational
basis one 0
basis a 1
basis b 1
basis c 1
basis ab 2
basis ac 2
basis bc 2
basis abc 3
unit one
product one one = 1 one
product one a = 1 a
product one b = 1 b
product one c = 1 c
product one ab = 1 ab
product one ac = 1 ac
product one bc = 1 bc
product one abc = 1 abc
product a one = 1 a
product a b = 1 ab
product a c = 1 ac
product a bc = 1 abc
product b one = 1 b
product b a = -1 ab
product b c = 1 bc
product b ac = -1 abc
product c one = 1 c
product c a = -1 ac
product c b = -1 bc
product c ab = 1 abc
product ab one = 1 ab
product ab c = 1 abc
product ac one = 1 ac
product ac b = -1 abc
product bc one = 1 bc
product bc a = 1 abc
product abc one = 1 abc
d c = 1 ab
inner-product monomial-orthonormal
)ALG";
const char* k_h3gbv = R"ALG(hptk-algebra 1
name H3GBV
scalars rational
basis one 0
basis e1 -1
basis e2 -1
basis e3 -1
basis e1e2 -2
basis e1e3 -2
basis e2e3 -2
basis e1e2e3 -3
unit one
product one one = 1 one
product one e1 = 1 e1
product one e2 = 1 e2
product one e3 = 1 e3
product one e1e2 = 1 e1e2
product one e1e3 = 1 e1e3
product one e2e3 = 1 e2e3
product one e1e2e3 = 1 e1e2e3
product e1 one = 1 e1
product e1 e2 = 1 e1e2
product e1 e3 = 1 e1e3
product e1 e2e3 = 1 e1e2e3
product e2 one = 1 e2
product e2 e1 = -1 e1e2
product e2 e3 = 1 e2e3
product e2 e1e3 = -1 e1e2e3
product e3 one = 1 e3
product e3 e1 = -1 e1e3
product e3 e2 = -1 e2e3
product e3 e1e2 = 1 e1e2e3
product e1e2 one = 1 e1e2
product e1e2 e3 = 1 e1e2e3
product e1e3 one = 1 e1e3
product e1e3 e2 = -1 e1e2e3
product e2e3 one = 1 e2e3
product e2e3 e1 = 1 e1e2e3
product e1e2e3 one = 1 e1e2e3
delta e1e2 = 1 e3
inner-product monomial-orthonormal
)ALG";
const char* k_mat2 = R"ALG(hptk-algebra 1
name MAT2
scalars rational
basis m11 0
basis m12 0
basis m21 0
basis m22 0
basis xm11 1
basis xm12 1
basis xm21 1
basis xm22 1
product m11 m11 = 1 m11
product m11 m12 = 1 m12
product m11 xm11 = 1 xm11
product m11 xm12 = 1 xm12
product m12 m21 = 1 m11
product m12 m22 = 1 m12
product m12 xm21 = 1 xm11
product m12 xm22 = 1 xm12
product m21 m11 = 1 m21
product m21 m12 = 1 m22
product m21 xm11 = 1 xm21
product m21 xm12 = 1 xm22
product m22 m21 = 1 m21
product m22 m22 = 1 m22
product m22 xm21 = 1 xm21
product m22 xm22 = 1 xm22
product xm11 m11 = 1 xm11
product xm11 m12 = 1 xm12
product xm12 m21 = 1 xm11
product xm12 m22 = 1 xm12
product xm21 m11 = 1 xm21
product xm21 m12 = 1 xm22
product xm22 m21 = 1 xm21
product xm22 m22 = 1 xm22
d m11 = -1 xm12
d m21 = 1 xm11 -1 xm22
d m22 = 1 xm12
bracket-shift 0
bracket m11 m12 = 1 m12
bracket m11 m21 = -1 m21
bracket m11 xm12 = 1 xm12
bracket m11 xm21 = -1 xm21
bracket m12 m11 = -1 m12
bracket m12 m21 = 1 m11 -1 m22
bracket m12 m22 = 1 m12
bracket m12 xm11 = -1 xm12
bracket m12 xm21 = 1 xm11 -1 xm22
bracket m12 xm22 = 1 xm12
bracket m21 m11 = 1 m21
bracket m21 m12 = -1 m11 1 m22
bracket m21 m22 = -1 m21
bracket m21 xm11 = 1 xm21
bracket m21 xm12 = -1 xm11 1 xm22
bracket m21 xm22 = -1 xm21
bracket m22 m12 = -1 m12
bracket m22 m21 = 1 m21
bracket m22 xm12 = -1 xm12
bracket m22 xm21 = 1 xm21
bracket xm11 m12 = 1 xm12
bracket xm11 m21 = -1 xm21
bracket xm12 m11 = -1 xm12
bracket xm12 m21 = 1 xm11 -1 xm22
bracket xm12 m22 = 1 xm12
bracket xm21 m11 = 1 xm21
bracket xm21 m12 = -1 xm11 1 xm22
bracket xm21 m22 = -1 xm21
bracket xm22 m12 = -1 xm12
bracket xm22 m21 = 1 xm21
inner-product monomial-orthonormal
)ALG";
} // namespace

std::vector<std::string> corpus_names() { return {"t2", "d2", "h3ce", "h3gbv", "mat2"}; }

std::string corpus_document(const std::string& name) {
    if (name == "t2") return k_t2;
    if (name == "d2") return k_d2;
    if (name == "h3ce") return k_h3ce;
    if (name == "h3gbv") return k_h3gbv;
    if (name == "mat2") return k_mat2;
    fail_parse("unknown corpus model '" + name + "'");
}

} // namespace hptk

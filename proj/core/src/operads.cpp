#include "oforge/operads.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <fmt/format.h>

namespace oforge {

// ---------------------------------------------------------------- EndOperad

EndOperad::EndOperad(SpacePtr V, int arity_cap)
    : V_(std::move(V)), cap_(arity_cap) {}

std::string EndOperad::name() const {
    return fmt::format("End[{}]", V_->name());
}

TensorIndex EndOperad::tin(int n) const {
    return TensorIndex(std::vector<int>(n, V_->dim()));
}

int EndOperad::dim(int n) const {
    if (n < 0 || n > cap_) return 0;
    long long d = V_->dim();
    long long p = 1;
    for (int j = 0; j < n; ++j) p *= V_->dim();
    return static_cast<int>(d * p);
}

int EndOperad::degree(int n, int i) const {
    auto [out, in] = split(n, i);
    int d = V_->degree(out);
    for (int j : in) d -= V_->degree(j);
    return d;
}

std::string EndOperad::label(int n, int i) const {
    auto [out, in] = split(n, i);
    std::string s = "E[" + V_->label(out) + ";";
    for (int j = 0; j < n; ++j) s += (j ? "," : "") + V_->label(in[j]);
    return s + "]";
}

SparseVec EndOperad::unit() const { return SparseVec::unit(index_of(1, 0, {0})); }

bool EndOperad::has_differential() const { return V_->has_differential(); }

int EndOperad::index_of(int n, int out, const std::vector<int>& in) const {
    return out * static_cast<int>(tin(n).total()) + tin(n).flatten(in);
}

std::pair<int, std::vector<int>> EndOperad::split(int n, int i) const {
    TensorIndex ti = tin(n);
    int tot = static_cast<int>(ti.total());
    return {i / tot, ti.unflatten(i % tot)};
}

SparseVec EndOperad::d_basis(int n, int i) const {
    if (!V_->has_differential()) return {};
    auto [out, in] = split(n, i);
    // d(E) = d_V o E - (-1)^{|E|} E o d_{V^{(x)n}}
    SparseVec res;
    for (const auto& [o2, c] : V_->d().col(out).terms())
        res.add(index_of(n, o2, in), c);
    // E o d: d hits the basis functional contravariantly. The basis element
    // E_{out,in} is dual in its inputs, so precomposition with d transposes:
    // (E_{out,in} o d)(x) = E(dx); on basis x this is nonzero when some
    // d(x_j) contains in_j, i.e. we must sum over x with x_j in d^{-1}.
    int deg = degree(n, i);
    const SparseMat dT = V_->d().transpose();
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) degs[j] = V_->degree(in[j]);
    for (int j = 0; j < n; ++j) {
        int prefix = 0;
        for (int l = 0; l < j; ++l) prefix += degs[l];
        // replace in_j by each preimage x_j with coefficient <in_j, d x_j>
        for (const auto& [xj, c] : dT.col(in[j]).terms()) {
            auto in2 = in;
            in2[j] = xj;
            // sign: d crossing x_1..x_{j-1} (degrees AFTER replacement differ
            // only at slot j, which is not crossed)
            Rat coeff = c * sign_pow(prefix) * sign_pow(deg + 1);
            // -(-1)^{|E|} overall, and (E o (1x..xd x..x1)) evaluation
            res.add(index_of(n, out, in2), coeff);
        }
    }
    return res;
}

SparseVec EndOperad::act_adj_basis(int n, int t, int i) const {
    auto [out, in] = split(n, i);
    // f^sigma = f o act(sigma): on the dual input slots this *permutes the
    // in-tuple by sigma^{-1} slots*: E_{out,in}^sigma = sign * E_{out, in'},
    // in'_k = in_{sigma(k)}; for adjacent sigma = s_t this swaps t,t+1.
    // sign: Koszul for the two swapped inputs.
    std::vector<int> in2 = in;
    std::swap(in2[t - 1], in2[t]);
    Rat sg = sign_pow(V_->degree(in[t - 1]) * V_->degree(in[t]));
    return SparseVec::unit(index_of(n, out, in2), sg);
}

SparseVec EndOperad::compose_basis(int m, int i, int n, int a, int b) const {
    if (m + n - 1 > cap_)
        throw TruncationError(fmt::format("End compose beyond cap {}", cap_));
    auto [aout, ain] = split(m, a);
    auto [bout, bin] = split(n, b);
    if (ain[i - 1] != bout) return {};
    // (f o_i g) = +- E_{aout, ain[0..i-2] ++ bin ++ ain[i..]}
    // sign: g (degree |g|) crosses inputs 1..i-1 of f
    int prefix = 0;
    for (int l = 0; l < i - 1; ++l) prefix += V_->degree(ain[l]);
    int gdeg = degree(n, b);
    std::vector<int> in;
    in.reserve(m + n - 1);
    for (int l = 0; l < i - 1; ++l) in.push_back(ain[l]);
    for (int l = 0; l < n; ++l) in.push_back(bin[l]);
    for (int l = i; l < m; ++l) in.push_back(ain[l]);
    return SparseVec::unit(index_of(m + n - 1, aout, in),
                           sign_pow(gdeg * prefix));
}

SparseVec EndOperad::evaluate(int n, const SparseVec& f,
                              const std::vector<int>& in) const {
    TensorIndex ti = tin(n);
    int flat = ti.flatten(in);
    int tot = static_cast<int>(ti.total());
    SparseVec out;
    for (const auto& [idx, c] : f.terms())
        if (idx % tot == flat) out.add(idx / tot, c);
    return out;
}

std::shared_ptr<const EndOperad> suspension_operad(int cap) {
    return std::make_shared<EndOperad>(point_space("s", 1), cap);
}

std::shared_ptr<const EndOperad> desuspension_operad(int cap) {
    return std::make_shared<EndOperad>(point_space("s-", -1), cap);
}

// -------------------------------------------------------------- TableOperad

TableOperad::TableOperad(std::string name, SModule data, int unit_index,
                         ComposeFn compose)
    : name_(std::move(name)), data_(std::move(data)), unit_index_(unit_index),
      compose_(std::move(compose)) {
    for (const auto& sp : data_.comp)
        if (sp && sp->has_differential()) has_d_ = true;
}

SparseVec TableOperad::d_basis(int n, int i) const {
    if (!data_.comp[n] || !data_.comp[n]->has_differential()) return {};
    return data_.comp[n]->d().col(i);
}

SparseVec TableOperad::compose_basis(int m, int i, int n, int a, int b) const {
    if (m + n - 1 > data_.arity_cap)
        throw TruncationError(
            fmt::format("{} compose beyond cap {}", name_, data_.arity_cap));
    return compose_(m, i, n, a, b);
}

// ----------------------------------------------------------------- Hadamard

HadamardOperad::HadamardOperad(OperadPtr P, OperadPtr Q)
    : P_(std::move(P)), Q_(std::move(Q)),
      cap_(std::min(P_->arity_cap(), Q_->arity_cap())) {}

std::string HadamardOperad::name() const {
    return fmt::format("({}(x){})", P_->name(), Q_->name());
}

int HadamardOperad::degree(int n, int i) const {
    auto [a, b] = split(n, i);
    return P_->degree(n, a) + Q_->degree(n, b);
}

std::string HadamardOperad::label(int n, int i) const {
    auto [a, b] = split(n, i);
    return P_->label(n, a) + "(x)" + Q_->label(n, b);
}

SparseVec HadamardOperad::unit() const {
    SparseVec out;
    for (const auto& [a, ca] : P_->unit().terms())
        for (const auto& [b, cb] : Q_->unit().terms())
            out.add(pair_index(1, a, b), ca * cb);
    return out;
}

SparseVec HadamardOperad::d_basis(int n, int i) const {
    auto [a, b] = split(n, i);
    SparseVec out;
    for (const auto& [a2, c] : P_->d_basis(n, a).terms())
        out.add(pair_index(n, a2, b), c);
    Rat sg = sign_pow(P_->degree(n, a));
    for (const auto& [b2, c] : Q_->d_basis(n, b).terms())
        out.add(pair_index(n, a, b2), sg * c);
    return out;
}

SparseVec HadamardOperad::act_adj_basis(int n, int t, int i) const {
    auto [a, b] = split(n, i);
    SparseVec out;
    for (const auto& [a2, ca] : P_->act_adj_basis(n, t, a).terms())
        for (const auto& [b2, cb] : Q_->act_adj_basis(n, t, b).terms())
            out.add(pair_index(n, a2, b2), ca * cb);
    return out;
}

SparseVec HadamardOperad::compose_basis(int m, int i, int n, int a,
                                        int b) const {
    if (m + n - 1 > cap_)
        throw TruncationError("Hadamard compose beyond cap");
    auto [pa, qa] = split(m, a);
    auto [pb, qb] = split(n, b);
    // (x (x) y) o_i (x' (x) y') = (-1)^{|y||x'|} (x o x') (x) (y o y')
    Rat sg = sign_pow(Q_->degree(m, qa) * P_->degree(n, pb));
    SparseVec xs = P_->compose(m, i, SparseVec::unit(pa), n,
                               SparseVec::unit(pb));
    SparseVec ys = Q_->compose(m, i, SparseVec::unit(qa), n,
                               SparseVec::unit(qb));
    SparseVec out;
    for (const auto& [x, cx] : xs.terms())
        for (const auto& [y, cy] : ys.terms())
            out.add(pair_index(m + n - 1, x, y), sg * cx * cy);
    return out;
}

// -------------------------------------------------------------- stock: Com

namespace {

SModule com_smodule(int cap) {
    SModule m;
    m.arity_cap = cap;
    m.comp.resize(cap + 1);
    m.act.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        m.comp[n] = make_space(fmt::format("Com({})", n),
                               {fmt::format("mu{}", n)}, {0});
        m.act[n].assign(std::max(0, n - 1), SparseMat(1, 1));
        for (int t = 1; t < n; ++t) m.act[n][t - 1].add_entry(0, 0, Rat(1));
    }
    return m;
}

// word of m_sigma: (sigma^{-1}(1), ..., sigma^{-1}(n))
std::vector<int> perm_word(const Perm& sigma) {
    Perm inv = sigma.inverse();
    std::vector<int> w(sigma.n());
    for (int k = 1; k <= sigma.n(); ++k) w[k - 1] = inv.map1(k);
    return w;
}

Perm word_perm(const std::vector<int>& w) {
    return Perm::from_images(w).inverse();
}

} // namespace

OperadPtr com_operad(int cap) {
    return std::make_shared<TableOperad>(
        "Com", com_smodule(cap), 0,
        [](int, int, int, int, int) { return SparseVec::unit(0); });
}

int ass_index(const Perm& sigma) {
    // rank in lexicographic order of image sequences
    int n = sigma.n();
    std::vector<int> img = sigma.images0();
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 0);
    long long rank = 0;
    for (int k = 0; k < n; ++k) {
        auto it = std::find(avail.begin(), avail.end(), img[k]);
        long long below = it - avail.begin();
        long long f = 1;
        for (int j = 2; j <= n - 1 - k; ++j) f *= j;
        rank += below * f;
        avail.erase(it);
    }
    return static_cast<int>(rank);
}

Perm ass_perm(int n, int index) {
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 1);
    std::vector<int> img;
    long long rest = index;
    for (int k = n; k >= 1; --k) {
        long long f = 1;
        for (int j = 2; j <= k - 1; ++j) f *= j;
        long long q = rest / f;
        rest %= f;
        img.push_back(avail[q]);
        avail.erase(avail.begin() + q);
    }
    return Perm::from_images(img);
}

namespace {

SModule ass_smodule(int cap) {
    SModule m;
    m.arity_cap = cap;
    m.comp.resize(cap + 1);
    m.act.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        auto perms = all_perms(n);
        std::vector<std::string> labels;
        for (const auto& p : perms) labels.push_back("m" + p.str());
        m.comp[n] = make_space(fmt::format("Ass({})", n), labels,
                               std::vector<int>(perms.size(), 0));
        m.act[n].assign(std::max(0, n - 1),
                        SparseMat(static_cast<int>(perms.size()),
                                  static_cast<int>(perms.size())));
        for (int t = 1; t < n; ++t) {
            Perm st = Perm::adjacent(n, t);
            for (size_t k = 0; k < perms.size(); ++k)
                m.act[n][t - 1].add_entry(ass_index(perms[k] * st),
                                          static_cast<int>(k), Rat(1));
        }
    }
    return m;
}

SparseVec ass_compose(int m, int i, int n, int a, int b) {
    // word substitution: replace letter i of the outer word by the shifted
    // inner word, shift letters > i by n-1
    std::vector<int> u = perm_word(ass_perm(m, a));
    std::vector<int> v = perm_word(ass_perm(n, b));
    std::vector<int> w;
    w.reserve(m + n - 1);
    for (int letter : u) {
        if (letter == i) {
            for (int x : v) w.push_back(i - 1 + x);
        } else {
            w.push_back(letter > i ? letter + n - 1 : letter);
        }
    }
    return SparseVec::unit(ass_index(word_perm(w)));
}

} // namespace

OperadPtr ass_operad(int cap) {
    return std::make_shared<TableOperad>("Ass", ass_smodule(cap), 0,
                                         ass_compose);
}

// -------------------------------------------------------------- stock: Lie

namespace {

// left-normed bracket words: permutations w of 1..n with w_1 = 1, ordered
// lexicographically
std::vector<std::vector<int>> lie_words(int n) {
    std::vector<std::vector<int>> out;
    if (n == 1) return {{1}};
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 2);
    do {
        std::vector<int> w{1};
        w.insert(w.end(), rest.begin(), rest.end());
        out.push_back(std::move(w));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// expansion of the left-normed bracket [..[[x_{w1},x_{w2}],x_{w3}]..] in the
// group algebra: a sum of words with coefficients +-1
std::map<std::vector<int>, Rat> expand_bracket(const std::vector<int>& w) {
    std::map<std::vector<int>, Rat> acc{{{w[0]}, Rat(1)}};
    for (size_t k = 1; k < w.size(); ++k) {
        std::map<std::vector<int>, Rat> next;
        for (const auto& [word, c] : acc) {
            auto left = word;
            left.push_back(w[k]);
            next[left] += c;
            std::vector<int> right{w[k]};
            right.insert(right.end(), word.begin(), word.end());
            next[right] -= c;
        }
        acc = std::move(next);
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = is_zero(it->second) ? acc.erase(it) : std::next(it);
    return acc;
}

struct LieTables {
    std::vector<SparseMat> into_ass; // [n]: n! x (n-1)!
    std::vector<RowSpace> image;     // for solving back
    std::vector<std::vector<SparseVec>> sol; // reduction bookkeeping
};

SparseMat lie_into_ass_build(int n) {
    auto words = lie_words(n);
    long long fac = 1;
    for (int j = 2; j <= n; ++j) fac *= j;
    SparseMat m(static_cast<int>(fac), static_cast<int>(words.size()));
    for (size_t j = 0; j < words.size(); ++j) {
        SparseVec col;
        for (const auto& [word, c] : expand_bracket(words[j]))
            col.add(ass_index(word_perm(word)), c);
        m.set_col(static_cast<int>(j), std::move(col));
    }
    return m;
}

} // namespace

SparseMat lie_into_ass(int n) {
    static std::mutex mu;
    static std::map<int, SparseMat> memo;
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(n);
    if (it == memo.end()) it = memo.emplace(n, lie_into_ass_build(n)).first;
    return it->second;
}

namespace {

SparseVec ass_to_lie(int n, const SparseVec& v) {
    auto x = solve(lie_into_ass(n), v);
    if (!x)
        throw std::logic_error(
            "ass_to_lie: element not in the image of Lie (internal error)");
    return *x;
}

SModule lie_smodule(int cap) {
    SModule m;
    m.arity_cap = cap;
    m.comp.resize(cap + 1);
    m.act.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        auto words = lie_words(n);
        std::vector<std::string> labels;
        for (const auto& w : words) {
            std::string s = "l[";
            for (size_t k = 0; k < w.size(); ++k)
                s += (k ? " " : "") + std::to_string(w[k]);
            labels.push_back(s + "]");
        }
        m.comp[n] = make_space(fmt::format("Lie({})", n), labels,
                               std::vector<int>(words.size(), 0));
        m.act[n].assign(std::max(0, n - 1),
                        SparseMat(static_cast<int>(words.size()),
                                  static_cast<int>(words.size())));
        auto emb = lie_into_ass(n);
        auto assn = ass_smodule(n); // local action tables for arity n
        for (int t = 1; t < n; ++t) {
            for (size_t k = 0; k < words.size(); ++k) {
                SparseVec in_ass = emb.col(static_cast<int>(k));
                SparseVec acted = assn.act[n][t - 1].apply(in_ass);
                m.act[n][t - 1].set_col(static_cast<int>(k),
                                        ass_to_lie(n, acted));
            }
        }
    }
    return m;
}

} // namespace

OperadPtr lie_operad(int cap) {
    auto compose = [](int m, int i, int n, int a, int b) -> SparseVec {
        SparseVec va = lie_into_ass(m).col(a);
        SparseVec vb = lie_into_ass(n).col(b);
        SparseVec res;
        for (const auto& [ia, ca] : va.terms())
            for (const auto& [ib, cb] : vb.terms())
                res.axpy(ca * cb, ass_compose(m, i, n, ia, ib));
        return ass_to_lie(m + n - 1, res);
    };
    return std::make_shared<TableOperad>("Lie", lie_smodule(cap), 0, compose);
}

} // namespace oforge

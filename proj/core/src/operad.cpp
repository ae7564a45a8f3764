#include "oforge/operad.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace oforge {

int SModule::dim(int n) const {
    if (n < 0 || n > arity_cap) return 0;
    if (n >= static_cast<int>(comp.size()) || !comp[n]) return 0;
    return comp[n]->dim();
}

int SModule::degree(int n, int i) const { return comp[n]->degree(i); }

const std::string& SModule::label(int n, int i) const {
    return comp[n]->label(i);
}

std::vector<int> SModule::degrees(int n) const {
    if (dim(n) == 0) return {};
    return comp[n]->degrees();
}

SparseVec SModule::act_adj(int n, int t, const SparseVec& v) const {
    return act[n][t - 1].apply(v);
}

SparseVec SModule::act_perm(int n, const Perm& sigma, const SparseVec& v) const {
    SparseVec out = v;
    for (int t : sigma.adjacent_word()) out = act_adj(n, t, out);
    return out;
}

void SModule::validate() const {
    for (int n = 2; n <= arity_cap; ++n) {
        if (dim(n) == 0) continue;
        const auto& gens = act[n];
        if (static_cast<int>(gens.size()) != n - 1)
            throw std::invalid_argument("SModule: wrong number of generators");
        SparseMat id = SparseMat::identity(dim(n));
        for (int t = 1; t < n; ++t) {
            if (!(gens[t - 1].compose(gens[t - 1]) == id))
                throw std::invalid_argument("SModule: s_t^2 != 1");
            if (t + 1 < n) {
                auto a = gens[t - 1], b = gens[t];
                if (!(a.compose(b).compose(a) == b.compose(a).compose(b)))
                    throw std::invalid_argument("SModule: braid relation fails");
            }
            for (int u = t + 2; u < n; ++u) {
                auto a = gens[t - 1], b = gens[u - 1];
                if (!(a.compose(b) == b.compose(a)))
                    throw std::invalid_argument("SModule: commutation fails");
            }
            if (comp[n]->has_differential()) {
                const auto& d = comp[n]->d();
                if (!(d.compose(gens[t - 1]) == gens[t - 1].compose(d)))
                    throw std::invalid_argument(
                        "SModule: action does not commute with d");
            }
        }
    }
}

SModule single_generator_smodule(int arity, const std::string& label,
                                 int degree, bool sign_action, int cap) {
    SModule m;
    m.arity_cap = cap;
    m.comp.resize(cap + 1);
    m.act.resize(cap + 1);
    m.comp[arity] = make_space(label, {label}, {degree});
    m.act[arity].assign(arity - 1, SparseMat(1, 1));
    for (int t = 1; t < arity; ++t)
        m.act[arity][t - 1].add_entry(0, 0, sign_action ? Rat(-1) : Rat(1));
    return m;
}

SparseVec Operad::d_basis(int, int) const { return {}; }

SparseVec Operad::act_basis(int n, const Perm& sigma, int i) const {
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = act_memo_.find({n, sigma.images0(), i});
        if (it != act_memo_.end()) return it->second;
    }
    SparseVec v = SparseVec::unit(i);
    for (int t : sigma.adjacent_word()) {
        SparseVec next;
        for (const auto& [j, c] : v.terms())
            next.axpy(c, act_adj_basis(n, t, j));
        v = std::move(next);
    }
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        act_memo_.insert({{n, sigma.images0(), i}, v});
    }
    return v;
}

SparseVec Operad::act(int n, const Perm& sigma, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, c] : v.terms()) out.axpy(c, act_basis(n, sigma, i));
    return out;
}

SparseVec Operad::d(int n, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, c] : v.terms()) out.axpy(c, d_basis(n, i));
    return out;
}

SparseVec Operad::compose(int m, int i, const SparseVec& a, int n,
                          const SparseVec& b) const {
    SparseVec out;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            SparseVec term;
            {
                std::lock_guard<std::mutex> lk(memo_mu_);
                auto it = comp_memo_.find({m, i, n, ia, ib});
                if (it != comp_memo_.end()) {
                    out.axpy(ca * cb, it->second);
                    continue;
                }
            }
            term = compose_basis(m, i, n, ia, ib);
            {
                std::lock_guard<std::mutex> lk(memo_mu_);
                comp_memo_.insert({{m, i, n, ia, ib}, term});
            }
            out.axpy(ca * cb, term);
        }
    }
    return out;
}

int subset_slot(int m, int n, const std::vector<int>& S) {
    (void)m;
    (void)n;
    int below = 0;
    int total = m + n - 1;
    std::vector<bool> in_s(total + 1, false);
    for (int s : S) in_s[s] = true;
    for (int l = 1; l < S.front(); ++l)
        if (!in_s[l]) ++below;
    return below + 1;
}

Perm subset_perm(int m, int n, const std::vector<int>& S) {
    int total = m + n - 1;
    if (static_cast<int>(S.size()) != n)
        throw std::invalid_argument("subset_perm: |S| != n");
    std::vector<bool> in_s(total + 1, false);
    for (int s : S) in_s[s] = true;
    std::vector<int> complement;
    for (int l = 1; l <= total; ++l)
        if (!in_s[l]) complement.push_back(l);
    int j = subset_slot(m, n, S);
    // tau: consecutive layout -> target labels; consecutive layout has the
    // inner block at positions j..j+n-1
    std::vector<int> tau(total);
    for (int t = 0; t < j - 1; ++t) tau[t] = complement[t];
    for (int t = 0; t < n; ++t) tau[j - 1 + t] = S[t];
    for (int t = j - 1; t < static_cast<int>(complement.size()); ++t)
        tau[n + t] = complement[t];
    return Perm::from_images(tau);
}

SparseVec Operad::compose_subset(int m, const SparseVec& a, int n,
                                 const SparseVec& b,
                                 const std::vector<int>& S) const {
    int j = subset_slot(m, n, S);
    SparseVec cons = compose(m, j, a, n, b);
    Perm tau = subset_perm(m, n, S);
    if (tau.is_identity()) return cons;
    return act(m + n - 1, tau.inverse(), cons);
}

SparseVec Operad::gamma(
    int k, const SparseVec& a,
    const std::vector<std::pair<int, SparseVec>>& args) const {
    if (static_cast<int>(args.size()) != k)
        throw std::invalid_argument("gamma: wrong argument count");
    SparseVec acc = a;
    int m = k;
    int pos = 1;
    for (const auto& [nj, bj] : args) {
        acc = compose(m, pos, acc, nj, bj);
        m += nj - 1;
        pos += nj;
    }
    return acc;
}

SparseVec Operad::gamma_sigma(
    int k, const SparseVec& a,
    const std::vector<std::pair<int, SparseVec>>& args,
    const Perm& sigma) const {
    SparseVec g = gamma(k, a, args);
    if (sigma.is_identity()) return g;
    return act(sigma.n(), sigma, g);
}

std::vector<int> Operad::degrees(int n) const {
    std::vector<int> out(dim(n));
    for (int i = 0; i < dim(n); ++i) out[i] = degree(n, i);
    return out;
}

SpacePtr Operad::space(int n) const {
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        auto it = space_memo_.find(n);
        if (it != space_memo_.end()) return it->second;
    }
    std::vector<std::string> labels(dim(n));
    std::vector<int> degs(dim(n));
    for (int i = 0; i < dim(n); ++i) {
        labels[i] = label(n, i);
        degs[i] = degree(n, i);
    }
    auto sp = std::make_shared<Space>(fmt::format("{}({})", name(), n),
                                      std::move(labels), std::move(degs));
    if (has_differential()) {
        SparseMat d(dim(n), dim(n));
        for (int i = 0; i < dim(n); ++i) d.set_col(i, d_basis(n, i));
        sp->set_differential(std::move(d));
    }
    {
        std::lock_guard<std::mutex> lk(memo_mu_);
        space_memo_[n] = sp;
    }
    return sp;
}

void CheckReport::fail(std::string msg) {
    ok = false;
    if (!detail.empty()) detail += "\n";
    detail += std::move(msg);
}

void CheckReport::merge(const CheckReport& o) {
    ok = ok && o.ok;
    checked += o.checked;
    skipped += o.skipped;
    if (!o.detail.empty()) {
        if (!detail.empty()) detail += "\n";
        detail += o.detail;
    }
}

CheckReport check_unit(const Operad& P, int max_arity) {
    CheckReport rep;
    SparseVec one = P.unit();
    for (int n = 1; n <= std::min(max_arity, P.arity_cap()); ++n) {
        for (int i = 0; i < P.dim(n); ++i) {
            SparseVec x = SparseVec::unit(i);
            try {
                if (!(P.compose(1, 1, one, n, x) == x))
                    rep.fail(fmt::format("{}: 1 o x != x at ({}, {})", P.name(),
                                         n, i));
                for (int pos = 1; pos <= n; ++pos)
                    if (!(P.compose(n, pos, x, 1, one) == x))
                        rep.fail(fmt::format("{}: x o_{} 1 != x at ({}, {})",
                                             P.name(), pos, n, i));
                ++rep.checked;
            } catch (const TruncationError&) {
                ++rep.skipped;
            }
        }
    }
    return rep;
}

CheckReport check_associativity(const Operad& P, int max_arity) {
    CheckReport rep;
    int cap = std::min(max_arity, P.arity_cap());
    for (int l = 1; l <= cap; ++l)
        for (int m = 1; m <= cap; ++m)
            for (int n = 1; n <= cap; ++n) {
                if (l + m - 1 > cap || l + m + n - 2 > cap) continue;
                for (int a = 0; a < P.dim(l); ++a)
                    for (int b = 0; b < P.dim(m); ++b)
                        for (int c = 0; c < P.dim(n); ++c) {
                            SparseVec va = SparseVec::unit(a),
                                      vb = SparseVec::unit(b),
                                      vc = SparseVec::unit(c);
                            int db = P.degree(m, b), dc = P.degree(n, c);
                            try {
                                // sequential
                                for (int i = 1; i <= l; ++i)
                                    for (int j = 1; j <= m; ++j) {
                                        auto lhs = P.compose(
                                            l + m - 1, i - 1 + j,
                                            P.compose(l, i, va, m, vb), n, vc);
                                        auto rhs = P.compose(
                                            l, i, va, m + n - 1,
                                            P.compose(m, j, vb, n, vc));
                                        if (!(lhs == rhs))
                                            rep.fail(fmt::format(
                                                "{}: sequential axiom fails "
                                                "l={} m={} n={} a={} b={} c={} "
                                                "i={} j={}",
                                                P.name(), l, m, n, a, b, c, i,
                                                j));
                                    }
                                // parallel
                                for (int i = 1; i <= l; ++i)
                                    for (int k = i + 1; k <= l; ++k) {
                                        auto lhs = P.compose(
                                            l + m - 1, k - 1 + m,
                                            P.compose(l, i, va, m, vb), n, vc);
                                        auto rhs =
                                            P.compose(l + n - 1, i,
                                                      P.compose(l, k, va, n, vc),
                                                      m, vb) *
                                            sign_pow(db * dc);
                                        if (!(lhs == rhs))
                                            rep.fail(fmt::format(
                                                "{}: parallel axiom fails "
                                                "l={} m={} n={} a={} b={} c={} "
                                                "i={} k={}",
                                                P.name(), l, m, n, a, b, c, i,
                                                k));
                                    }
                                ++rep.checked;
                            } catch (const TruncationError&) {
                                ++rep.skipped;
                            }
                        }
            }
    return rep;
}

CheckReport check_equivariance(const Operad& P, int max_arity) {
    CheckReport rep;
    int cap = std::min(max_arity, P.arity_cap());
    for (int m = 1; m <= cap; ++m)
        for (int n = 1; n <= cap; ++n) {
            if (m + n - 1 > cap) continue;
            for (int a = 0; a < P.dim(m); ++a)
                for (int b = 0; b < P.dim(n); ++b) {
                    SparseVec va = SparseVec::unit(a), vb = SparseVec::unit(b);
                    try {
                        for (int i = 1; i <= m; ++i) {
                            // outer generator: sigma = s_t acting on a.
                            // (a^sigma) o_i b = (a o_{sigma(i)} b)^{sigma o_i id}
                            for (int t = 1; t < m; ++t) {
                                Perm sg = Perm::adjacent(m, t);
                                auto lhs = P.compose(
                                    m, i, P.act(m, sg, va), n, vb);
                                std::vector<int> sizes(m, 1);
                                sizes[i - 1] = n;
                                Perm big = block_perm(sg, sizes);
                                auto rhs = P.act(
                                    m + n - 1, big,
                                    P.compose(m, sg.map1(i), va, n, vb));
                                if (!(lhs == rhs))
                                    rep.fail(fmt::format(
                                        "{}: outer equivariance fails m={} "
                                        "n={} a={} b={} i={} t={}",
                                        P.name(), m, n, a, b, i, t));
                            }
                            // inner generator: a o_i (b^tau) = (a o_i b)^{id o_i tau}
                            for (int t = 1; t < n; ++t) {
                                Perm tu = Perm::adjacent(n, t);
                                auto lhs =
                                    P.compose(m, i, va, n, P.act(n, tu, vb));
                                std::vector<Perm> taus;
                                for (int s = 1; s <= m; ++s)
                                    taus.push_back(s == i ? tu : Perm(1));
                                Perm big = sum_perm(taus);
                                auto rhs = P.act(m + n - 1, big,
                                                 P.compose(m, i, va, n, vb));
                                if (!(lhs == rhs))
                                    rep.fail(fmt::format(
                                        "{}: inner equivariance fails m={} "
                                        "n={} a={} b={} i={} t={}",
                                        P.name(), m, n, a, b, i, t));
                            }
                        }
                        ++rep.checked;
                    } catch (const TruncationError&) {
                        ++rep.skipped;
                    }
                }
        }
    return rep;
}

CheckReport check_derivation(const Operad& P, int max_arity) {
    CheckReport rep;
    int cap = std::min(max_arity, P.arity_cap());
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i < P.dim(n); ++i) {
            try {
                if (!P.d(n, P.d_basis(n, i)).empty())
                    rep.fail(fmt::format("{}: d^2 != 0 at ({},{})", P.name(), n,
                                         i));
                ++rep.checked;
            } catch (const TruncationError&) {
                ++rep.skipped;
            }
        }
    for (int m = 1; m <= cap; ++m)
        for (int n = 1; n <= cap; ++n) {
            if (m + n - 1 > cap) continue;
            for (int a = 0; a < P.dim(m); ++a)
                for (int b = 0; b < P.dim(n); ++b)
                    for (int i = 1; i <= m; ++i) {
                        SparseVec va = SparseVec::unit(a),
                                  vb = SparseVec::unit(b);
                        try {
                            auto lhs =
                                P.d(m + n - 1, P.compose(m, i, va, n, vb));
                            auto rhs =
                                P.compose(m, i, P.d_basis(m, a), n, vb) +
                                P.compose(m, i, va, n, P.d_basis(n, b)) *
                                    sign_pow(P.degree(m, a));
                            if (!(lhs == rhs))
                                rep.fail(fmt::format(
                                    "{}: derivation fails m={} n={} a={} b={} "
                                    "i={}",
                                    P.name(), m, n, a, b, i));
                            ++rep.checked;
                        } catch (const TruncationError&) {
                            ++rep.skipped;
                        }
                    }
        }
    return rep;
}

CheckReport check_action(const Operad& P, int max_arity) {
    CheckReport rep;
    int cap = std::min(max_arity, P.arity_cap());
    for (int n = 2; n <= cap; ++n) {
        for (int i = 0; i < P.dim(n); ++i) {
            SparseVec v = SparseVec::unit(i);
            for (int t = 1; t < n; ++t) {
                Perm st = Perm::adjacent(n, t);
                if (!(P.act(n, st, P.act(n, st, v)) == v))
                    rep.fail(fmt::format("{}: s_{}^2 != 1 at ({},{})", P.name(),
                                         t, n, i));
                if (t + 1 < n) {
                    Perm su = Perm::adjacent(n, t + 1);
                    auto lhs = P.act(n, st, P.act(n, su, P.act(n, st, v)));
                    auto rhs = P.act(n, su, P.act(n, st, P.act(n, su, v)));
                    if (!(lhs == rhs))
                        rep.fail(fmt::format("{}: braid fails at ({},{})",
                                             P.name(), n, i));
                }
            }
            ++rep.checked;
        }
    }
    return rep;
}

} // namespace oforge

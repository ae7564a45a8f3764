#include "oforge/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <fmt/format.h>

namespace oforge {

namespace {

int raw_min_leaf(const RawTree& t, int v, std::vector<int>& memo) {
    if (memo[v] >= 0) return memo[v];
    int m = 1 << 30;
    for (int c : t.children[v])
        m = std::min(m, c >= 0 ? c : raw_min_leaf(t, ~c, memo));
    return memo[v] = m;
}

void raw_depths(const RawTree& t, int v, int d, std::vector<int>& out) {
    out[v] = d;
    for (int c : t.children[v])
        if (c < 0) raw_depths(t, ~c, d + 1, out);
}

} // namespace

bool TreeShape::operator<(const TreeShape& o) const {
    if (arity != o.arity) return arity < o.arity;
    if (weight() != o.weight()) return weight() < o.weight();
    return str() < o.str();
}

int TreeShape::parent(int v) const {
    for (int w = 0; w < weight(); ++w)
        for (int c : children[w])
            if (c < 0 && ~c == v) return w;
    return -1;
}

int TreeShape::depth(int v) const {
    int d = 0;
    while (true) {
        int p = parent(v);
        if (p < 0) return d;
        v = p;
        ++d;
    }
}

int TreeShape::min_leaf(int v) const {
    int m = 1 << 30;
    for (int c : children[v])
        m = std::min(m, c >= 0 ? c : min_leaf(~c));
    return m;
}

std::vector<int> TreeShape::leaves_below(int v) const {
    std::vector<int> out;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (int c : children[w]) {
            if (c >= 0)
                out.push_back(c);
            else
                stack.push_back(~c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
std::string shape_str(const TreeShape& t, int v) {
    std::string s = "(";
    for (size_t k = 0; k < t.children[v].size(); ++k) {
        if (k) s += " ";
        int c = t.children[v][k];
        s += c >= 0 ? std::to_string(c) : shape_str(t, ~c);
    }
    return s + ")";
}
} // namespace

std::string TreeShape::str() const {
    if (is_trivial()) return "1";
    return shape_str(*this, 0);
}

CanonResult canonicalize(const RawTree& raw) {
    int w = static_cast<int>(raw.children.size());
    CanonResult res;
    res.shape.arity = raw.arity;
    if (w == 0) return res;

    std::vector<int> minleaf(w, -1);
    for (int v = 0; v < w; ++v) raw_min_leaf(raw, v, minleaf);
    std::vector<int> depth(w, -1);
    raw_depths(raw, raw.root, 0, depth);
    for (int v = 0; v < w; ++v)
        if (depth[v] < 0) throw std::invalid_argument("disconnected tree");

    // vertex order: (depth, min leaf)
    std::vector<int> order(w);
    for (int v = 0; v < w; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (depth[a] != depth[b]) return depth[a] < depth[b];
        return minleaf[a] < minleaf[b];
    });
    std::vector<int> newid(w);
    for (int p = 0; p < w; ++p) newid[order[p]] = p;

    res.shape.children.resize(w);
    res.input_perm.resize(w);
    for (int v = 0; v < w; ++v) {
        int r = static_cast<int>(raw.children[v].size());
        std::vector<int> idx(r);
        for (int k = 0; k < r; ++k) idx[k] = k;
        auto key = [&](int k) {
            int c = raw.children[v][k];
            return c >= 0 ? c : minleaf[~c];
        };
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return key(a) < key(b); });
        // o(new position) = old position, 1-based
        std::vector<int> o(r);
        for (int k = 0; k < r; ++k) o[k] = idx[k] + 1;
        res.input_perm[v] = Perm::from_images(o);
        std::vector<int> cs(r);
        for (int k = 0; k < r; ++k) {
            int c = raw.children[v][idx[k]];
            cs[k] = c >= 0 ? c : ~newid[~c];
        }
        res.shape.children[newid[v]] = std::move(cs);
    }
    res.vertex_perm = std::move(newid);
    return res;
}

namespace {

// trees over an explicit sorted leaf-label set; weight budget
void shapes_over(const std::vector<int>& leaves, int max_weight,
                 std::vector<RawTree>& out);

// partitions of `leaves` (sorted) into >= 2 blocks; calls f(blocks)
void partitions_rec(const std::vector<int>& rest,
                    std::vector<std::vector<int>>& blocks,
                    const std::function<void()>& f) {
    if (rest.empty()) {
        if (blocks.size() >= 2) f();
        return;
    }
    int x = rest.front();
    std::vector<int> rem(rest.begin() + 1, rest.end());
    size_t existing = blocks.size();
    for (size_t j = 0; j < existing; ++j) {
        blocks[j].push_back(x);
        partitions_rec(rem, blocks, f);
        blocks[j].pop_back();
    }
    blocks.push_back({x});
    partitions_rec(rem, blocks, f);
    blocks.pop_back();
}

void shapes_over(const std::vector<int>& leaves, int max_weight,
                 std::vector<RawTree>& out) {
    out.clear();
    if (leaves.size() < 2 || max_weight < 1) return;
    std::vector<std::vector<int>> blocks;
    partitions_rec(leaves, blocks, [&]() {
        // root with one child per block
        std::vector<std::vector<RawTree>> choices(blocks.size());
        std::vector<std::vector<std::vector<int>>> ignored;
        bool feasible = true;
        for (size_t b = 0; b < blocks.size() && feasible; ++b) {
            if (blocks[b].size() == 1) continue; // plain leaf
            auto sorted = blocks[b];
            std::sort(sorted.begin(), sorted.end());
            shapes_over(sorted, max_weight - 1, choices[b]);
            if (choices[b].empty()) feasible = false;
        }
        if (!feasible) return;
        // cartesian product over block choices with weight budget
        std::vector<int> pick(blocks.size(), 0);
        while (true) {
            int total = 1;
            for (size_t b = 0; b < blocks.size(); ++b)
                if (blocks[b].size() > 1)
                    total += static_cast<int>(choices[b][pick[b]].children.size());
            if (total <= max_weight) {
                RawTree t;
                t.arity = 0;
                t.root = 0;
                t.children.push_back({});
                for (size_t b = 0; b < blocks.size(); ++b) {
                    if (blocks[b].size() == 1) {
                        t.children[0].push_back(blocks[b][0]);
                    } else {
                        const RawTree& sub = choices[b][pick[b]];
                        int off = static_cast<int>(t.children.size());
                        t.children[0].push_back(~off);
                        for (const auto& cs : sub.children) {
                            std::vector<int> shifted = cs;
                            for (int& c : shifted)
                                if (c < 0) c = ~(~c + off);
                            t.children.push_back(std::move(shifted));
                        }
                    }
                }
                out.push_back(std::move(t));
            }
            // next pick
            size_t b = 0;
            for (; b < blocks.size(); ++b) {
                if (blocks[b].size() == 1) continue;
                if (++pick[b] < static_cast<int>(choices[b].size())) break;
                pick[b] = 0;
            }
            if (b == blocks.size()) break;
        }
    });
}

} // namespace

std::vector<TreeShape> enumerate_shapes(int arity, int max_weight) {
    std::vector<TreeShape> shapes;
    if (arity < 2 || max_weight < 1) return shapes;
    std::vector<int> leaves(arity);
    for (int i = 0; i < arity; ++i) leaves[i] = i + 1;
    std::vector<RawTree> raws;
    shapes_over(leaves, max_weight, raws);
    for (auto& r : raws) {
        r.arity = arity;
        shapes.push_back(canonicalize(r).shape);
    }
    std::sort(shapes.begin(), shapes.end());
    shapes.erase(std::unique(shapes.begin(), shapes.end(),
                             [](const TreeShape& a, const TreeShape& b) {
                                 return a == b;
                             }),
                 shapes.end());
    return shapes;
}

std::vector<TreeShape> binary_shapes(int arity) {
    std::vector<TreeShape> out;
    for (auto& s : enumerate_shapes(arity, arity - 1)) {
        bool binary = s.weight() == arity - 1;
        for (int v = 0; binary && v < s.weight(); ++v)
            binary = s.vertex_arity(v) == 2;
        if (binary) out.push_back(std::move(s));
    }
    return out;
}

TreeShape left_comb(int arity) {
    if (arity < 2) throw std::invalid_argument("left_comb needs arity >= 2");
    RawTree t;
    t.arity = arity;
    // vertex k covers leaves 1..k+2; vertex arity-2 is the deepest
    t.children.resize(arity - 1);
    for (int k = 0; k < arity - 1; ++k) {
        if (k == arity - 2)
            t.children[k] = {1, 2};
        else
            t.children[k] = {~(k + 1), arity - k};
    }
    t.root = 0;
    return canonicalize(t).shape;
}

TreeShape corolla(int arity) {
    RawTree t;
    t.arity = arity;
    t.children.resize(1);
    for (int l = 1; l <= arity; ++l) t.children[0].push_back(l);
    t.root = 0;
    return canonicalize(t).shape;
}

Int count_shapes_oracle(int arity, int weight) {
    // f(n,w): trees over n labeled leaves, all arities >= 2, w vertices.
    // Unordered root blocks handled by peeling the block of the minimum.
    static std::map<std::tuple<int, int>, Int> fmemo;
    static std::map<std::tuple<int, int, int>, Int> hmemo;
    std::function<Int(int, int)> f;
    // h(n,w,k): partitions of n labeled leaves into k unordered nonempty
    // blocks, each block carrying a subtree (a bare leaf if singleton),
    // total weight w.
    std::function<Int(int, int, int)> h = [&](int n, int w, int k) -> Int {
        if (k == 0) return (n == 0 && w == 0) ? 1 : 0;
        if (n < k || w < 0) return 0;
        auto key = std::make_tuple(n, w, k);
        auto it = hmemo.find(key);
        if (it != hmemo.end()) return it->second;
        Int total = 0;
        // block containing the smallest remaining leaf has size s
        for (int s = 1; s <= n - k + 1; ++s) {
            Int choose = 1; // C(n-1, s-1)
            for (int j = 1; j < s; ++j) choose = choose * (n - j) / j;
            for (int u = 0; u <= w; ++u) {
                Int sub = f(s, u);
                if (sub == 0) continue;
                total += choose * sub * h(n - s, w - u, k - 1);
            }
        }
        hmemo[key] = total;
        return total;
    };
    f = [&](int n, int w) -> Int {
        if (n == 1) return w == 0 ? 1 : 0;
        if (w < 1) return 0;
        auto key = std::make_tuple(n, w);
        auto it = fmemo.find(key);
        if (it != fmemo.end()) return it->second;
        Int total = 0;
        for (int k = 2; k <= n; ++k) total += h(n, w - 1, k);
        fmemo[key] = total;
        return total;
    };
    return f(arity, weight);
}

CanonResult graft_shape(const TreeShape& t, int i, const TreeShape& u) {
    if (i < 1 || i > t.arity) throw std::invalid_argument("graft leaf index");
    int wt = t.weight(), wu = u.weight();
    RawTree r;
    r.arity = t.arity + u.arity - 1;
    r.children.resize(wt + wu);
    auto relabel_t = [&](int l) {
        return l < i ? l : (l == i ? -1 /*placeholder*/ : l + u.arity - 1);
    };
    if (wt == 0) {
        // t is the trivial tree; the graft is u itself
        RawTree ru;
        ru.arity = r.arity;
        ru.children = u.children;
        ru.root = 0;
        return canonicalize(ru);
    }
    for (int v = 0; v < wt; ++v) {
        for (int c : t.children[v]) {
            if (c < 0) {
                r.children[v].push_back(c);
            } else if (c == i && wu > 0) {
                r.children[v].push_back(~wt); // u's root
            } else if (c == i) {
                r.children[v].push_back(i); // u trivial: leaf keeps label i
            } else {
                r.children[v].push_back(relabel_t(c));
            }
        }
    }
    for (int v = 0; v < wu; ++v)
        for (int c : u.children[v])
            r.children[wt + v].push_back(c >= 0 ? c + i - 1 : ~(~c + wt));
    r.root = 0;
    return canonicalize(r);
}

CanonResult substitute_shape(const TreeShape& t, int v,
                             const TreeShape& inner) {
    if (inner.arity != t.vertex_arity(v))
        throw std::invalid_argument("substitute: arity mismatch");
    if (inner.is_trivial())
        throw std::invalid_argument("substitute: trivial inner tree");
    int wt = t.weight(), wi = inner.weight();
    // old vertex order: t_0..t_{v-1}, inner block, t_{v+1}..
    auto old_of_t = [&](int w) { return w < v ? w : w + wi - 1; };
    auto old_of_inner = [&](int w) { return v + w; };
    RawTree r;
    r.arity = t.arity;
    r.children.resize(wt - 1 + wi);
    for (int w = 0; w < wt; ++w) {
        if (w == v) continue;
        for (int c : t.children[w]) {
            int mapped;
            if (c >= 0)
                mapped = c;
            else if (~c == v)
                mapped = ~old_of_inner(0); // inner root replaces v
            else
                mapped = ~old_of_t(~c);
            r.children[old_of_t(w)].push_back(mapped);
        }
    }
    // inner's leaf j hooks to t's j-th input of v (canonical input order)
    for (int w = 0; w < wi; ++w) {
        for (int c : inner.children[w]) {
            int mapped;
            if (c < 0)
                mapped = ~old_of_inner(~c);
            else {
                int input = t.children[v][c - 1];
                mapped = input >= 0 ? input : ~old_of_t(~input);
            }
            r.children[old_of_inner(w)].push_back(mapped);
        }
    }
    r.root = v == 0 ? old_of_inner(0) : old_of_t(0);
    return canonicalize(r);
}

CanonResult act_shape(const TreeShape& t, const Perm& sigma) {
    if (sigma.n() != t.arity) throw std::invalid_argument("act: arity mismatch");
    RawTree r;
    r.arity = t.arity;
    r.children = t.children;
    Perm inv = sigma.inverse();
    for (auto& cs : r.children)
        for (int& c : cs)
            if (c >= 0) c = inv.map1(c);
    r.root = 0;
    return canonicalize(r);
}

CutResult cut_at_vertex(const TreeShape& t, int v) {
    if (v == 0) throw std::invalid_argument("cannot cut at the root");
    int w = t.weight();
    // collect descendants of v
    std::vector<bool> in_upper(w, false);
    std::vector<int> stack{v};
    in_upper[v] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int c : t.children[x])
            if (c < 0) {
                in_upper[~c] = true;
                stack.push_back(~c);
            }
    }
    std::vector<int> upper_leaves = t.leaves_below(v);
    int cut_key = upper_leaves.front();

    // upper tree: renumber leaves order-preserving
    RawTree up;
    up.arity = static_cast<int>(upper_leaves.size());
    std::vector<int> upper_ids;
    std::vector<int> up_newid(w, -1);
    for (int x = 0; x < w; ++x)
        if (in_upper[x]) {
            up_newid[x] = static_cast<int>(upper_ids.size());
            upper_ids.push_back(x);
        }
    up.children.resize(upper_ids.size());
    auto leaf_rank_upper = [&](int l) {
        return static_cast<int>(std::lower_bound(upper_leaves.begin(),
                                                 upper_leaves.end(), l) -
                                upper_leaves.begin()) +
               1;
    };
    for (size_t k = 0; k < upper_ids.size(); ++k)
        for (int c : t.children[upper_ids[k]])
            up.children[k].push_back(c >= 0 ? leaf_rank_upper(c)
                                            : ~up_newid[~c]);
    up.root = up_newid[v];

    // lower tree
    std::vector<int> lower_leaf_labels; // original labels; cut point = cut_key
    for (int l = 1; l <= t.arity; ++l)
        if (!std::binary_search(upper_leaves.begin(), upper_leaves.end(), l))
            lower_leaf_labels.push_back(l);
    lower_leaf_labels.push_back(cut_key);
    std::sort(lower_leaf_labels.begin(), lower_leaf_labels.end());
    auto leaf_rank_lower = [&](int l) {
        return static_cast<int>(std::lower_bound(lower_leaf_labels.begin(),
                                                 lower_leaf_labels.end(), l) -
                                lower_leaf_labels.begin()) +
               1;
    };
    RawTree lo;
    lo.arity = static_cast<int>(lower_leaf_labels.size());
    std::vector<int> lower_ids;
    std::vector<int> lo_newid(w, -1);
    for (int x = 0; x < w; ++x)
        if (!in_upper[x]) {
            lo_newid[x] = static_cast<int>(lower_ids.size());
            lower_ids.push_back(x);
        }
    lo.children.resize(lower_ids.size());
    for (size_t k = 0; k < lower_ids.size(); ++k)
        for (int c : t.children[lower_ids[k]]) {
            if (c >= 0)
                lo.children[k].push_back(leaf_rank_lower(c));
            else if (~c == v)
                lo.children[k].push_back(leaf_rank_lower(cut_key));
            else
                lo.children[k].push_back(~lo_newid[~c]);
        }
    lo.root = lo_newid[0];

    CanonResult lower_c = canonicalize(lo);
    CanonResult upper_c = canonicalize(up);
    CutResult res;
    res.lower = std::move(lower_c.shape);
    res.upper = std::move(upper_c.shape);
    res.lower_vertices.resize(lower_ids.size());
    for (size_t k = 0; k < lower_ids.size(); ++k)
        res.lower_vertices[lower_c.vertex_perm[k]] = lower_ids[k];
    res.upper_vertices.resize(upper_ids.size());
    for (size_t k = 0; k < upper_ids.size(); ++k)
        res.upper_vertices[upper_c.vertex_perm[k]] = upper_ids[k];
    res.upper_leaves = std::move(upper_leaves);
    res.slot = leaf_rank_lower(cut_key);
    return res;
}

std::vector<int> component_of_vertices(const TreeShape& t,
                                       const std::vector<bool>& cut_above) {
    int w = t.weight();
    std::vector<int> comp(w, -1);
    int next = 0;
    for (int v = 0; v < w; ++v) {
        if (comp[v] >= 0) continue;
        // walk up until a cut edge or an already-labeled vertex
        std::vector<int> path{v};
        int x = v;
        while (true) {
            if (cut_above[x]) break;
            int p = t.parent(x);
            if (p < 0) break;
            if (comp[p] >= 0) {
                x = p;
                path.push_back(p);
                break;
            }
            x = p;
            path.push_back(p);
        }
        int label = comp[x] >= 0 ? comp[x] : next++;
        for (int y : path) comp[y] = label;
    }
    return comp;
}

} // namespace oforge

#pragma once

#include <string>
#include <vector>

#include "oforge/perm.hpp"
#include "oforge/sparse.hpp"

namespace oforge {

// A rooted tree with leaves labeled 1..n and all vertices of arity >= 2, in
// canonical form:
//   * each vertex's inputs are ordered by the minimal leaf below them;
//   * vertices are numbered by (depth, minimal leaf), root first.
// Children are encoded as: leaf l (1-based) as +l, vertex v (0-based) as ~v.
struct TreeShape {
    int arity = 0;
    std::vector<std::vector<int>> children; // children[v], canonical order

    int weight() const { return static_cast<int>(children.size()); }
    int vertex_arity(int v) const {
        return static_cast<int>(children[v].size());
    }
    bool is_trivial() const { return children.empty(); } // the identity tree
    bool operator==(const TreeShape& o) const {
        return arity == o.arity && children == o.children;
    }
    bool operator<(const TreeShape& o) const;
    std::string str() const; // nested parenthesized list, leaves as numbers

    int parent(int v) const;       // -1 for root
    int depth(int v) const;
    int min_leaf(int v) const;
    std::vector<int> leaves_below(int v) const; // sorted leaf labels
};

// Raw tree data before canonicalization: same encoding, any vertex order and
// any child order.
struct RawTree {
    int arity = 0;
    std::vector<std::vector<int>> children;
    int root = 0;
};

// Result of canonicalization: vertex_perm[old] = new vertex id, and per old
// vertex the input reordering o with o(new position) = old position of that
// child (1-based Perm). Decorations transform as x -> x^{o}; a Koszul sign
// arises from reordering the vertex label word by vertex_perm.
struct CanonResult {
    TreeShape shape;
    std::vector<int> vertex_perm;
    std::vector<Perm> input_perm;
};
CanonResult canonicalize(const RawTree& raw);

// All canonical shapes of the given arity with weight (vertex count) in
// [1, max_weight] and every vertex arity >= 2. Sorted by (weight, str).
std::vector<TreeShape> enumerate_shapes(int arity, int max_weight);

// Shapes with every vertex binary (weight n-1); subset of the above.
std::vector<TreeShape> binary_shapes(int arity);

// The left comb: ((...((1 2) 3) ...) n).
TreeShape left_comb(int arity);
// The corolla with one vertex.
TreeShape corolla(int arity);

// Schroeder-type count of canonical shapes, computed independently of the
// enumerator (used as its oracle): number of rooted trees with leaves
// labeled 1..n, all vertices of arity >= 2, exactly w vertices.
Int count_shapes_oracle(int arity, int weight);

// --- shape surgery -------------------------------------------------------
// Each operation returns a CanonResult whose old-vertex list is documented
// below. Grafting and substitution never reorder inputs (all their leaf
// renumberings are monotone); leaf renaming does.

// Grafts u onto leaf i (1-based) of t. Old vertex list: t's vertices then
// u's vertices.
CanonResult graft_shape(const TreeShape& t, int i, const TreeShape& u);

// Substitutes inner at vertex v of t: v's inputs are plugged with inner's
// leaves (inner.arity == t.vertex_arity(v)). Old vertex list:
// t_0 .. t_{v-1}, inner_0 .., t_{v+1} ...
CanonResult substitute_shape(const TreeShape& t, int v, const TreeShape& inner);

// Renames leaf l -> sigma^{-1}(l) (the right action on trees). Old vertex
// list: t's vertices.
CanonResult act_shape(const TreeShape& t, const Perm& sigma);

// Cuts the full subtree at non-root vertex v out of t. Returns (lower shape,
// upper shape); the lower tree keeps a fresh leaf where v was.
// lower_leaf_of[k] (1-based k) gives the original label set mapping: for the
// lower tree, leaf k corresponds either to an original leaf or to the cut
// point; upper_leaves lists the original leaves of the upper part in order.
struct CutResult {
    TreeShape lower;
    TreeShape upper;
    std::vector<int> lower_vertices; // original vertex ids, canonical order
    std::vector<int> upper_vertices;
    std::vector<int> upper_leaves;   // original leaf labels, sorted
    int slot = 0;                    // which input of the *lower tree* (1-based
                                     // leaf index of lower) carries the upper
};
CutResult cut_at_vertex(const TreeShape& t, int v);

// Partition of t's vertices into connected blocks matching a two-level or
// general nesting: used by monadic decomposition. Each block, contracted,
// must reproduce the target nesting; see tree_calculus tests.
// Here: the generic building block is "admissible edge cut sets"; components
// are returned bottom-up. See free_operad.cpp for the users.
std::vector<int> component_of_vertices(const TreeShape& t,
                                       const std::vector<bool>& cut_edge_above);

} // namespace oforge

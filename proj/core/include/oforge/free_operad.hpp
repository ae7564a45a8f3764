#pragma once

#include "oforge/operad.hpp"
#include "oforge/tree.hpp"

#include <map>

namespace oforge {

// Basis bookkeeping for the tree module T(M)(n) up to a weight cap: entries
// are (canonical shape, vertex label tuple), ordered by (weight, shape
// serialization, label index). M must be reduced with components in arities
// >= 2; arity 1 holds the trivial tree only.
class TreeBasis {
public:
    TreeBasis() = default;
    TreeBasis(const SModule& M, int arity, int weight_cap);

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    int shape_count() const { return static_cast<int>(shapes_.size()); }
    const TreeShape& shape(int s) const { return shapes_[s]; }
    int shape_id(const TreeShape& t) const; // -1 if absent
    int offset(int s) const { return offsets_[s]; }
    const TensorIndex& labels(int s) const { return label_idx_[s]; }

    int index_of(const TreeShape& t, const std::vector<int>& labels) const;
    std::pair<int, std::vector<int>> decode(int index) const; // (shape id, labels)
    bool is_trivial_tree(int index) const {
        return arity_ == 1 && index == 0;
    }
    int weight_of(int index) const;
    int degree_of(const SModule& M, int index) const;

private:
    int arity_ = 0;
    int dim_ = 0;
    std::vector<TreeShape> shapes_;
    std::vector<int> offsets_;
    std::vector<TensorIndex> label_idx_;
    std::map<std::string, int> shape_lookup_;
};

// The free operad T(M) truncated at (arity_cap, weight_cap); composition is
// grafting of decorated trees, the action relabels leaves. The differential
// is the derivation induced by the differentials of M (d_1 of bar/cobar
// objects; the quadratic part is added by subclasses).
class FreeOperad : public Operad {
public:
    FreeOperad(std::string name, SModule M, int arity_cap, int weight_cap);

    std::string name() const override { return name_; }
    int arity_cap() const override { return cap_; }
    int dim(int n) const override;
    int degree(int n, int i) const override;
    std::string label(int n, int i) const override;
    SparseVec unit() const override { return SparseVec::unit(0); }
    bool has_differential() const override;
    SparseVec d_basis(int n, int i) const override;
    SparseVec act_adj_basis(int n, int t, int i) const override;
    SparseVec compose_basis(int m, int i, int n, int a, int b) const override;

    int weight_cap() const { return wcap_; }
    int weight(int n, int i) const { return basis(n).weight_of(i); }
    const SModule& module() const { return M_; }
    const TreeBasis& basis(int n) const;

    // corolla decorated by generator (r, label)
    SparseVec corolla_of(int r, int lab) const;

    // reassembles a surgered decorated tree: applies the Koszul sign of the
    // vertex reordering and the input-permutation actions on labels.
    // old_labels[k] = (vertex arity, label index) in the pre-surgery order.
    SparseVec assemble(int n, const CanonResult& cr,
                       const std::vector<std::pair<int, int>>& old_labels,
                       const Rat& coeff) const;

private:
    std::string name_;
    SModule M_;
    int cap_, wcap_;
    std::vector<TreeBasis> bases_;
};

using FreeOperadPtr = std::shared_ptr<const FreeOperad>;

// tree_module: the arity-n component of T(M) with its action, materialized.
SpacePtr tree_module_space(const SModule& M, int n, int weight_cap);

// Monadic composition: evaluates a decorated tree in the operad P by
// contracting inner edges. `values` and `degs` are indexed by the canonical
// vertices of `shape`. `order`, when given, lists the non-root vertices in
// the order they are contracted into their parents (a permutation of
// 1..weight-1); default is deepest-last canonical order (w-1, w-2, ..., 1).
SparseVec evaluate_tree(const Operad& P, const TreeShape& shape,
                        const std::vector<SparseVec>& values,
                        const std::vector<int>& degs,
                        const std::vector<int>& order = {});

// The unique extension of a generator assignment M -> P to T(M) -> P on the
// given basis element (operadic morphism extension, evaluated lazily).
SparseVec free_extend(const FreeOperad& T, const Operad& P,
                      const std::function<SparseVec(int, int)>& gen_image,
                      int n, int idx);

// Hadamard product of S-modules with the pair index scheme a*dimN+b.
SModule smodule_hadamard(const SModule& M, const SModule& N);

// Tree doubling Phi: T(M (x) N) -> T(M) (x) T(N), shape preserved; the
// Koszul sign comes from unzipping the interleaved label word. Returns terms
// ((index in T(M)(n), index in T(N)(n)), coeff).
struct PhiTerm {
    int left;
    int right;
    Rat coeff;
};
std::vector<PhiTerm> phi_double(const FreeOperad& TMN, const FreeOperad& TM,
                                const FreeOperad& TN, int n, int idx);

// The switch map T^tau on a fixed shape: inverse of phi_double's restriction.
SparseVec switch_map(const FreeOperad& TMN, const FreeOperad& TM,
                     const FreeOperad& TN, int n, int left, int right);

} // namespace oforge

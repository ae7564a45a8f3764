#pragma once

#include "oforge/operad.hpp"

namespace oforge {

// End_V: End_V(n) = hom(V^{otimes n}, V) with composition of multilinear maps
// and the conjugation action. Basis index = out * dim(V)^n + flat(in-tuple).
class EndOperad final : public Operad {
public:
    EndOperad(SpacePtr V, int arity_cap);

    std::string name() const override;
    int arity_cap() const override { return cap_; }
    int dim(int n) const override;
    int degree(int n, int i) const override;
    std::string label(int n, int i) const override;
    SparseVec unit() const override;
    bool has_differential() const override;
    SparseVec d_basis(int n, int i) const override;
    SparseVec act_adj_basis(int n, int t, int i) const override;
    SparseVec compose_basis(int m, int i, int n, int a, int b) const override;

    const SpacePtr& carrier() const { return V_; }
    // (out, in-tuple) <-> flat index
    int index_of(int n, int out, const std::vector<int>& in) const;
    std::pair<int, std::vector<int>> split(int n, int i) const;
    // evaluate a hom-space element on a basis tuple of V^{otimes n}
    SparseVec evaluate(int n, const SparseVec& f,
                       const std::vector<int>& in) const;

private:
    TensorIndex tin(int n) const;
    SpacePtr V_;
    int cap_;
};

// The operadic suspension kernel: S = End_{k s} with s of degree one, and its
// inverse S^{-1} = End_{k s^{-1}}. One-dimensional in every arity, S(n)
// concentrated in degree 1-n carrying the sign representation.
std::shared_ptr<const EndOperad> suspension_operad(int cap);      // S
std::shared_ptr<const EndOperad> desuspension_operad(int cap);    // S^{-1}

// Fully tabulated operad: per-arity spaces, adjacent action matrices and
// composition closures. Used for the stock operads.
class TableOperad final : public Operad {
public:
    using ComposeFn =
        std::function<SparseVec(int m, int i, int n, int a, int b)>;

    TableOperad(std::string name, SModule data, int unit_index,
                ComposeFn compose);

    std::string name() const override { return name_; }
    int arity_cap() const override { return data_.arity_cap; }
    int dim(int n) const override { return data_.dim(n); }
    int degree(int n, int i) const override { return data_.degree(n, i); }
    std::string label(int n, int i) const override {
        return data_.label(n, i);
    }
    SparseVec unit() const override { return SparseVec::unit(unit_index_); }
    bool has_differential() const override { return has_d_; }
    SparseVec d_basis(int n, int i) const override;
    SparseVec act_adj_basis(int n, int t, int i) const override {
        return data_.act[n][t - 1].col(i);
    }
    SparseVec compose_basis(int m, int i, int n, int a, int b) const override;

    const SModule& data() const { return data_; }

private:
    std::string name_;
    SModule data_;
    int unit_index_;
    ComposeFn compose_;
    bool has_d_ = false;
};

// Hadamard (arity-wise) tensor product of operads, diagonal action. Basis
// index = a * dim(Q(n)) + b.
class HadamardOperad final : public Operad {
public:
    HadamardOperad(OperadPtr P, OperadPtr Q);

    std::string name() const override;
    int arity_cap() const override { return cap_; }
    int dim(int n) const override { return P_->dim(n) * Q_->dim(n); }
    int degree(int n, int i) const override;
    std::string label(int n, int i) const override;
    SparseVec unit() const override;
    bool has_differential() const override {
        return P_->has_differential() || Q_->has_differential();
    }
    SparseVec d_basis(int n, int i) const override;
    SparseVec act_adj_basis(int n, int t, int i) const override;
    SparseVec compose_basis(int m, int i, int n, int a, int b) const override;

    const OperadPtr& left() const { return P_; }
    const OperadPtr& right() const { return Q_; }
    int pair_index(int n, int a, int b) const { return a * Q_->dim(n) + b; }
    std::pair<int, int> split(int n, int i) const {
        return {i / Q_->dim(n), i % Q_->dim(n)};
    }

private:
    OperadPtr P_, Q_;
    int cap_;
};

// The three graces with canonical bases.
//   com: Com(n) one-dimensional, basis mu_n.
//   ass: Ass(n) = k[S_n], basis m_sigma indexed by all_perms(n);
//        (m_sigma)^tau = m_{sigma tau}.
//   lie: Lie(n), basis the left-normed brackets [[x_1, x_{w_2}], ..., x_{w_n}]
//        over permutations w of 2..n; realized inside Ass via the
//        antisymmetrization embedding.
OperadPtr com_operad(int cap);
OperadPtr ass_operad(int cap);
OperadPtr lie_operad(int cap);

// index of m_sigma in ass_operad's arity-n basis and back
int ass_index(const Perm& sigma);
Perm ass_perm(int n, int index);

// expansion of the left-normed Lie basis inside Ass(n): column j = image of
// the j-th basis bracket. Also the matrices of the antisymmetrization
// morphism a : Lie -> Ass.
SparseMat lie_into_ass(int n);

} // namespace oforge

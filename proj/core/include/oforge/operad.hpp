#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "oforge/perm.hpp"
#include "oforge/space.hpp"

namespace oforge {

// Raised when an operation would leave the configured arity or weight
// truncation. Certificate runners catch it and report the check as skipped,
// never as passed.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An arity-indexed family of symmetric group representations: the underlying
// data of operads, cooperads and quadratic presentations.
struct SModule {
    int arity_cap = 0;
    std::vector<SpacePtr> comp;              // [n]; null or empty = zero
    std::vector<std::vector<SparseMat>> act; // act[n][t-1]: right action of s_t

    int dim(int n) const;
    int degree(int n, int i) const;
    const std::string& label(int n, int i) const;
    SparseVec act_adj(int n, int t, const SparseVec& v) const;
    SparseVec act_perm(int n, const Perm& sigma, const SparseVec& v) const;
    std::vector<int> degrees(int n) const;
    // Coxeter relations of the generators, action/differential compatibility.
    void validate() const;
};

// One-dimensional trivial or sign representation helpers.
SModule single_generator_smodule(int arity, const std::string& label,
                                 int degree, bool sign_action, int cap);

// A dg operad truncated at an arity cap (and possibly a weight cap).
// Conventions (fixed across the whole engine):
//   * right actions: (x^a)^b = x^{ab} with (ab)(i) = a(b(i));
//   * partial composition o_i of degree 0, unital and (sequentially and in
//     parallel) associative;
//   * gamma(a; b_1..b_k) = ((a o_1 b_1) o_{n_1+1} b_2) ... ;
//   * the differential is a degree -1 derivation.
class Operad {
public:
    virtual ~Operad() = default;

    virtual std::string name() const = 0;
    virtual int arity_cap() const = 0;
    virtual int dim(int n) const = 0;
    virtual int degree(int n, int i) const = 0;
    virtual std::string label(int n, int i) const = 0;
    virtual SparseVec unit() const = 0;   // element of arity 1
    virtual bool has_differential() const { return false; }

    // basis-level primitives
    virtual SparseVec d_basis(int n, int i) const;
    virtual SparseVec act_adj_basis(int n, int t, int i) const = 0;
    virtual SparseVec compose_basis(int m, int i, int n, int a, int b) const = 0;

    // derived, memoized
    SparseVec act_basis(int n, const Perm& sigma, int i) const;
    SparseVec act(int n, const Perm& sigma, const SparseVec& v) const;
    SparseVec d(int n, const SparseVec& v) const;
    SparseVec compose(int m, int i, const SparseVec& a, int n,
                      const SparseVec& b) const;
    // composite with the inner output attached at the leaf set S (sorted,
    // 1-based labels in the result arity m+n-1)
    SparseVec compose_subset(int m, const SparseVec& a, int n,
                             const SparseVec& b,
                             const std::vector<int>& S) const;
    // gamma(a; args), consecutive blocks; unit args allowed
    SparseVec gamma(int k, const SparseVec& a,
                    const std::vector<std::pair<int, SparseVec>>& args) const;
    // gamma followed by the right action of a block shuffle sigma in S_n
    SparseVec gamma_sigma(int k, const SparseVec& a,
                          const std::vector<std::pair<int, SparseVec>>& args,
                          const Perm& sigma) const;

    std::vector<int> degrees(int n) const;
    // materialized Space (small operads only; labels built eagerly)
    SpacePtr space(int n) const;

protected:
    Operad() = default;

private:
    mutable std::mutex memo_mu_;
    mutable std::map<std::tuple<int, std::vector<int>, int>, SparseVec>
        act_memo_;
    mutable std::map<std::tuple<int, int, int, int, int>, SparseVec>
        comp_memo_;
    mutable std::map<int, SpacePtr> space_memo_;
};

using OperadPtr = std::shared_ptr<const Operad>;

// The permutation tau with (a o_i b)^{tau^{-1}} placing b's leaves at S;
// shared by operads and tree calculus. S sorted, |S| = n, result in
// S_{m+n-1}; i is derived from S.
Perm subset_perm(int m, int n, const std::vector<int>& S);
int subset_slot(int m, int n, const std::vector<int>& S); // the i

// --- certificates ---------------------------------------------------------

struct CheckReport {
    bool ok = true;
    int checked = 0;
    int skipped = 0; // truncation-limited cases, reported not passed
    std::string detail;

    void fail(std::string msg);
    void merge(const CheckReport& o);
};

// unitality: 1 o_1 x = x, x o_i 1 = x
CheckReport check_unit(const Operad& P, int max_arity);
// sequential and parallel associativity on all basis triples
CheckReport check_associativity(const Operad& P, int max_arity);
// gamma equivariance against generating transpositions on basis pairs
CheckReport check_equivariance(const Operad& P, int max_arity);
// d(a o_i b) = da o_i b + (-1)^{|a|} a o_i db and d^2 = 0
CheckReport check_derivation(const Operad& P, int max_arity);
// Coxeter relations of the action on every arity
CheckReport check_action(const Operad& P, int max_arity);

} // namespace oforge

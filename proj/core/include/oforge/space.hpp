#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oforge/perm.hpp"
#include "oforge/sparse.hpp"

namespace oforge {

// A finite-dimensional Z-graded based chain complex. The differential has
// degree -1 and may be absent (zero).
class Space {
public:
    Space() = default;
    Space(std::string name, std::vector<std::string> labels,
          std::vector<int> degrees);

    int dim() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_[i]; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::string& name() const { return name_; }

    bool has_differential() const { return has_d_; }
    const SparseMat& d() const { return d_; }
    void set_differential(SparseMat d); // validates degree -1 and d^2 = 0
    SparseVec apply_d(const SparseVec& v) const;

    bool operator==(const Space& o) const {
        return degrees_ == o.degrees_ && labels_ == o.labels_;
    }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    SparseMat d_;
    bool has_d_ = false;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(std::string name, std::vector<std::string> labels,
                    std::vector<int> degrees);
// One generator of the given degree.
SpacePtr point_space(std::string label, int degree);

int degree_of(const Space& sp, const SparseVec& v); // throws if inhomogeneous

// A degree-homogeneous linear map between based spaces; every nonzero entry
// connects basis elements whose degrees differ by exactly `degree`.
struct LinearMap {
    SpacePtr source;
    SpacePtr target;
    int degree = 0;
    SparseMat mat; // target-dim x source-dim

    SparseVec apply(const SparseVec& v) const { return mat.apply(v); }
    LinearMap compose(const LinearMap& inner) const;
    LinearMap operator+(const LinearMap& o) const;
    LinearMap operator-(const LinearMap& o) const;
    LinearMap operator*(const Rat& c) const;
    bool is_zero() const { return mat.is_zero(); }
    void validate() const; // checks the degree invariant
};

LinearMap zero_map(SpacePtr src, SpacePtr tgt, int degree);
LinearMap identity_map(SpacePtr sp);
// d as a LinearMap of degree -1 (zero map if absent).
LinearMap differential_map(SpacePtr sp);

// boundary of phi in the hom complex: d_W phi - (-1)^{|phi|} phi d_V
LinearMap hom_differential(const LinearMap& phi);

// Tensor product of spaces; labels are "a(x)b". Differential induced by the
// Koszul rule when either factor has one.
SpacePtr tensor_space(const std::vector<SpacePtr>& factors);
SpacePtr tensor_power(const SpacePtr& sp, int n);

// Mixed-radix index helpers for tensor products of based spaces.
struct TensorIndex {
    std::vector<int> dims;
    TensorIndex() = default;
    explicit TensorIndex(std::vector<int> d);
    long long total() const { return total_; }
    int flatten(const std::vector<int>& multi) const;
    std::vector<int> unflatten(int flat) const;

private:
    long long total_ = 1;
};

// (f tensor g)(x tensor y) = (-1)^{|g||x|} f(x) tensor g(y)
LinearMap tensor_map(const LinearMap& f, const LinearMap& g);
LinearMap tensor_maps(const std::vector<LinearMap>& fs);

// The left action of sigma on a tensor power basis element, with Koszul sign:
// e_{i_1} x ... x e_{i_n} -> sign * e_{i_{sigma^{-1}(1)}} x ...
SparseVec act_tensor_basis(const Perm& sigma, const std::vector<int>& multi,
                           const std::vector<int>& factor_degrees,
                           const TensorIndex& ti);

// One tensor-product map (1 x..x f x..x g x..x 1) applied to a tensor basis
// index, in the same index scheme, with Koszul signs taken against the
// original factor degrees. Entries must be sorted by factor, factors
// distinct.
struct FactorMap {
    int factor;
    int degree;
    std::function<SparseVec(int)> apply;
};
SparseVec apply_factor_maps(const std::vector<FactorMap>& maps,
                            const std::vector<int>& multi,
                            const std::vector<int>& factor_degrees_of_multi,
                            const TensorIndex& ti);

// Invariants <-> coinvariants for an explicit right G-action given by
// matrices. averaging: v -> (1/|G|) [v]; orbit_sum: [v] -> sum over orbit.
SparseVec orbit_sum(const std::vector<SparseMat>& group_action,
                    const SparseVec& v);
SparseVec average(const std::vector<SparseMat>& group_action,
                  const SparseVec& v);

} // namespace oforge

#pragma once

#include <vector>
#include <string>
#include <cstdint>
#include "oforge/rational.hpp"

namespace oforge {

// A permutation of {1..n}, stored 0-based: img_[i] = sigma(i+1)-1.
//
// Conventions used throughout the engine:
//   * composition (a*b)(i) = a(b(i));
//   * sigma moves the element in slot j to slot sigma(j), so the permuted
//     tuple has x_{sigma^{-1}(i)} in slot i;
//   * the Koszul sign of sigma on homogeneous degrees (d_1..d_n) is
//     prod over inversions i<j, sigma(i)>sigma(j) of (-1)^{d_i d_j}.
class Perm {
public:
    Perm() = default;
    explicit Perm(int n); // identity
    static Perm from_images(std::vector<int> one_based_images);
    static Perm transposition(int n, int i, int j); // swaps i,j (1-based)
    static Perm adjacent(int n, int t);             // swaps t,t+1 (1-based t)
    static Perm cycle(int n, const std::vector<int>& cyc); // cycle notation

    int n() const { return static_cast<int>(img_.size()); }
    int map1(int i) const { return img_[i - 1] + 1; } // 1-based application
    int map0(int i) const { return img_[i]; }

    Perm operator*(const Perm& rhs) const; // (*this) after rhs
    Perm inverse() const;
    bool operator==(const Perm& o) const { return img_ == o.img_; }
    bool operator<(const Perm& o) const { return img_ < o.img_; }
    bool is_identity() const;

    int sign() const; // +1 or -1
    // Decomposition into adjacent transpositions s_{t} (1-based t), such that
    // *this = s_{w[0]} * s_{w[1]} * ... * s_{w.back()}.
    std::vector<int> adjacent_word() const;

    const std::vector<int>& images0() const { return img_; }
    std::vector<int> images1() const;
    std::string str() const;

private:
    std::vector<int> img_;
};

// Koszul sign exponent (0 or 1) of permuting homogeneous elements of the
// given degrees by sigma.
int koszul_exp(const Perm& sigma, const std::vector<int>& degrees);
inline Rat koszul_sign(const Perm& sigma, const std::vector<int>& degrees) {
    return sign_pow(koszul_exp(sigma, degrees));
}

std::vector<Perm> all_perms(int n);

// A (n_1,...,n_k)-shuffle: order-preserving on each consecutive block.
struct Shuffle {
    Perm perm;
    std::vector<int> blocks;
};

// All (n_1,...,n_k)-shuffles, each once, in lexicographic order of image
// sequences.
std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& blocks);

// The block permutation sigma(n_1,...,n_k) in S_{n_1+...+n_k}: moves block j
// (kept in order) to the position block j takes when blocks are reordered by
// sigma. sizes[j] is the size of block j+1 *before* permuting.
Perm block_perm(const Perm& sigma, const std::vector<int>& sizes);

// Block-diagonal permutation tau_1 + ... + tau_k.
Perm sum_perm(const std::vector<Perm>& taus);

} // namespace oforge

#include "oforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <fmt/format.h>

namespace oforge {

Perm::Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

Perm Perm::from_images(std::vector<int> one_based) {
    Perm p;
    p.img_.resize(one_based.size());
    std::vector<bool> seen(one_based.size(), false);
    for (size_t i = 0; i < one_based.size(); ++i) {
        int v = one_based[i] - 1;
        if (v < 0 || v >= static_cast<int>(one_based.size()) || seen[v])
            throw std::invalid_argument("not a permutation");
        seen[v] = true;
        p.img_[i] = v;
    }
    return p;
}

Perm Perm::transposition(int n, int i, int j) {
    Perm p(n);
    std::swap(p.img_[i - 1], p.img_[j - 1]);
    return p;
}

Perm Perm::adjacent(int n, int t) { return transposition(n, t, t + 1); }

Perm Perm::cycle(int n, const std::vector<int>& cyc) {
    Perm p(n);
    for (size_t i = 0; i < cyc.size(); ++i)
        p.img_[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
    return p;
}

Perm Perm::operator*(const Perm& rhs) const {
    if (n() != rhs.n()) throw std::invalid_argument("size mismatch");
    Perm p;
    p.img_.resize(img_.size());
    for (int i = 0; i < n(); ++i) p.img_[i] = img_[rhs.img_[i]];
    return p;
}

Perm Perm::inverse() const {
    Perm p;
    p.img_.resize(img_.size());
    for (int i = 0; i < n(); ++i) p.img_[img_[i]] = i;
    return p;
}

bool Perm::is_identity() const {
    for (int i = 0; i < n(); ++i)
        if (img_[i] != i) return false;
    return true;
}

int Perm::sign() const {
    int inv = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (img_[i] > img_[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

std::vector<int> Perm::adjacent_word() const {
    // Bubble-sort the image sequence; each swap of adjacent slots t,t+1
    // multiplies by s_t on the right.
    std::vector<int> seq = img_;
    std::vector<int> word;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int t = 0; t + 1 < n(); ++t) {
            if (seq[t] > seq[t + 1]) {
                std::swap(seq[t], seq[t + 1]);
                word.push_back(t + 1);
                moved = true;
            }
        }
    }
    // seq is now the identity and *this = s_{w_1} ... s_{w_k} read so that
    // applying the adjacent swaps in reverse order of `word` to the identity
    // rebuilds the permutation; reversing gives the stated contract.
    std::reverse(word.begin(), word.end());
    return word;
}

std::vector<int> Perm::images1() const {
    std::vector<int> v(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) v[i] = img_[i] + 1;
    return v;
}

std::string Perm::str() const {
    std::string s = "[";
    for (int i = 0; i < n(); ++i) s += (i ? " " : "") + std::to_string(img_[i] + 1);
    return s + "]";
}

int koszul_exp(const Perm& sigma, const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != sigma.n())
        throw std::invalid_argument("koszul_exp: degree list length != perm size");
    int e = 0;
    for (int i = 0; i < sigma.n(); ++i)
        for (int j = i + 1; j < sigma.n(); ++j)
            if (sigma.map0(i) > sigma.map0(j)) e += degrees[i] * degrees[j];
    return ((e % 2) + 2) % 2;
}

std::vector<Perm> all_perms(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::vector<Perm> out;
    do {
        out.push_back(Perm::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

namespace {
void shuffle_rec(const std::vector<int>& blocks, std::vector<int>& taken,
                 std::vector<std::vector<int>>& slots, int pos, int n,
                 std::vector<Shuffle>& out) {
    if (pos == n) {
        std::vector<int> images(n);
        for (size_t b = 0; b < slots.size(); ++b)
            for (size_t j = 0; j < slots[b].size(); ++j) {
                int src = 0;
                for (size_t bb = 0; bb < b; ++bb) src += blocks[bb];
                images[src + static_cast<int>(j)] = slots[b][j] + 1;
            }
        out.push_back({Perm::from_images(images), blocks});
        return;
    }
    // Assign target position `pos` to the next unplaced element of some block;
    // within a block elements are placed in order, which enforces
    // order-preservation and yields lexicographic image sequences.
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (taken[b] < blocks[b]) {
            slots[b].push_back(pos);
            ++taken[b];
            shuffle_rec(blocks, taken, slots, pos + 1, n, out);
            --taken[b];
            slots[b].pop_back();
        }
    }
}
} // namespace

std::vector<Shuffle> enumerate_shuffles(const std::vector<int>& blocks) {
    int n = 0;
    for (int b : blocks) {
        if (b < 0) throw std::invalid_argument("negative block size");
        n += b;
    }
    std::vector<int> taken(blocks.size(), 0);
    std::vector<std::vector<int>> slots(blocks.size());
    std::vector<Shuffle> out;
    shuffle_rec(blocks, taken, slots, 0, n, out);
    // shuffle_rec emits in lexicographic order of image sequences already:
    // at each position the smallest admissible image is tried first.
    std::sort(out.begin(), out.end(), [](const Shuffle& a, const Shuffle& b) {
        return a.perm.images0() < b.perm.images0();
    });
    return out;
}

Perm block_perm(const Perm& sigma, const std::vector<int>& sizes) {
    if (sigma.n() != static_cast<int>(sizes.size()))
        throw std::invalid_argument("block_perm: arity mismatch");
    int n = 0;
    for (int s : sizes) n += s;
    // start of block j after permuting: blocks appear in target order
    // sigma^{-1}(1), sigma^{-1}(2), ...
    std::vector<int> start_after(sizes.size(), 0);
    {
        Perm inv = sigma.inverse();
        int acc = 0;
        for (int slot = 0; slot < sigma.n(); ++slot) {
            int j = inv.map0(slot);
            start_after[j] = acc;
            acc += sizes[j];
        }
    }
    std::vector<int> images(n);
    int src = 0;
    for (size_t j = 0; j < sizes.size(); ++j)
        for (int t = 0; t < sizes[j]; ++t, ++src)
            images[src] = start_after[j] + t + 1;
    return Perm::from_images(images);
}

Perm sum_perm(const std::vector<Perm>& taus) {
    int n = 0;
    for (const auto& t : taus) n += t.n();
    std::vector<int> images(n);
    int off = 0;
    for (const auto& t : taus) {
        for (int i = 0; i < t.n(); ++i) images[off + i] = off + t.map1(i + 1);
        off += t.n();
    }
    return Perm::from_images(images);
}

} // namespace oforge

#include "oforge/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace oforge {

const SparseVec SparseMat::kZero{};

SparseVec SparseVec::unit(int index, Rat coeff) {
    SparseVec v;
    if (!is_zero(coeff)) v.terms_.emplace_back(index, std::move(coeff));
    return v;
}

Rat SparseVec::coeff(int index) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == index) return it->second;
    return Rat(0);
}

int SparseVec::leading_index() const {
    return terms_.empty() ? -1 : terms_.back().first;
}

SparseVec& SparseVec::add(int index, const Rat& c) {
    if (is_zero(c)) return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == index) {
        it->second += c;
        if (is_zero(it->second)) terms_.erase(it);
    } else {
        terms_.insert(it, {index, c});
    }
    return *this;
}

SparseVec& SparseVec::axpy(const Rat& a, const SparseVec& x) {
    if (is_zero(a) || x.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + x.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < x.terms_.size()) {
        if (j == x.terms_.size() ||
            (i < terms_.size() && terms_[i].first < x.terms_[j].first)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || terms_[i].first > x.terms_[j].first) {
            Rat c = a * x.terms_[j].second;
            if (!is_zero(c)) out.emplace_back(x.terms_[j].first, std::move(c));
            ++j;
        } else {
            Rat c = terms_[i].second + a * x.terms_[j].second;
            if (!is_zero(c)) out.emplace_back(terms_[i].first, std::move(c));
            ++i, ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

SparseVec& SparseVec::operator*=(const Rat& c) {
    if (is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
    SparseVec v = *this;
    v += o;
    return v;
}
SparseVec SparseVec::operator-(const SparseVec& o) const {
    SparseVec v = *this;
    v -= o;
    return v;
}
SparseVec SparseVec::operator*(const Rat& c) const {
    SparseVec v = *this;
    v *= c;
    return v;
}

SparseVec SparseVec::map(const std::function<SparseVec(int)>& f) const {
    SparseVec out;
    for (const auto& [i, c] : terms_) out.axpy(c, f(i));
    return out;
}

SparseVec SparseVec::reindex(const std::function<int(int)>& f) const {
    SparseVec out;
    for (const auto& [i, c] : terms_) out.add(f(i), c);
    return out;
}

bool SparseMat::is_zero() const {
    for (const auto& c : data_)
        if (!c.empty()) return false;
    return true;
}

const SparseVec& SparseMat::cols_at(int j) const {
    if (j < 0 || j >= cols_) throw std::out_of_range("SparseMat column");
    if (j >= static_cast<int>(data_.size())) return kZero;
    return data_[j];
}

void SparseMat::set_col(int j, SparseVec v) {
    if (j >= cols_) throw std::out_of_range("SparseMat column");
    if (j >= static_cast<int>(data_.size())) data_.resize(j + 1);
    data_[j] = std::move(v);
}

void SparseMat::add_entry(int i, int j, const Rat& c) {
    if (j >= cols_) throw std::out_of_range("SparseMat column");
    if (j >= static_cast<int>(data_.size())) data_.resize(j + 1);
    data_[j].add(i, c);
}

SparseVec SparseMat::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [j, c] : v.terms()) out.axpy(c, col(j));
    return out;
}

SparseMat SparseMat::compose(const SparseMat& inner) const {
    SparseMat out(rows_, inner.cols());
    for (int j = 0; j < inner.cols(); ++j) out.set_col(j, apply(inner.col(j)));
    return out;
}

SparseMat SparseMat::transpose() const {
    SparseMat out(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, c] : col(j).terms()) out.add_entry(j, i, c);
    return out;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
    SparseMat out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.set_col(j, col(j) + o.col(j));
    return out;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
    SparseMat out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.set_col(j, col(j) - o.col(j));
    return out;
}

SparseMat SparseMat::operator*(const Rat& c) const {
    SparseMat out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) out.set_col(j, col(j) * c);
    return out;
}

bool SparseMat::operator==(const SparseMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int j = 0; j < cols_; ++j)
        if (!(col(j) == o.col(j))) return false;
    return true;
}

SparseMat SparseMat::identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.add_entry(i, i, Rat(1));
    return m;
}

namespace {

// Full normal form of v against fully reduced rows with the given pivot
// lookup. Terminates: every elimination removes one pivot coordinate and
// introduces only non-pivot coordinates.
SparseVec normal_form(SparseVec v, const std::vector<SparseVec>& rows,
                      const std::vector<std::pair<int, int>>& pivot_of) {
    auto find_pivot = [&](int idx) -> int {
        auto it = std::lower_bound(
            pivot_of.begin(), pivot_of.end(), idx,
            [](const std::pair<int, int>& p, int i) { return p.first < i; });
        if (it != pivot_of.end() && it->first == idx) return it->second;
        return -1;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [i, c] : v.terms()) {
            int row = find_pivot(i);
            if (row >= 0) {
                v.axpy(-c, rows[row]);
                changed = true;
                break;
            }
        }
    }
    return v;
}

} // namespace

SparseVec RowSpace::reduce(const SparseVec& v) const {
    return normal_form(v, rows_, pivot_of_);
}

bool RowSpace::insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    int lead = r.leading_index();
    r *= Rat(1) / r.coeff(lead);
    // back-substitute to keep all rows fully reduced
    for (auto& row : rows_) row.axpy(-row.coeff(lead), r);
    int idx = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    pivot_of_.insert(std::lower_bound(pivot_of_.begin(), pivot_of_.end(), lead,
                                      [](const std::pair<int, int>& p, int i) {
                                          return p.first < i;
                                      }),
                     {lead, idx});
    return true;
}

std::vector<int> RowSpace::pivots() const {
    std::vector<int> p;
    p.reserve(pivot_of_.size());
    for (const auto& [piv, row] : pivot_of_) p.push_back(piv);
    return p;
}

QuotientSpace::QuotientSpace(int ambient_dim, const RowSpace& relations)
    : ambient_(ambient_dim) {
    reduced_rows_ = relations.rows();
    for (size_t k = 0; k < reduced_rows_.size(); ++k)
        pivot_of_.emplace_back(reduced_rows_[k].leading_index(),
                               static_cast<int>(k));
    std::sort(pivot_of_.begin(), pivot_of_.end());
    ambient_to_basis_.assign(ambient_, -1);
    std::vector<bool> is_piv(ambient_, false);
    for (const auto& [piv, row] : pivot_of_) is_piv[piv] = true;
    for (int i = 0; i < ambient_; ++i) {
        if (!is_piv[i]) {
            ambient_to_basis_[i] = static_cast<int>(basis_.size());
            basis_.push_back(i);
        }
    }
}

SparseVec QuotientSpace::project(const SparseVec& ambient) const {
    SparseVec r = normal_form(ambient, reduced_rows_, pivot_of_);
    SparseVec out;
    for (const auto& [i, c] : r.terms()) out.add(ambient_to_basis_[i], c);
    return out;
}

SparseVec QuotientSpace::section(int quotient_index) const {
    return SparseVec::unit(basis_[quotient_index]);
}

SparseVec QuotientSpace::section_vec(const SparseVec& q) const {
    SparseVec out;
    for (const auto& [i, c] : q.terms()) out.add(basis_[i], c);
    return out;
}

std::optional<SparseVec> solve(const SparseMat& A, const SparseVec& b) {
    // Gaussian elimination over columns of A, remembering for every pivot
    // column the combination of unknowns that produced it.
    struct Row {
        SparseVec a; // reduced column, monic at its leading index
        SparseVec x; // combination of unknowns with A * x = a
    };
    std::vector<Row> rows; // sorted by decreasing pivot
    auto reduce_pair = [&](SparseVec va, SparseVec vx) {
        for (const auto& row : rows) {
            Rat c = va.coeff(row.a.leading_index());
            if (!is_zero(c)) {
                va.axpy(-c, row.a);
                vx.axpy(-c, row.x);
            }
        }
        return std::make_pair(std::move(va), std::move(vx));
    };
    for (int j = 0; j < A.cols(); ++j) {
        auto [va, vx] = reduce_pair(A.col(j), SparseVec::unit(j));
        if (!va.empty()) {
            Rat inv = Rat(1) / va.coeff(va.leading_index());
            va *= inv;
            vx *= inv;
            rows.push_back({std::move(va), std::move(vx)});
            std::sort(rows.begin(), rows.end(),
                      [](const Row& r1, const Row& r2) {
                          return r1.a.leading_index() > r2.a.leading_index();
                      });
        }
    }
    auto [rb, xb] = reduce_pair(b, SparseVec());
    if (!rb.empty()) return std::nullopt;
    return -xb;
}

} // namespace oforge

#include "oforge/space.hpp"

#include <fmt/format.h>
#include <stdexcept>

namespace oforge {

Space::Space(std::string name, std::vector<std::string> labels,
             std::vector<int> degrees)
    : name_(std::move(name)), labels_(std::move(labels)),
      degrees_(std::move(degrees)) {
    if (labels_.size() != degrees_.size())
        throw std::invalid_argument("Space: labels/degrees size mismatch");
}

void Space::set_differential(SparseMat d) {
    if (d.rows() != dim() || d.cols() != dim())
        throw std::invalid_argument("differential shape mismatch");
    for (int j = 0; j < dim(); ++j)
        for (const auto& [i, c] : d.col(j).terms())
            if (degrees_[i] != degrees_[j] - 1)
                throw std::invalid_argument(fmt::format(
                    "differential entry ({},{}) does not drop degree by 1", i, j));
    if (!d.compose(d).is_zero())
        throw std::invalid_argument("differential does not square to zero");
    d_ = std::move(d);
    has_d_ = true;
}

SparseVec Space::apply_d(const SparseVec& v) const {
    if (!has_d_) return {};
    return d_.apply(v);
}

SpacePtr make_space(std::string name, std::vector<std::string> labels,
                    std::vector<int> degrees) {
    return std::make_shared<Space>(std::move(name), std::move(labels),
                                   std::move(degrees));
}

SpacePtr point_space(std::string label, int degree) {
    return make_space(label, {label}, {degree});
}

int degree_of(const Space& sp, const SparseVec& v) {
    if (v.empty()) throw std::invalid_argument("degree of zero vector");
    int d = sp.degree(v.terms().front().first);
    for (const auto& [i, c] : v.terms())
        if (sp.degree(i) != d)
            throw std::invalid_argument("inhomogeneous vector");
    return d;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    if (!(*source == *inner.target))
        throw std::invalid_argument("compose: space mismatch");
    return {inner.source, target, degree + inner.degree, mat.compose(inner.mat)};
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
    if (degree != o.degree) throw std::invalid_argument("degree mismatch");
    return {source, target, degree, mat + o.mat};
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
    if (degree != o.degree) throw std::invalid_argument("degree mismatch");
    return {source, target, degree, mat - o.mat};
}

LinearMap LinearMap::operator*(const Rat& c) const {
    return {source, target, degree, mat * c};
}

void LinearMap::validate() const {
    for (int j = 0; j < mat.cols(); ++j)
        for (const auto& [i, c] : mat.col(j).terms())
            if (target->degree(i) != source->degree(j) + degree)
                throw std::invalid_argument(
                    fmt::format("map entry ({},{}) violates degree {}", i, j,
                                degree));
}

LinearMap zero_map(SpacePtr src, SpacePtr tgt, int degree) {
    SparseMat m(tgt->dim(), src->dim());
    return {std::move(src), std::move(tgt), degree, std::move(m)};
}

LinearMap identity_map(SpacePtr sp) {
    SparseMat m = SparseMat::identity(sp->dim());
    return {sp, sp, 0, std::move(m)};
}

LinearMap differential_map(SpacePtr sp) {
    if (!sp->has_differential()) return zero_map(sp, sp, -1);
    return {sp, sp, -1, sp->d()};
}

LinearMap hom_differential(const LinearMap& phi) {
    LinearMap dW = differential_map(phi.target);
    LinearMap dV = differential_map(phi.source);
    LinearMap out = dW.compose(phi) - phi.compose(dV) * sign_pow(phi.degree);
    return out;
}

TensorIndex::TensorIndex(std::vector<int> d) : dims(std::move(d)) {
    for (int k : dims) total_ *= k;
    if (total_ > (1LL << 40))
        throw std::overflow_error("tensor space too large");
}

int TensorIndex::flatten(const std::vector<int>& multi) const {
    long long idx = 0;
    for (size_t j = 0; j < dims.size(); ++j) idx = idx * dims[j] + multi[j];
    return static_cast<int>(idx);
}

std::vector<int> TensorIndex::unflatten(int flat) const {
    std::vector<int> multi(dims.size());
    long long idx = flat;
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
        multi[j] = static_cast<int>(idx % dims[j]);
        idx /= dims[j];
    }
    return multi;
}

SpacePtr tensor_space(const std::vector<SpacePtr>& factors) {
    std::vector<int> dims;
    dims.reserve(factors.size());
    for (const auto& f : factors) dims.push_back(f->dim());
    TensorIndex ti(dims);
    std::vector<std::string> labels(ti.total());
    std::vector<int> degrees(ti.total());
    for (int flat = 0; flat < ti.total(); ++flat) {
        auto multi = ti.unflatten(flat);
        std::string lab;
        int deg = 0;
        for (size_t j = 0; j < factors.size(); ++j) {
            if (j) lab += "(x)";
            lab += factors[j]->label(multi[j]);
            deg += factors[j]->degree(multi[j]);
        }
        labels[flat] = std::move(lab);
        degrees[flat] = deg;
    }
    std::string name;
    for (size_t j = 0; j < factors.size(); ++j)
        name += (j ? "(x)" : "") + factors[j]->name();
    auto out = std::make_shared<Space>(name, std::move(labels),
                                       std::move(degrees));
    bool any_d = false;
    for (const auto& f : factors) any_d |= f->has_differential();
    if (any_d) {
        SparseMat d(static_cast<int>(ti.total()), static_cast<int>(ti.total()));
        for (int flat = 0; flat < ti.total(); ++flat) {
            auto multi = ti.unflatten(flat);
            SparseVec acc;
            int sign_exp = 0;
            for (size_t j = 0; j < factors.size(); ++j) {
                if (factors[j]->has_differential()) {
                    SparseVec dj = factors[j]->d().col(multi[j]);
                    for (const auto& [i, c] : dj.terms()) {
                        auto m2 = multi;
                        m2[j] = i;
                        acc.add(ti.flatten(m2), sign_pow(sign_exp) * c);
                    }
                }
                sign_exp += factors[j]->degree(multi[j]);
            }
            d.set_col(flat, std::move(acc));
        }
        out->set_differential(std::move(d));
    }
    return out;
}

SpacePtr tensor_power(const SpacePtr& sp, int n) {
    return tensor_space(std::vector<SpacePtr>(n, sp));
}

LinearMap tensor_map(const LinearMap& f, const LinearMap& g) {
    return tensor_maps({f, g});
}

LinearMap tensor_maps(const std::vector<LinearMap>& fs) {
    std::vector<SpacePtr> srcs, tgts;
    int deg = 0;
    for (const auto& f : fs) {
        srcs.push_back(f.source);
        tgts.push_back(f.target);
        deg += f.degree;
    }
    SpacePtr src = tensor_space(srcs), tgt = tensor_space(tgts);
    std::vector<int> sdims, tdims;
    for (const auto& f : fs) sdims.push_back(f.source->dim());
    for (const auto& f : fs) tdims.push_back(f.target->dim());
    TensorIndex sti(sdims), tti(tdims);
    SparseMat m(tgt->dim(), src->dim());
    for (int flat = 0; flat < sti.total(); ++flat) {
        auto multi = sti.unflatten(flat);
        // (f_1 x ... x f_k)(x_1 x ... x x_k) with the Koszul rule: f_j picks
        // up (-1)^{|f_j| (|x_1|+...+|x_{j-1}|)}
        std::vector<std::pair<std::vector<int>, Rat>> states{{{}, Rat(1)}};
        int prefix_deg = 0;
        for (size_t j = 0; j < fs.size(); ++j) {
            Rat sg = sign_pow(fs[j].degree * prefix_deg);
            SparseVec img = fs[j].mat.col(multi[j]);
            std::vector<std::pair<std::vector<int>, Rat>> next;
            for (const auto& [pref, c] : states) {
                for (const auto& [i, ci] : img.terms()) {
                    auto p2 = pref;
                    p2.push_back(i);
                    next.emplace_back(std::move(p2), c * ci * sg);
                }
            }
            states = std::move(next);
            prefix_deg += fs[j].source->degree(multi[j]);
        }
        SparseVec colv;
        for (const auto& [pref, c] : states) colv.add(tti.flatten(pref), c);
        m.set_col(flat, std::move(colv));
    }
    return {src, tgt, deg, std::move(m)};
}

SparseVec act_tensor_basis(const Perm& sigma, const std::vector<int>& multi,
                           const std::vector<int>& factor_degrees,
                           const TensorIndex& ti) {
    int n = sigma.n();
    std::vector<int> out(n);
    Perm inv = sigma.inverse();
    for (int i = 0; i < n; ++i) out[i] = multi[inv.map0(i)];
    Rat sg = koszul_sign(sigma, factor_degrees);
    return SparseVec::unit(ti.flatten(out), sg);
}

SparseVec apply_factor_maps(const std::vector<FactorMap>& maps,
                            const std::vector<int>& multi,
                            const std::vector<int>& factor_degrees_of_multi,
                            const TensorIndex& ti) {
    for (size_t k = 1; k < maps.size(); ++k)
        if (maps[k - 1].factor >= maps[k].factor)
            throw std::invalid_argument("factor maps must be sorted, distinct");
    std::vector<std::pair<std::vector<int>, Rat>> states{{multi, Rat(1)}};
    for (const auto& fm : maps) {
        int prefix = 0;
        for (int j = 0; j < fm.factor; ++j) prefix += factor_degrees_of_multi[j];
        Rat sg = sign_pow(fm.degree * prefix);
        std::vector<std::pair<std::vector<int>, Rat>> next;
        for (const auto& [m, c] : states) {
            SparseVec img = fm.apply(m[fm.factor]);
            for (const auto& [i, ci] : img.terms()) {
                auto m2 = m;
                m2[fm.factor] = i;
                next.emplace_back(std::move(m2), c * ci * sg);
            }
        }
        states = std::move(next);
    }
    SparseVec out;
    for (const auto& [m, c] : states) out.add(ti.flatten(m), c);
    return out;
}

SparseVec orbit_sum(const std::vector<SparseMat>& group_action,
                    const SparseVec& v) {
    SparseVec out;
    for (const auto& g : group_action) out += g.apply(v);
    return out;
}

SparseVec average(const std::vector<SparseMat>& group_action,
                  const SparseVec& v) {
    SparseVec out = orbit_sum(group_action, v);
    out *= Rat(1, static_cast<long>(group_action.size()));
    return out;
}

} // namespace oforge

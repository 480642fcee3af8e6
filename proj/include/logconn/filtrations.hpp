#ifndef LOGCONN_FILTRATIONS_HPP
#define LOGCONN_FILTRATIONS_HPP

#include "logconn/matrix.hpp"
#include "logconn/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace logconn {

using QVector = std::vector<Rational>;

/// Subspace of Q^m stored as the nonzero rows of its reduced row echelon form.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : basis_(0, ambient) {}

    static Subspace span(const QMatrix& rows) {
        auto e = rref(rows);
        Subspace s;
        s.basis_ = QMatrix(e.rank(), rows.cols());
        for (std::size_t i = 0; i < e.rank(); ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_(i, j) = e.reduced(i, j);
        return s;
    }
    static Subspace span(const std::vector<QVector>& vecs, std::size_t ambient) {
        QMatrix m(vecs.size(), ambient);
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            if (vecs[i].size() != ambient) throw AlgebraError("vector length differs from ambient dimension");
            for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vecs[i][j];
        }
        return span(m);
    }
    static Subspace full(std::size_t ambient) { return span(QMatrix::identity(ambient)); }

    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const QMatrix& basis() const { return basis_; }

    QVector vector(std::size_t i) const {
        QVector v(ambient());
        for (std::size_t j = 0; j < ambient(); ++j) v[j] = basis_(i, j);
        return v;
    }

    bool contains(const QVector& v) const { return (*this + span({v}, ambient())).dim() == dim(); }
    bool contains(const Subspace& o) const { return (*this + o).dim() == dim(); }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        QMatrix m(a.dim() + b.dim(), a.ambient());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.ambient(); ++j) m(i, j) = a.basis_(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < a.ambient(); ++j) m(a.dim() + i, j) = b.basis_(i, j);
        return span(m);
    }

    /// Intersection via the kernel of [A^T | -B^T].
    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        std::size_t m = a.ambient();
        if (a.dim() == 0 || b.dim() == 0) return Subspace(m);
        QMatrix sys(m, a.dim() + b.dim());
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < a.dim(); ++k) sys(i, k) = a.basis_(k, i);
            for (std::size_t k = 0; k < b.dim(); ++k) sys(i, a.dim() + k) = -b.basis_(k, i);
        }
        QMatrix ker = kernel(sys);
        QMatrix vecs(ker.cols(), m);
        for (std::size_t c = 0; c < ker.cols(); ++c)
            for (std::size_t k = 0; k < a.dim(); ++k)
                for (std::size_t j = 0; j < m; ++j) vecs(c, j) += ker(k, c) * a.basis_(k, j);
        return span(vecs);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    QMatrix basis_;
};

/// Decreasing Z-filtration F^j of Q^m. Listed steps j_1 < ... < j_s carry
/// subspaces V_1 > ... > V_s; F^j is everything for j < j_1, V_t on
/// [j_t, j_{t+1}), and zero above j_s.
class Filtration {
public:
    struct Step {
        long index;
        Subspace space;
    };

    Filtration(std::size_t ambient, std::vector<Step> steps) : ambient_(ambient), steps_(std::move(steps)) {
        std::sort(steps_.begin(), steps_.end(), [](const Step& a, const Step& b) { return a.index < b.index; });
        for (std::size_t t = 0; t < steps_.size(); ++t) {
            const auto& s = steps_[t].space;
            if (s.ambient() != ambient_) throw AlgebraError("filtration step has the wrong ambient dimension");
            if (t > 0 && steps_[t].index == steps_[t - 1].index) throw AlgebraError("repeated filtration index");
            if (t > 0 && !(steps_[t - 1].space.contains(s) && steps_[t - 1].space.dim() > s.dim()))
                throw AlgebraError("filtration steps must be strictly decreasing");
        }
        if (!steps_.empty() && steps_.back().space.dim() == 0)
            throw AlgebraError("last filtration step must be nonzero");
    }

    std::size_t ambient() const { return ambient_; }
    const std::vector<Step>& steps() const { return steps_; }

    Subspace at(long j) const {
        if (steps_.empty() || j < steps_.front().index) return Subspace::full(ambient_);
        if (j > steps_.back().index) return Subspace(ambient_);
        const Subspace* cur = &steps_.front().space;
        for (const auto& s : steps_)
            if (s.index <= j) cur = &s.space;
        return *cur;
    }

    /// Top index of each interval on which F^j is constant and nonzero, ascending.
    /// The first entry represents the full space.
    std::vector<long> levels() const {
        std::vector<long> out;
        if (steps_.empty()) return {0};
        out.push_back(steps_.front().index - 1);
        for (std::size_t t = 0; t + 1 < steps_.size(); ++t) out.push_back(steps_[t + 1].index - 1);
        out.push_back(steps_.back().index);
        if (steps_.front().space.dim() == ambient_) out.erase(out.begin());
        return out;
    }

    /// Largest j with v in F^j.
    long depth(const QVector& v) const {
        auto lv = levels();
        long best = lv.front();
        for (long j : lv)
            if (at(j).contains(v)) best = j;
        return best;
    }

private:
    std::size_t ambient_;
    std::vector<Step> steps_;
};

struct AdaptedBasis {
    std::vector<QVector> vectors;
    std::vector<std::vector<long>> depths;  // depths[b][f]
};

/// Certificate that no adapted basis exists.
struct NotSplittable {
    std::vector<long> multi_index;  // where the chosen complements become dependent
    struct Row {
        std::vector<long> index;
        std::size_t dim_intersection;  // dim W_J
        std::size_t dim_lower;         // dim sum_f W_{J + e_f}
    };
    std::vector<Row> table;
    std::size_t total = 0;  // sum of complement dimensions (exceeds the ambient dimension)
};

struct SplitResult {
    std::optional<AdaptedBasis> basis;
    std::optional<NotSplittable> certificate;
    bool splittable() const { return basis.has_value(); }
};

/// Re-verifies an adapted basis: it is a basis, the recorded depths are the
/// actual depths, and every F_f^j is spanned by the vectors of depth >= j.
inline bool verify_adapted(const AdaptedBasis& b, const std::vector<Filtration>& fs) {
    if (fs.empty()) return false;
    std::size_t m = fs.front().ambient();
    if (b.vectors.size() != m || b.depths.size() != m) return false;
    if (Subspace::span(b.vectors, m).dim() != m) return false;
    for (std::size_t f = 0; f < fs.size(); ++f) {
        for (std::size_t k = 0; k < m; ++k)
            if (b.depths[k].size() != fs.size() || fs[f].depth(b.vectors[k]) != b.depths[k][f]) return false;
        auto lv = fs[f].levels();
        lv.push_back(lv.back() + 1);
        for (long j : lv) {
            std::vector<QVector> sel;
            for (std::size_t k = 0; k < m; ++k)
                if (b.depths[k][f] >= j) sel.push_back(b.vectors[k]);
            if (!(Subspace::span(sel, m) == fs[f].at(j))) return false;
        }
    }
    return true;
}

/// Decides simultaneous splittability. Multi-indices J over the level grid are
/// visited in decreasing order; at each J a complement of
/// S_J = sum_f W_{J+e_f} in W_J = cap_f F_f^{J_f} is chosen. The tuple splits
/// iff the chosen vectors are independent, i.e. sum dim(W_J / S_J) = m.
inline SplitResult simultaneous_split(const std::vector<Filtration>& fs) {
    if (fs.empty()) throw AlgebraError("need at least one filtration");
    std::size_t m = fs.front().ambient();
    for (const auto& f : fs)
        if (f.ambient() != m) throw AlgebraError("filtrations on different ambient spaces");
    std::size_t n = fs.size();
    std::vector<std::vector<long>> lv(n);
    for (std::size_t f = 0; f < n; ++f) lv[f] = fs[f].levels();

    // Positions into the level lists; position == size means the zero space.
    std::map<std::vector<std::size_t>, Subspace> w_cache;
    auto W = [&](const std::vector<std::size_t>& pos) -> Subspace {
        auto it = w_cache.find(pos);
        if (it != w_cache.end()) return it->second;
        Subspace s = Subspace::full(m);
        for (std::size_t f = 0; f < n && s.dim() > 0; ++f) {
            if (pos[f] >= lv[f].size()) {
                s = Subspace(m);
                break;
            }
            Subspace level = fs[f].at(lv[f][pos[f]]);
            if (level.dim() == m) continue;
            s = s.dim() == m ? std::move(level) : intersect(s, level);
        }
        return w_cache.emplace(pos, s).first->second;
    };

    std::vector<std::vector<std::size_t>> grid{{}};
    for (std::size_t f = 0; f < n; ++f) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& g : grid)
            for (std::size_t p = 0; p < lv[f].size(); ++p) {
                auto h = g;
                h.push_back(p);
                next.push_back(std::move(h));
            }
        grid = std::move(next);
    }
    auto key_sum = [](const std::vector<std::size_t>& p) {
        std::size_t s = 0;
        for (auto v : p) s += v;
        return s;
    };
    std::stable_sort(grid.begin(), grid.end(), [&](const auto& a, const auto& b) {
        std::size_t sa = key_sum(a), sb = key_sum(b);
        if (sa != sb) return sa > sb;
        return a > b;
    });

    auto to_index = [&](const std::vector<std::size_t>& pos) {
        std::vector<long> j(n);
        for (std::size_t f = 0; f < n; ++f) j[f] = lv[f][pos[f]];
        return j;
    };

    AdaptedBasis basis;
    NotSplittable cert;
    Subspace chosen(m);
    bool failed = false;
    for (const auto& pos : grid) {
        Subspace wj = W(pos);
        if (wj.dim() == 0) continue;
        Subspace sj(m);
        for (std::size_t f = 0; f < n; ++f) {
            auto up = pos;
            ++up[f];
            sj = sj + W(up);
        }
        cert.table.push_back({to_index(pos), wj.dim(), sj.dim()});
        if (sj.dim() == wj.dim()) continue;
        cert.total += wj.dim() - sj.dim();
        // Extend a basis of S_J to W_J with vectors of W_J's echelon basis.
        Subspace acc = sj;
        for (std::size_t k = 0; k < wj.dim() && acc.dim() < wj.dim(); ++k) {
            QVector v = wj.vector(k);
            if (acc.contains(v)) continue;
            acc = acc + Subspace::span({v}, m);
            if (failed) continue;
            if (chosen.contains(v)) {
                failed = true;
                cert.multi_index = to_index(pos);
                continue;
            }
            chosen = chosen + Subspace::span({v}, m);
            basis.vectors.push_back(v);
        }
    }
    SplitResult r;
    if (failed || basis.vectors.size() != m) {
        if (cert.multi_index.empty()) cert.multi_index = to_index(grid.back());
        r.certificate = std::move(cert);
        return r;
    }
    for (const auto& v : basis.vectors) {
        std::vector<long> d(n);
        for (std::size_t f = 0; f < n; ++f) d[f] = fs[f].depth(v);
        basis.depths.push_back(std::move(d));
    }
    r.basis = std::move(basis);
    return r;
}

/// A pair of filtrations always admits an adapted basis.
inline AdaptedBasis split_pair(const Filtration& f1, const Filtration& f2) {
    if (f1.ambient() != f2.ambient()) throw AlgebraError("filtrations on different ambient spaces");
    auto r = simultaneous_split({f1, f2});
    if (!r.splittable()) throw AlgebraError("internal error: pair of filtrations failed to split");
    return *r.basis;
}

struct ExtendabilityResult {
    bool extends = false;
    SplitResult witness;
};

inline ExtendabilityResult toric_extendability(const std::vector<Filtration>& fs) {
    ExtendabilityResult r;
    r.witness = simultaneous_split(fs);
    r.extends = r.witness.splittable();
    return r;
}

}  // namespace logconn

#endif  // LOGCONN_FILTRATIONS_HPP

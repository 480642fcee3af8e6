#ifndef LOGCONN_TESTS_FILTRATION_CENSUS_HPP
#define LOGCONN_TESTS_FILTRATION_CENSUS_HPP

#include "logconn/filtrations.hpp"
#include "support/lattice_oracle.hpp"

#include <vector>

namespace census {

using namespace logconn;

// Adaptedness by rank counts only: each step is spanned by the basis
// vectors it contains.
inline bool independently_adapted(const std::vector<QVector>& basis, const std::vector<Filtration>& fs) {
    std::size_t m = fs.front().ambient();
    if (basis.size() != m) return false;
    QMatrix all(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) all(i, k) = basis[i][k];
    if (rank(all) != m) return false;
    for (const auto& f : fs)
        for (const auto& s : f.steps()) {
            const QMatrix& b = s.space.basis();
            std::size_t inside = 0;
            for (const auto& v : basis) {
                QMatrix stacked(b.rows() + 1, m);
                for (std::size_t i = 0; i < b.rows(); ++i)
                    for (std::size_t k = 0; k < m; ++k) stacked(i, k) = b(i, k);
                for (std::size_t k = 0; k < m; ++k) stacked(b.rows(), k) = v[k];
                if (rank(stacked) == b.rows()) ++inside;
            }
            if (inside != b.rows()) return false;
        }
    return true;
}

// Nonzero proper subspaces of Q^m spanned by 0/1 vectors, and all chains of them.
inline std::vector<std::vector<Subspace>> grid_chains(std::size_t m) {
    std::vector<QVector> vecs;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        QVector v(m);
        for (std::size_t k = 0; k < m; ++k) v[k] = (mask >> k) & 1u;
        vecs.push_back(v);
    }
    std::vector<Subspace> spaces;
    auto add = [&](const Subspace& s) {
        if (s.dim() == 0 || s.dim() == m) return;
        if (oracle::find_space(spaces, s) == spaces.size()) spaces.push_back(s);
    };
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        add(Subspace::span({vecs[a]}, m));
        for (std::size_t b = a + 1; b < vecs.size(); ++b) add(Subspace::span({vecs[a], vecs[b]}, m));
    }
    std::vector<std::vector<Subspace>> chains = {{}};
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (const auto& s : spaces) {
            const auto& c = chains[i];
            if (!c.empty() && !(c.back().contains(s) && c.back().dim() > s.dim())) continue;
            auto next = c;
            next.push_back(s);
            chains.push_back(next);
        }
    return chains;
}

inline Filtration from_chain(std::size_t m, const std::vector<Subspace>& chain) {
    std::vector<Filtration::Step> steps;
    for (std::size_t i = 0; i < chain.size(); ++i) steps.push_back({static_cast<long>(i + 1), chain[i]});
    return Filtration(m, steps);
}


}  // namespace census

#endif  // LOGCONN_TESTS_FILTRATION_CENSUS_HPP

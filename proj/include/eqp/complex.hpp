#ifndef EQP_COMPLEX_HPP
#define EQP_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/poset.hpp"

namespace eqp {

/// An abstract simplicial complex: sorted vertex-index tuples grouped by
/// dimension, closed under taking faces.
struct SimplicialComplex {
    int n_vertices = 0;
    std::vector<std::vector<std::vector<int>>> faces;   // faces[d], each sorted

    int dim() const { return static_cast<int>(faces.size()) - 1; }

    long long face_count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return static_cast<long long>(faces[d].size());
    }

    bool empty() const { return faces.empty() || faces[0].empty(); }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int d = 0; d <= dim(); ++d) chi += (d % 2 ? -1 : 1) * face_count(d);
        return chi;
    }

    int face_index(int d, const std::vector<int>& simplex) const {
        const auto& level = faces[d];
        auto it = std::lower_bound(level.begin(), level.end(), simplex);
        if (it == level.end() || *it != simplex) return -1;
        return static_cast<int>(it - level.begin());
    }

    bool closed_under_faces() const {
        for (int d = 1; d <= dim(); ++d)
            for (const auto& f : faces[d])
                for (size_t skip = 0; skip < f.size(); ++skip) {
                    std::vector<int> sub;
                    for (size_t i = 0; i < f.size(); ++i)
                        if (i != skip) sub.push_back(f[i]);
                    if (face_index(d - 1, sub) < 0) return false;
                }
        return true;
    }
};

/// Build from an explicit list of simplices that is already closed under
/// faces (duplicates are fine).
inline SimplicialComplex complex_from_faces(int n_vertices,
                                            const std::vector<std::vector<int>>& simplices) {
    SimplicialComplex K;
    K.n_vertices = n_vertices;
    std::vector<std::set<std::vector<int>>> by_dim;
    for (const auto& s : simplices) {
        if (s.empty()) continue;
        std::vector<int> t = s;
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            throw std::invalid_argument("complex_from_faces: repeated vertex in simplex");
        int d = static_cast<int>(t.size()) - 1;
        if (d >= static_cast<int>(by_dim.size())) by_dim.resize(d + 1);
        by_dim[d].insert(std::move(t));
    }
    for (auto& level : by_dim)
        K.faces.emplace_back(level.begin(), level.end());
    return K;
}

/// Build from maximal simplices, closing downward.
inline SimplicialComplex complex_from_maximal(int n_vertices,
                                              const std::vector<std::vector<int>>& maximal) {
    std::vector<std::set<std::vector<int>>> by_dim;
    auto insert_with_faces = [&](const std::vector<int>& simplex) {
        std::vector<std::vector<int>> stack{simplex};
        while (!stack.empty()) {
            std::vector<int> s = std::move(stack.back());
            stack.pop_back();
            int d = static_cast<int>(s.size()) - 1;
            if (d >= static_cast<int>(by_dim.size())) by_dim.resize(d + 1);
            if (!by_dim[d].insert(s).second) continue;
            if (s.size() > 1)
                for (size_t skip = 0; skip < s.size(); ++skip) {
                    std::vector<int> sub;
                    for (size_t i = 0; i < s.size(); ++i)
                        if (i != skip) sub.push_back(s[i]);
                    stack.push_back(std::move(sub));
                }
        }
    };
    for (const auto& m : maximal) {
        std::vector<int> t = m;
        std::sort(t.begin(), t.end());
        insert_with_faces(t);
    }
    SimplicialComplex K;
    K.n_vertices = n_vertices;
    for (auto& level : by_dim)
        K.faces.emplace_back(level.begin(), level.end());
    return K;
}

/// Order complex of a poset: k-simplices are the strict (k+1)-chains.
inline SimplicialComplex order_complex(const ActedPoset& P, long long guard = 5'000'000) {
    std::vector<std::vector<int>> chains = enumerate_strict_chains(P, nullptr, guard);
    SimplicialComplex K = complex_from_faces(P.size(), chains);
    K.n_vertices = P.size();
    return K;
}

/// Flat text export: one maximal face per line as space-separated vertex
/// indices.
inline void export_maximal_faces(const SimplicialComplex& K, std::ostream& out) {
    std::set<std::vector<int>> non_maximal;
    for (int d = 1; d <= K.dim(); ++d)
        for (const auto& f : K.faces[d])
            for (size_t skip = 0; skip < f.size(); ++skip) {
                std::vector<int> sub;
                for (size_t i = 0; i < f.size(); ++i)
                    if (i != skip) sub.push_back(f[i]);
                non_maximal.insert(std::move(sub));
            }
    for (int d = 0; d <= K.dim(); ++d)
        for (const auto& f : K.faces[d]) {
            if (non_maximal.count(f)) continue;
            for (size_t i = 0; i < f.size(); ++i) {
                if (i) out << ' ';
                out << f[i];
            }
            out << '\n';
        }
}

/// Apply a vertex permutation to every face; returns false if some image is
/// not a face (i.e. the permutation is not simplicial).
inline bool is_simplicial_automorphism(const SimplicialComplex& K, const Perm& sigma) {
    if (sigma.degree() != K.n_vertices) return false;
    for (int d = 0; d <= K.dim(); ++d)
        for (const auto& f : K.faces[d]) {
            std::vector<int> img;
            img.reserve(f.size());
            for (int v : f) img.push_back(sigma(v));
            std::sort(img.begin(), img.end());
            if (K.face_index(d, img) < 0) return false;
        }
    return true;
}

} // namespace eqp

#endif

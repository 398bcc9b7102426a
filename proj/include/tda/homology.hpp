#pragma once

#include <map>
#include <vector>

#include "tda/chain.hpp"
#include "tda/complex.hpp"

namespace tda {

/// Column per p-simplex, row per (p-1)-simplex; the j-th face gets (-1)^j.
inline Matrix boundary_matrix(const SimplicialComplex& k, int p, const Field& f) {
  const auto& cols = k.simplices(p);
  Matrix m(k.count(p - 1), cols.size());
  if (p <= 0) return m;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<Entry> entries;
    for (std::size_t j = 0; j < cols[c].size(); ++j) {
      entries.push_back({*k.index_of(cols[c].face(j)), f.sign(j)});
    }
    m.set_column(c, SparseVector::from_entries(std::move(entries), f));
  }
  return m;
}

/// delta^p : C^p -> C^{p+1}, the transpose of the (p+1)-boundary.
inline Matrix coboundary_matrix(const SimplicialComplex& k, int p, const Field& f) {
  if (p < 0) return Matrix(k.count(0), 0);
  return boundary_matrix(k, p + 1, f).transpose();
}

struct HomologyResult {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<SparseVector> cycle_basis;  ///< chain vectors in the lexicographic p-simplex basis
};

inline HomologyBasis homology_basis(const SimplicialComplex& k, int p, const Field& f) {
  return HomologyBasis(boundary_matrix(k, p, f), boundary_matrix(k, p + 1, f), f);
}

inline HomologyResult homology(const SimplicialComplex& k, int p, const Field& f = Field{2}) {
  auto hb = homology_basis(k, p, f);
  return {p, hb.dimension(), hb.cycles()};
}

inline HomologyBasis cohomology_basis(const SimplicialComplex& k, int p, const Field& f) {
  return HomologyBasis(coboundary_matrix(k, p, f), coboundary_matrix(k, p - 1, f), f);
}

inline HomologyResult cohomology(const SimplicialComplex& k, int p, const Field& f = Field{2}) {
  auto hb = cohomology_basis(k, p, f);
  return {p, hb.dimension(), hb.cycles()};
}

/// Betti number from ranks alone, without building a cycle basis.
inline std::size_t betti(const SimplicialComplex& k, int p, const Field& f = Field{2}) {
  const auto n = k.count(p);
  if (n == 0) return 0;
  return n - rank(boundary_matrix(k, p, f), f) - rank(boundary_matrix(k, p + 1, f), f);
}

using VertexMap = std::map<Vertex, Vertex>;

/// Throws NonSimplicialMap unless every simplex of `source` lands on a simplex of `target`.
inline void check_simplicial(const SimplicialComplex& source, const SimplicialComplex& target, const VertexMap& f) {
  for (int p = 0; p <= source.dimension(); ++p) {
    for (const auto& s : source.simplices(p)) {
      std::vector<Vertex> image;
      for (auto v : s.vertices()) {
        auto it = f.find(v);
        if (it == f.end()) throw NonSimplicialMap("vertex " + std::to_string(v) + " has no image");
        image.push_back(it->second);
      }
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      Simplex t(image);
      if (!target.contains(t)) {
        throw NonSimplicialMap("image of " + s.str() + " is " + t.str() + ", which is not a simplex of the target");
      }
    }
  }
}

/// C_p(f). A simplex whose image has a repeated vertex goes to zero; otherwise
/// to its image simplex with the sign of the sorting permutation.
inline Matrix chain_map(const SimplicialComplex& source, const SimplicialComplex& target, const VertexMap& f, int p,
                        const Field& fld) {
  const auto& cols = source.simplices(p);
  Matrix m(target.count(p), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<Vertex> image;
    for (auto v : cols[c].vertices()) {
      auto it = f.find(v);
      if (it == f.end()) throw NonSimplicialMap("vertex " + std::to_string(v) + " has no image");
      image.push_back(it->second);
    }
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
      for (std::size_t j = i + 1; j < image.size(); ++j) inversions += image[i] > image[j] ? 1 : 0;
    }
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) continue;
    Simplex t(image);
    auto idx = target.index_of(t);
    if (!idx) throw NonSimplicialMap("image of " + cols[c].str() + " is not a simplex of the target");
    m.set_column(c, SparseVector::from_entries({{*idx, fld.sign(inversions)}}, fld));
  }
  return m;
}

inline VertexMap identity_map(const SimplicialComplex& k) {
  VertexMap f;
  for (auto v : k.vertices()) f[v] = v;
  return f;
}

/// Matrix of H_p(f): H_p(source) -> H_p(target) in the homology_basis bases.
/// The chain map is checked against both boundary operators before use.
inline Matrix induced_map(const SimplicialComplex& source, const SimplicialComplex& target, const VertexMap& f, int p,
                          const Field& fld = Field{2}) {
  check_simplicial(source, target, f);
  const auto cp = chain_map(source, target, f, p, fld);
  if (p > 0) {
    const auto lhs = multiply(chain_map(source, target, f, p - 1, fld), boundary_matrix(source, p, fld), fld);
    const auto rhs = multiply(boundary_matrix(target, p, fld), cp, fld);
    if (lhs != rhs) throw Error("chain map does not commute with the boundary");
  }
  return map_on_homology(homology_basis(source, p, fld), homology_basis(target, p, fld), cp);
}

}  // namespace tda

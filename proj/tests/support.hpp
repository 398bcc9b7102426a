#pragma once

// Fixtures and random generators shared by the unit and acceptance suites.
// Randomness comes from mt19937_64 with hand-rolled mappings so results are
// identical across standard library implementations.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "tda/tda.hpp"

namespace tda::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a = 0, double b = 1) {
    return a + (b - a) * static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

inline SimplicialComplex interval_complex() { return build_complex({{0, 1}}); }
inline SimplicialComplex hollow_triangle() { return build_complex({{0, 1}, {1, 2}, {0, 2}}); }
inline SimplicialComplex solid_triangle() { return build_complex({{0, 1, 2}}); }

/// Boundary of the octahedron: a triangulated 2-sphere on vertices base..base+5.
inline SimplicialComplex octahedron(Vertex base = 0) {
  std::vector<Simplex> faces;
  const Vertex top = base + 4, bottom = base + 5;
  for (Vertex i = 0; i < 4; ++i) {
    const Vertex a = base + i, b = base + (i + 1) % 4;
    faces.push_back({a, b, top});
    faces.push_back({a, b, bottom});
  }
  return build_complex(faces);
}

/// Union of complexes with disjoint vertex sets.
inline SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  auto s = a.all();
  auto t = b.all();
  s.insert(s.end(), t.begin(), t.end());
  return SimplicialComplex::from_closed(s);
}

inline SimplicialComplex shift(const SimplicialComplex& k, Vertex offset) {
  std::vector<Simplex> out;
  for (const auto& s : k.all()) {
    std::vector<Vertex> v;
    for (auto x : s.vertices()) v.push_back(x + offset);
    out.emplace_back(v);
  }
  return SimplicialComplex::from_closed(out);
}

/// 8-cycle on the unit circle; the function is the x coordinate.
inline MappedComplex octagon_circle(Vertex base = 0) {
  std::vector<Simplex> edges;
  std::map<Vertex, double> f;
  for (Vertex k = 0; k < 8; ++k) {
    edges.push_back({base + k, base + (k + 1) % 8});
    f[base + k] = std::cos(2 * std::numbers::pi * k / 8);
  }
  return MappedComplex(build_complex(edges), f);
}

inline IntervalCover octagon_cover() { return IntervalCover({{-1.5, -0.3}, {-0.8, 0.8}, {0.3, 1.5}}); }

/// Grid triangulation of the torus with the height function of a torus standing
/// on its side: min -(R+r), saddles -(R-r) and R-r, max R+r.
inline MappedComplex grid_torus(std::size_t n, std::size_t m, double big_r = 2, double small_r = 1) {
  const auto id = [&](std::size_t i, std::size_t j) { return static_cast<Vertex>((i % n) * m + (j % m)); };
  std::vector<Simplex> triangles;
  std::map<Vertex, double> f;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      const double theta = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      const double phi = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      f[id(i, j)] = (big_r + small_r * std::cos(phi)) * std::cos(theta);
    }
  }
  return MappedComplex(build_complex(triangles), f);
}

/// One piece around each critical value (-3, -1, 1, 3); overlaps sit in regular bands.
inline IntervalCover torus_cover4() { return IntervalCover({{-4, -1.6}, {-2.4, 0.4}, {-0.4, 2.4}, {1.6, 4}}); }

/// Five pieces: the band between the saddles gets a piece of its own.
inline IntervalCover torus_cover5() {
  return IntervalCover({{-4, -1.6}, {-2.4, -0.2}, {-0.8, 0.8}, {0.2, 2.4}, {1.6, 4}});
}

/// Grid fine enough for both torus covers to be admissible.
inline MappedComplex standard_torus() { return grid_torus(32, 16); }

inline constexpr double kCircleRadius = 1.0;
inline constexpr std::uint64_t kCircleSeed = 60;

/// Noisy sample of a circle of the given radius; noise is radial, |noise| <= 0.05 R.
inline PointCloud circle_sample(std::size_t n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = rng.uniform(0, 2 * std::numbers::pi);
    const double rho = radius * (1 + rng.uniform(-0.05, 0.05));
    pts.push_back({rho * std::cos(theta), rho * std::sin(theta)});
  }
  return PointCloud(pts);
}

inline PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim, double scale = 1) {
  std::vector<Point> pts(n, Point(dim));
  for (auto& p : pts) {
    for (auto& x : p) x = rng.uniform(0, scale);
  }
  return PointCloud(pts);
}

/// Plus-shaped cloud: the origin (index 0) and four arms of `arm` points each,
/// `spacing` apart. Arm a, step j (1-based) has index 1 + a*arm + j - 1.
inline PointCloud plus_cloud(std::size_t arm, double spacing) {
  std::vector<Point> pts{{0, 0}};
  const double dirs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& d : dirs) {
    for (std::size_t j = 1; j <= arm; ++j) pts.push_back({d[0] * spacing * j, d[1] * spacing * j});
  }
  return PointCloud(pts);
}

inline std::set<std::size_t> plus_tips(std::size_t arm) {
  std::set<std::size_t> out;
  for (std::size_t a = 0; a < 4; ++a) out.insert(1 + a * arm + arm - 1);
  return out;
}

/// Random 2-dimensional complex: a random subcomplex of a triangulated strip
/// three vertices high (triangles and stray edges, so holes give H_1), often
/// with a disjoint octahedron so that degree 2 is exercised. The value of a
/// vertex is its column plus noise.
inline MappedComplex random_mapped_complex(Rng& rng, std::size_t max_vertices = 30) {
  const bool octa = max_vertices >= 12 && rng.chance(0.3);
  const std::size_t rows = 3;
  const std::size_t cols = rng.between(2, (max_vertices - (octa ? 6 : 0)) / rows);
  const auto id = [&](std::size_t i, std::size_t j) { return static_cast<Vertex>(i * rows + j); };
  std::vector<Simplex> simplices;
  std::map<Vertex, double> f;
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      f[id(i, j)] = static_cast<double>(i) + rng.uniform(-0.1, 0.1);
      simplices.push_back({id(i, j)});
      if (i + 1 < cols && rng.chance(0.5)) simplices.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < rows && rng.chance(0.5)) simplices.push_back({id(i, j), id(i, j + 1)});
      if (i + 1 < cols && j + 1 < rows) {
        if (rng.chance(0.6)) simplices.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        if (rng.chance(0.6)) simplices.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      }
    }
  }
  if (octa) {
    const auto base = static_cast<Vertex>(cols * rows);
    const auto o = octahedron(base).all();
    simplices.insert(simplices.end(), o.begin(), o.end());
    const double x0 = rng.uniform(0, static_cast<double>(cols));
    for (Vertex i = 0; i < 6; ++i) f[base + i] = x0 + rng.uniform(-0.5, 0.5);
  }
  return MappedComplex(build_complex(simplices), f);
}

/// Largest value range of a simplex.
inline double max_span(const MappedComplex& m) {
  double s = 0;
  for (const auto& x : m.complex().all()) {
    auto [lo, hi] = m.span(x);
    s = std::max(s, hi - lo);
  }
  return s;
}

/// Admissible linear cover with overlaps wider than every simplex span.
/// Consecutive pieces overlap in (c - delta, c + delta).
/// Breakpoints are at least `spacing_factor * delta` apart.
inline std::vector<double> random_breakpoints(Rng& rng, const MappedComplex& m, double delta, double spacing_factor) {
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& [v, x] : m.values()) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<double> cuts;
  double c = lo + rng.uniform(0, 2) * delta;
  while (true) {
    c += spacing_factor * delta * (1 + rng.uniform(0, 0.6));
    if (c >= hi) break;
    cuts.push_back(c);
  }
  return cuts;
}

inline IntervalCover cover_from_breakpoints(const MappedComplex& m, const std::vector<double>& cuts, double delta) {
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& [v, x] : m.values()) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::vector<OpenInterval> us;
  double left = lo - 1;
  for (double c : cuts) {
    us.push_back({left, c + delta});
    left = c - delta;
  }
  us.push_back({left, hi + 1});
  return IntervalCover(us);
}

inline IntervalCover random_admissible_cover(Rng& rng, const MappedComplex& m, double spacing_factor = 2.2) {
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& [v, x] : m.values()) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  // the floor keeps nearly edgeless complexes from getting hundreds of pieces
  // overlaps of width 2 delta > span hold every simplex
  const double delta = std::max(max_span(m) * rng.uniform(0.55, 0.8), (hi - lo) / 40) + 1e-3;
  return cover_from_breakpoints(m, random_breakpoints(rng, m, delta, spacing_factor), delta);
}

/// Random Rips filtration on n points of the plane.
inline FilteredComplex random_filtration(Rng& rng, std::size_t n) {
  return rips_filtration(random_cloud(rng, n, 2), 2, 0.8);
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const Field& f) {
  std::vector<std::int64_t> e(rows * cols);
  for (auto& x : e) x = static_cast<std::int64_t>(rng.below(f.characteristic()));
  return Matrix::from_rows(rows, cols, e, f);
}

inline ZigzagModule random_zigzag(Rng& rng, std::size_t max_len, std::size_t max_dim, const Field& f) {
  ZigzagModule z;
  const auto n = rng.between(1, max_len);
  for (std::size_t i = 0; i < n; ++i) z.dims.push_back(rng.between(0, max_dim));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto dir = rng.chance(0.5) ? Direction::forward : Direction::backward;
    const auto src = dir == Direction::forward ? z.dims[i] : z.dims[i + 1];
    const auto tgt = dir == Direction::forward ? z.dims[i + 1] : z.dims[i];
    Matrix m = random_matrix(rng, tgt, src, f);
    // bias towards low rank now and then
    if (rng.chance(0.25)) m = Matrix(tgt, src);
    z.arrows.push_back({dir, std::move(m)});
  }
  return z;
}

/// Inverse of a square matrix by Gauss-Jordan; the input must be invertible.
inline Matrix invert(const Matrix& a, const Field& f) {
  const auto n = a.rows();
  std::vector<std::vector<Field::value_type>> m(n, std::vector<Field::value_type>(2 * n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& e : a.column(c)) m[e.index][c] = e.value;
    m[c][n + c] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw Error("matrix is singular");
    std::swap(m[piv], m[col]);
    const auto inv = f.inv(m[col][col]);
    for (auto& x : m[col]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const auto factor = m[r][col];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[col][k]));
    }
  }
  std::vector<std::int64_t> e;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) e.push_back(m[r][n + c]);
  }
  return Matrix::from_rows(n, n, e, f);
}

inline Matrix random_invertible(Rng& rng, std::size_t n, const Field& f) {
  while (true) {
    auto m = random_matrix(rng, n, n, f);
    if (rank(m, f) == n) return m;
  }
}

/// A valid cosheaf with nontrivial maps: coordinate subspaces nested along
/// faces, then a random change of basis in every stalk.
inline SimplicialCosheaf random_cosheaf(Rng& rng, const SimplicialComplex& k, std::size_t ambient, const Field& f) {
  std::map<Simplex, std::vector<std::size_t>> coords;
  for (const auto& s : k.all()) {
    std::vector<std::size_t> allowed;
    for (std::size_t a = 0; a < ambient; ++a) {
      bool ok = true;
      if (s.size() > 1) {
        for (std::size_t j = 0; j < s.size() && ok; ++j) {
          const auto& fc = coords.at(s.face(j));
          ok = std::find(fc.begin(), fc.end(), a) != fc.end();
        }
      }
      if (ok && rng.chance(0.75)) allowed.push_back(a);
    }
    coords[s] = allowed;
  }
  SimplicialCosheaf c(k);
  std::map<Simplex, Matrix> change, change_inv;
  for (const auto& s : k.all()) {
    c.set_stalk(s, coords[s].size());
    change[s] = random_invertible(rng, coords[s].size(), f);
    change_inv[s] = invert(change[s], f);
  }
  for (int p = 1; p <= k.dimension(); ++p) {
    for (const auto& tau : k.simplices(p)) {
      for (std::size_t j = 0; j < tau.size(); ++j) {
        const auto sigma = tau.face(j);
        const auto& big = coords[sigma];
        const auto& small = coords[tau];
        Matrix inc(big.size(), small.size());
        for (std::size_t q = 0; q < small.size(); ++q) {
          const auto pos = static_cast<std::size_t>(std::find(big.begin(), big.end(), small[q]) - big.begin());
          inc.set_column(q, SparseVector::unit(pos));
        }
        c.set_extension(sigma, tau, multiply(change[sigma], multiply(inc, change_inv[tau], f), f));
      }
    }
  }
  return c;
}

/// Random face-closed complex: closure of random simplices on n vertices.
inline SimplicialComplex random_complex(Rng& rng, std::size_t n, int max_dim, std::size_t count) {
  std::vector<Simplex> tops;
  for (std::size_t c = 0; c < count; ++c) {
    const auto size = rng.between(1, static_cast<std::size_t>(max_dim) + 1);
    std::set<Vertex> vs;
    while (vs.size() < std::min(size, n)) vs.insert(static_cast<Vertex>(rng.below(n)));
    tops.emplace_back(std::vector<Vertex>(vs.begin(), vs.end()));
  }
  return build_complex(tops);
}

/// Image of k under a vertex map (degenerate images collapse to smaller simplices).
inline SimplicialComplex image_complex(const SimplicialComplex& k, const VertexMap& f) {
  std::vector<Simplex> images;
  for (const auto& s : k.all()) {
    std::set<Vertex> vs;
    for (auto v : s.vertices()) vs.insert(f.at(v));
    images.emplace_back(std::vector<Vertex>(vs.begin(), vs.end()));
  }
  return build_complex(images);
}

inline VertexMap random_vertex_map(Rng& rng, const SimplicialComplex& k, std::size_t targets) {
  VertexMap f;
  for (auto v : k.vertices()) f[v] = static_cast<Vertex>(rng.below(targets));
  return f;
}

/// Connected components of a complex as full subcomplexes, by union-find on edges.
inline std::vector<SimplicialComplex> components(const SimplicialComplex& k) {
  std::map<Vertex, Vertex> parent;
  for (auto v : k.vertices()) parent[v] = v;
  std::function<Vertex(Vertex)> root = [&](Vertex v) { return parent[v] == v ? v : parent[v] = root(parent[v]); };
  for (const auto& e : k.simplices(1)) parent[root(e[0])] = root(e[1]);
  std::set<Vertex> roots;
  for (auto v : k.vertices()) roots.insert(root(v));
  std::vector<SimplicialComplex> out;
  for (auto r : roots) out.push_back(k.full_subcomplex([&](Vertex v) { return root(v) == r; }));
  return out;
}

/// Entries of the p-chain `chain` of k that sit on simplices of sub, reindexed for sub.
inline SparseVector restrict_chain(const SparseVector& chain, const SimplicialComplex& k, const SimplicialComplex& sub,
                                   int p, const Field& f) {
  std::vector<Entry> e;
  for (const auto& x : chain) {
    if (auto idx = sub.index_of(k.simplices(p)[x.index])) e.push_back({*idx, x.value});
  }
  return SparseVector::from_entries(e, f);
}

/// Coordinates over F2 of a 1-chain of a degree-1 Leray cosheaf in the basis
/// with one circle class per connected component of each edge preimage. The
/// components are required to be annuli (H_1 = k); otherwise this throws.
inline std::vector<std::uint32_t> circle_coordinates(const LerayCosheaf& c, const SparseVector& chain) {
  const Field f2(2);
  std::vector<std::uint32_t> out;
  const auto off = c.cosheaf.offsets(1);
  const auto& edges = c.cosheaf.base().simplices(1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& piece = c.piece(edges[e]);
    SparseVector cycle;
    for (std::size_t k = 0; k < piece.basis.dimension(); ++k) cycle.axpy(chain.at(off[e] + k), piece.basis.cycles()[k], f2);
    for (const auto& comp : components(piece.subcomplex)) {
      const auto hb = homology_basis(comp, 1, f2);
      if (hb.dimension() != 1) throw Error("edge piece component is not a circle");
      out.push_back(hb.is_boundary(restrict_chain(cycle, piece.subcomplex, comp, 1, f2)) ? 0 : 1);
    }
  }
  return out;
}

}  // namespace tda::testing

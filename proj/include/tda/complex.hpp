#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tda/errors.hpp"

namespace tda {

using Vertex = std::uint32_t;

/// An oriented simplex: strictly increasing vertex ids.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

  explicit Simplex(std::vector<Vertex> vs) : vertices_(std::move(vs)) {
    if (vertices_.empty()) throw MalformedSimplex("simplex has no vertices");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
      throw MalformedSimplex("repeated vertex in simplex " + to_string(vertices_));
    }
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// The face obtained by deleting the j-th vertex.
  Simplex face(std::size_t j) const {
    Simplex s;
    s.vertices_ = vertices_;
    s.vertices_.erase(s.vertices_.begin() + static_cast<std::ptrdiff_t>(j));
    return s;
  }

  bool is_face_of(const Simplex& other) const {
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
  }

  std::string str() const { return to_string(vertices_); }

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  static std::string to_string(const std::vector<Vertex>& vs) {
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "]";
  }

  std::vector<Vertex> vertices_;
};

/// Finite face-closed set of simplices. Simplices of each dimension are kept
/// in lexicographic order, which fixes the chain-group bases.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Face closure of an arbitrary list of simplices.
  static SimplicialComplex closure(const std::vector<Simplex>& simplices) {
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& s : simplices) {
      const auto n = s.size();
      if (n > 24) throw MalformedSimplex("simplex " + s.str() + " too large to close");
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<Vertex> sub;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) sub.push_back(s[i]);
        }
        const auto d = sub.size() - 1;
        if (by_dim.size() <= d) by_dim.resize(d + 1);
        by_dim[d].insert(Simplex(std::move(sub)));
      }
    }
    SimplicialComplex k;
    for (auto& level : by_dim) k.by_dim_.emplace_back(level.begin(), level.end());
    return k;
  }

  /// Takes a list that must already be face closed; throws otherwise.
  static SimplicialComplex from_closed(const std::vector<Simplex>& simplices) {
    auto k = from_unique(simplices);
    if (auto missing = k.first_missing_face()) {
      throw MalformedSimplex("simplex list is not face closed: missing " + missing->str());
    }
    return k;
  }

  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  bool empty() const { return by_dim_.empty(); }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
  }

  /// p-simplices in lexicographic order (empty for p outside [0, dim]).
  const std::vector<Simplex>& simplices(int p) const {
    static const std::vector<Simplex> kEmpty;
    if (p < 0 || p >= static_cast<int>(by_dim_.size())) return kEmpty;
    return by_dim_[static_cast<std::size_t>(p)];
  }

  std::size_t count(int p) const { return simplices(p).size(); }

  /// Every simplex, by dimension then lexicographically.
  std::vector<Simplex> all() const {
    std::vector<Simplex> out;
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (const auto& s : simplices(0)) out.push_back(s[0]);
    return out;
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const auto& level = simplices(s.dimension());
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  bool is_subcomplex_of(const SimplicialComplex& other) const {
    for (const auto& level : by_dim_) {
      for (const auto& s : level) {
        if (!other.contains(s)) return false;
      }
    }
    return true;
  }

  /// Full subcomplex on the vertices accepted by `keep`.
  template <class Pred>
  SimplicialComplex full_subcomplex(Pred keep) const {
    SimplicialComplex k;
    for (const auto& level : by_dim_) {
      std::vector<Simplex> kept;
      for (const auto& s : level) {
        if (std::all_of(s.vertices().begin(), s.vertices().end(), keep)) kept.push_back(s);
      }
      if (kept.empty()) break;
      k.by_dim_.push_back(std::move(kept));
    }
    return k;
  }

  /// Subcomplex of simplices accepted by `keep`; `keep` must be closed under faces.
  template <class Pred>
  SimplicialComplex filter(Pred keep) const {
    std::vector<Simplex> kept;
    for (const auto& level : by_dim_) {
      for (const auto& s : level) {
        if (keep(s)) kept.push_back(s);
      }
    }
    return from_closed(kept);
  }

  std::optional<Simplex> first_missing_face() const {
    for (std::size_t d = 1; d < by_dim_.size(); ++d) {
      for (const auto& s : by_dim_[d]) {
        for (std::size_t j = 0; j < s.size(); ++j) {
          auto f = s.face(j);
          if (!contains(f)) return f;
        }
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  static SimplicialComplex from_unique(const std::vector<Simplex>& simplices) {
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& s : simplices) {
      const auto d = static_cast<std::size_t>(s.dimension());
      if (by_dim.size() <= d) by_dim.resize(d + 1);
      by_dim[d].insert(s);
    }
    SimplicialComplex k;
    for (auto& level : by_dim) {
      if (level.empty()) throw MalformedSimplex("simplex list is not face closed: a dimension is skipped");
      k.by_dim_.emplace_back(level.begin(), level.end());
    }
    return k;
  }

  std::vector<std::vector<Simplex>> by_dim_;
};

inline SimplicialComplex build_complex(const std::vector<Simplex>& simplices) {
  return SimplicialComplex::closure(simplices);
}

using Point = std::vector<double>;

/// Finite set of points in R^n, all of one dimension n >= 1.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Point> points) : points_(std::move(points)) {
    for (const auto& p : points_) {
      if (p.empty()) throw InvalidMetric("point with no coordinates");
      if (p.size() != points_.front().size()) throw InvalidMetric("points do not share one dimension");
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t ambient_dim() const { return points_.empty() ? 0 : points_.front().size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
};

inline double squared_distance(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

/// Symmetric matrix of squared distances. Comparisons are done on squares so
/// point-cloud input never goes through a square root.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(const PointCloud& pc) : n_(pc.size()), sq_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        sq_[i * n_ + j] = sq_[j * n_ + i] = squared_distance(pc[i], pc[j]);
      }
    }
  }

  /// Full matrix of (unsquared) distances; must be square, symmetric, zero
  /// diagonal, nonnegative.
  static DistanceMatrix from_distances(const std::vector<std::vector<double>>& d) {
    DistanceMatrix m;
    m.n_ = d.size();
    m.sq_.assign(m.n_ * m.n_, 0.0);
    for (std::size_t i = 0; i < m.n_; ++i) {
      if (d[i].size() != m.n_) throw InvalidMetric("distance matrix is not square");
      for (std::size_t j = 0; j < m.n_; ++j) {
        const double x = d[i][j];
        if (!(x >= 0) || !std::isfinite(x)) throw InvalidMetric("distance matrix has a negative or non-finite entry");
        if (i == j && x != 0) throw InvalidMetric("distance matrix has a nonzero diagonal");
        if (std::abs(x - d[j][i]) > 1e-9 * std::max(1.0, std::abs(x))) {
          throw InvalidMetric("distance matrix is not symmetric");
        }
        m.sq_[i * m.n_ + j] = x * x;
      }
    }
    return m;
  }

  /// Lower triangle: row i holds the i distances d(i, 0..i-1).
  static DistanceMatrix from_lower_triangle(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != i) {
        throw InvalidMetric("lower-triangular row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(i));
      }
      for (std::size_t j = 0; j < i; ++j) full[i][j] = full[j][i] = rows[i][j];
    }
    return from_distances(full);
  }

  std::size_t size() const { return n_; }
  double squared(std::size_t i, std::size_t j) const { return sq_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return std::sqrt(squared(i, j)); }

 private:
  std::size_t n_ = 0;
  std::vector<double> sq_;
};

namespace detail {

/// Closed-ball comparison x <= limit with a relative tolerance of 1e-9.
inline bool within(double x, double limit) { return x <= limit + 1e-9 * std::max(1.0, std::abs(limit)); }

/// Depth-first enumeration of vertex sets in increasing order. `extend(sigma, v)`
/// decides whether sigma + v (v larger than every vertex of sigma) is accepted;
/// acceptance must be closed under faces for the output to be complete.
template <class Extend>
std::vector<Simplex> enumerate_simplices(std::size_t n, int max_dim, Extend extend) {
  std::vector<Simplex> out;
  std::vector<Vertex> current;
  std::function<void(Vertex)> grow = [&](Vertex start) {
    for (Vertex v = start; v < n; ++v) {
      if (!current.empty() && !extend(current, v)) continue;
      current.push_back(v);
      out.emplace_back(current);
      if (static_cast<int>(current.size()) <= max_dim) grow(v + 1);
      current.pop_back();
    }
  };
  if (max_dim >= 0) grow(0);
  return out;
}

}  // namespace detail

/// Vietoris-Rips complex at scale r: sigma is in iff every pairwise distance is <= 2r.
inline SimplicialComplex build_rips(const DistanceMatrix& d, double r, int max_dim = 2) {
  if (!(r > 0)) throw InvalidMetric("Rips radius must be positive");
  if (max_dim < 0) throw InvalidMetric("max_dim must be nonnegative");
  const double limit = 4 * r * r;
  auto simplices = detail::enumerate_simplices(d.size(), max_dim, [&](const std::vector<Vertex>& s, Vertex v) {
    return std::all_of(s.begin(), s.end(), [&](Vertex u) { return detail::within(d.squared(u, v), limit); });
  });
  return SimplicialComplex::from_closed(simplices);
}

inline SimplicialComplex build_rips(const PointCloud& pc, double r, int max_dim = 2) {
  return build_rips(DistanceMatrix(pc), r, max_dim);
}

struct Ball {
  Point center;
  double radius = -1;  // negative: the empty ball

  bool contains(const Point& p) const {
    if (radius < 0) return false;
    return detail::within(squared_distance(center, p), radius * radius);
  }
};

namespace detail {

/// Smallest ball with all of `boundary` on its sphere: the circumcenter within
/// their affine hull. Affinely dependent input drops redundant directions.
inline Ball circumball(const std::vector<const Point*>& boundary) {
  if (boundary.empty()) return {};
  const Point& q0 = *boundary[0];
  const std::size_t k = boundary.size() - 1;
  if (k == 0) return {q0, 0.0};
  const std::size_t dim = q0.size();
  std::vector<Point> u(k, Point(dim));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < dim; ++c) u[i][c] = (*boundary[i + 1])[c] - q0[c];
  }
  // 2 <u_i, u_j> lambda_j = |u_i|^2
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0;
      for (std::size_t c = 0; c < dim; ++c) s += u[i][c] * u[j][c];
      a[i][j] = 2 * s;
    }
    double s = 0;
    for (std::size_t c = 0; c < dim; ++c) s += u[i][c] * u[i][c];
    a[i][k] = s;
  }
  double scale = 0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(a[i][i]));
  std::vector<bool> free_var(k, true);
  std::vector<std::size_t> pivot_row_of(k, k);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < k; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < k; ++i) {
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    }
    if (std::abs(a[best][col]) <= 1e-12 * std::max(scale, 1e-300)) continue;
    std::swap(a[row], a[best]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == row) continue;
      const double factor = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= factor * a[row][j];
    }
    free_var[col] = false;
    pivot_row_of[col] = row;
    ++row;
  }
  Point center = q0;
  for (std::size_t j = 0; j < k; ++j) {
    if (free_var[j]) continue;
    const double lambda = a[pivot_row_of[j]][k] / a[pivot_row_of[j]][j];
    for (std::size_t c = 0; c < dim; ++c) center[c] += lambda * u[j][c];
  }
  double r2 = 0;
  for (const auto* p : boundary) r2 = std::max(r2, squared_distance(center, *p));
  return {center, std::sqrt(r2)};
}

inline Ball welzl(std::vector<const Point*>& pts, std::size_t n, std::vector<const Point*>& boundary,
                  std::size_t dim) {
  if (n == 0 || boundary.size() == dim + 1) return circumball(boundary);
  const Point* p = pts[n - 1];
  Ball b = welzl(pts, n - 1, boundary, dim);
  if (b.contains(*p)) return b;
  boundary.push_back(p);
  b = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return b;
}

}  // namespace detail

/// Unique smallest closed ball containing the points (Welzl's recursion).
inline Ball min_enclosing_ball(const std::vector<Point>& points) {
  if (points.empty()) throw InvalidMetric("min_enclosing_ball of an empty set");
  std::vector<const Point*> pts;
  for (const auto& p : points) pts.push_back(&p);
  std::vector<const Point*> boundary;
  return detail::welzl(pts, pts.size(), boundary, points.front().size());
}

/// Cech complex at scale r: sigma is in iff the closed r-balls around its
/// points share a point, i.e. the min enclosing ball has radius <= r.
inline SimplicialComplex build_cech(const PointCloud& pc, double r, int max_dim = 2) {
  if (!(r > 0)) throw InvalidMetric("Cech radius must be positive");
  if (max_dim < 0) throw InvalidMetric("max_dim must be nonnegative");
  const DistanceMatrix d(pc);
  const double pair_limit = 4 * r * r;
  auto simplices = detail::enumerate_simplices(pc.size(), max_dim, [&](const std::vector<Vertex>& s, Vertex v) {
    if (!std::all_of(s.begin(), s.end(), [&](Vertex u) { return detail::within(d.squared(u, v), pair_limit); })) {
      return false;
    }
    std::vector<Point> pts;
    for (auto u : s) pts.push_back(pc[u]);
    pts.push_back(pc[v]);
    return detail::within(min_enclosing_ball(pts).radius, r);
  });
  return SimplicialComplex::from_closed(simplices);
}

struct OpenInterval {
  double lo;
  double hi;

  bool contains(double x) const { return lo < x && x < hi; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Open intervals sorted by left endpoint, where only consecutive intervals
/// may meet. That forces the nerve to be a disjoint union of paths.
class IntervalCover {
 public:
  IntervalCover() = default;
  explicit IntervalCover(std::vector<OpenInterval> intervals) : intervals_(std::move(intervals)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      const auto& u = intervals_[i];
      if (!(u.lo < u.hi)) throw NonlinearNerve("cover interval " + std::to_string(i) + " is empty");
      if (i > 0 && intervals_[i - 1].lo > u.lo) throw NonlinearNerve("cover intervals are not sorted by left endpoint");
      for (std::size_t j = 0; j + 1 < i; ++j) {
        if (meets(j, i)) {
          throw NonlinearNerve("cover intervals " + std::to_string(j) + " and " + std::to_string(i) +
                               " overlap but are not consecutive");
        }
      }
    }
  }

  std::size_t size() const { return intervals_.size(); }
  const OpenInterval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<OpenInterval>& intervals() const { return intervals_; }

  bool meets(std::size_t i, std::size_t j) const {
    return std::max(intervals_[i].lo, intervals_[j].lo) < std::min(intervals_[i].hi, intervals_[j].hi);
  }

  /// Intersection of consecutive members i and i+1 (assumes they meet).
  OpenInterval overlap(std::size_t i) const {
    return {std::max(intervals_[i].lo, intervals_[i + 1].lo), std::min(intervals_[i].hi, intervals_[i + 1].hi)};
  }

 private:
  std::vector<OpenInterval> intervals_;
};

/// One vertex per interval, an edge {i, i+1} per overlapping consecutive pair.
inline SimplicialComplex nerve_of_interval_cover(const IntervalCover& cover) {
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    simplices.push_back({static_cast<Vertex>(i)});
    if (i + 1 < cover.size() && cover.meets(i, i + 1)) {
      simplices.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    }
  }
  return SimplicialComplex::from_closed(simplices);
}

/// Discrete eccentricity: ((1/|X|) sum_y d(x,y)^p)^(1/p) for every x.
inline std::vector<double> eccentricity_values(const PointCloud& pc, double p) {
  if (pc.size() == 0) throw InvalidMetric("eccentricity of an empty point cloud");
  if (!(p >= 1)) throw InvalidMetric("eccentricity exponent must be >= 1");
  std::vector<double> out(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < pc.size(); ++j) s += std::pow(std::sqrt(squared_distance(pc[i], pc[j])), p);
    out[i] = std::pow(s / static_cast<double>(pc.size()), 1.0 / p);
  }
  return out;
}

}  // namespace tda

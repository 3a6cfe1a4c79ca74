#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace rgs {

// Concave piecewise-linear function on the simplex. A plane c represents the
// affine map q -> c.q (constants are folded in because sum q = 1).
class ConcavePL {
 public:
  virtual ~ConcavePL() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(const double* q) const = 0;
  // Writes a plane c with c.q = value(q) and c.x >= value(x) on the simplex.
  virtual void support(const double* q, double* plane) const = 0;
};

// f(q) = min_h planes[h].q
class PlaneSet final : public ConcavePL {
 public:
  explicit PlaneSet(std::size_t dim);
  static PlaneSet constant(std::size_t dim, double c);

  void add(const double* plane);
  std::size_t size() const { return count_; }
  std::vector<double> plane(std::size_t h) const;

  std::size_t dim() const override { return dim_; }
  double value(const double* q) const override;
  void support(const double* q, double* plane) const override;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  std::size_t cap_ = 0;
  std::vector<double> soa_;  // soa_[k * cap_ + h]
};

// Upper concave envelope of finitely many (point, value) pairs. The points must
// include every vertex of the simplex.
class PointHull final : public ConcavePL {
 public:
  // points row-major, count x dim
  PointHull(std::size_t dim, std::vector<double> points, std::vector<double> values);

  std::size_t dim() const override { return dim_; }
  double value(const double* q) const override;
  void support(const double* q, double* plane) const override;

 private:
  std::size_t dim_;
  std::vector<double> points_, values_;
  // dim == 2: upper hull in t = q[0], sorted by t
  std::vector<double> ht_, hv_;
  double evaluate(const double* q, double* plane) const;
};

}  // namespace rgs

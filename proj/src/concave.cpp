#include "rgs/concave.hpp"

#include <algorithm>
#include <cmath>

#include "rgs/error.hpp"
#include "rgs/kernels.hpp"
#include "rgs/lp.hpp"

namespace rgs {

PlaneSet::PlaneSet(std::size_t dim) : dim_(dim) {}

PlaneSet PlaneSet::constant(std::size_t dim, double c) {
  PlaneSet s(dim);
  std::vector<double> p(dim, c);
  s.add(p.data());
  return s;
}

void PlaneSet::add(const double* plane) {
  if (count_ == cap_) {
    const std::size_t cap = std::max<std::size_t>(8, cap_ * 2);
    std::vector<double> soa(dim_ * cap, 0.0);
    for (std::size_t k = 0; k < dim_; ++k)
      std::copy(soa_.begin() + static_cast<long>(k * cap_), soa_.begin() + static_cast<long>(k * cap_ + count_),
                soa.begin() + static_cast<long>(k * cap));
    soa_ = std::move(soa);
    cap_ = cap;
  }
  for (std::size_t k = 0; k < dim_; ++k) soa_[k * cap_ + count_] = plane[k];
  ++count_;
}

std::vector<double> PlaneSet::plane(std::size_t h) const {
  std::vector<double> c(dim_);
  for (std::size_t k = 0; k < dim_; ++k) c[k] = soa_[k * cap_ + h];
  return c;
}

double PlaneSet::value(const double* q) const {
  if (count_ == 0) fail_precondition("PlaneSet: no planes");
  return kernels::plane_min(soa_.data(), cap_, count_, dim_, q, nullptr);
}

void PlaneSet::support(const double* q, double* plane) const {
  if (count_ == 0) fail_precondition("PlaneSet: no planes");
  std::size_t h = 0;
  kernels::plane_min(soa_.data(), cap_, count_, dim_, q, &h);
  for (std::size_t k = 0; k < dim_; ++k) plane[k] = soa_[k * cap_ + h];
}

PointHull::PointHull(std::size_t dim, std::vector<double> points, std::vector<double> values)
    : dim_(dim), points_(std::move(points)), values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (dim_ == 0 || points_.size() != n * dim_ || n == 0) fail_precondition("PointHull: bad dimensions");
  for (std::size_t k = 0; k < dim_; ++k) {
    bool found = false;
    for (std::size_t g = 0; g < n && !found; ++g) found = points_[g * dim_ + k] >= 1.0 - 1e-12;
    if (!found) fail_precondition("PointHull: points must include the simplex vertices");
  }
  if (dim_ == 2) {
    std::vector<std::size_t> order(n);
    for (std::size_t g = 0; g < n; ++g) order[g] = g;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ta = points_[a * 2], tb = points_[b * 2];
      return ta < tb || (ta == tb && values_[a] > values_[b]);
    });
    for (std::size_t idx : order) {
      const double t = points_[idx * 2], v = values_[idx];
      if (!ht_.empty() && t <= ht_.back()) continue;  // same t, lower value
      while (ht_.size() >= 2) {
        const std::size_t s = ht_.size();
        const double cross = (ht_[s - 1] - ht_[s - 2]) * (v - hv_[s - 2]) - (hv_[s - 1] - hv_[s - 2]) * (t - ht_[s - 2]);
        if (cross >= 0.0) {  // middle point on or below the chord
          ht_.pop_back();
          hv_.pop_back();
        } else {
          break;
        }
      }
      ht_.push_back(t);
      hv_.push_back(v);
    }
  }
}

double PointHull::evaluate(const double* q, double* plane) const {
  if (dim_ == 1) {
    const double v = *std::max_element(values_.begin(), values_.end());
    if (plane) plane[0] = v;
    return v;
  }
  if (dim_ == 2) {
    const double t = std::clamp(q[0], 0.0, 1.0);
    if (ht_.size() == 1) {
      if (plane) plane[0] = plane[1] = hv_[0];
      return hv_[0];
    }
    std::size_t s = static_cast<std::size_t>(std::upper_bound(ht_.begin(), ht_.end(), t) - ht_.begin());
    s = std::clamp<std::size_t>(s, 1, ht_.size() - 1);
    const double t1 = ht_[s - 1], t2 = ht_[s], v1 = hv_[s - 1], v2 = hv_[s];
    const double slope = (v2 - v1) / (t2 - t1);
    const double c1 = v1 - slope * t1;
    if (plane) {
      plane[0] = c1 + slope;
      plane[1] = c1;
    }
    return c1 + slope * t;
  }
  // max sum mu_g v_g  s.t.  sum mu_g g = q,  mu >= 0; its dual is the support plane.
  const std::size_t n = values_.size();
  lp::Problem prob(n, lp::Sense::Maximize);
  for (std::size_t g = 0; g < n; ++g) prob.set_objective(g, values_[g]);
  std::vector<double> row(n);
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t g = 0; g < n; ++g) row[g] = points_[g * dim_ + k];
    prob.add_row(row, lp::RowType::Equal, std::max(0.0, q[k]));
  }
  const lp::Solution s = lp::solve(prob);
  if (!s.optimal()) throw NumericalError("PointHull: envelope LP failed");
  if (plane)
    for (std::size_t k = 0; k < dim_; ++k) plane[k] = s.dual[k];
  return s.objective;
}

double PointHull::value(const double* q) const { return evaluate(q, nullptr); }

void PointHull::support(const double* q, double* plane) const { evaluate(q, plane); }

}  // namespace rgs

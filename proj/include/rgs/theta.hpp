#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rgs {

// Finitely supported probability on stages 1, 2, ...; weight(t) for t >= 1.
class ThetaWeights {
 public:
  ThetaWeights() = default;
  // weights[t-1] = theta_t; trailing zeros are dropped, sum must be 1 within 1e-9.
  explicit ThetaWeights(std::vector<double> weights);

  static ThetaWeights dirac(std::size_t t);
  static ThetaWeights uniform(std::size_t n);             // uniform on {1..n}
  static ThetaWeights uniform_window(std::size_t m, std::size_t n);  // uniform on {m+1..m+n}
  // "t1:w1,t2:w2,..." (weights renormalized when within 1e-9)
  static ThetaWeights parse(const std::string& text);

  double weight(std::size_t t) const { return t >= 1 && t <= w_.size() ? w_[t - 1] : 0.0; }
  std::size_t max_stage() const { return w_.size(); }
  std::size_t support_size() const;
  const std::vector<double>& weights() const { return w_; }

  // Quantized weights; equal keys mean equal measures up to 1e-12.
  std::vector<std::int64_t> key() const;
  std::string to_string() const;

 private:
  std::vector<double> w_;
};

// Law of t* - 1 given t* >= 2; theta itself when theta_1 = 1.
ThetaWeights theta_plus(const ThetaWeights& theta);

// theta^{m,n}_s = sum_{t = s-m}^{n} theta_t / t for m < s <= m+n.
ThetaWeights theta_lift(const ThetaWeights& theta, std::size_t m);

}  // namespace rgs

#include "rgs/theta.hpp"

#include <cmath>
#include <sstream>

#include "rgs/error.hpp"

namespace rgs {

ThetaWeights::ThetaWeights(std::vector<double> weights) : w_(std::move(weights)) {
  while (!w_.empty() && w_.back() == 0.0) w_.pop_back();
  if (w_.empty()) fail_precondition("ThetaWeights: empty support");
  double s = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x)) fail_precondition("ThetaWeights: negative or non-finite weight");
    s += x;
  }
  if (std::fabs(s - 1.0) > 1e-9) fail_precondition("ThetaWeights: weights do not sum to one");
  for (double& x : w_) x /= s;
}

ThetaWeights ThetaWeights::dirac(std::size_t t) {
  if (t == 0) fail_precondition("ThetaWeights: stages start at 1");
  std::vector<double> w(t, 0.0);
  w[t - 1] = 1.0;
  return ThetaWeights(std::move(w));
}

ThetaWeights ThetaWeights::uniform(std::size_t n) { return uniform_window(0, n); }

ThetaWeights ThetaWeights::uniform_window(std::size_t m, std::size_t n) {
  if (n == 0) fail_precondition("ThetaWeights: empty window");
  std::vector<double> w(m + n, 0.0);
  for (std::size_t t = m; t < m + n; ++t) w[t] = 1.0 / static_cast<double>(n);
  return ThetaWeights(std::move(w));
}

ThetaWeights ThetaWeights::parse(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ValidationError("theta: expected t:w pairs, got '" + item + "'");
    std::size_t t = 0;
    double x = 0.0;
    try {
      t = std::stoul(item.substr(0, colon));
      x = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("theta: cannot parse '" + item + "'");
    }
    if (t == 0) throw ValidationError("theta: stages start at 1");
    if (w.size() < t) w.resize(t, 0.0);
    w[t - 1] += x;
  }
  try {
    return ThetaWeights(std::move(w));
  } catch (const PreconditionError& e) {
    throw ValidationError(std::string("theta: ") + e.what());
  }
}

std::size_t ThetaWeights::support_size() const {
  std::size_t n = 0;
  for (double x : w_) n += x > 0.0;
  return n;
}

std::vector<std::int64_t> ThetaWeights::key() const {
  std::vector<std::int64_t> k;
  for (double x : w_) k.push_back(std::llround(x * 1e12));
  while (!k.empty() && k.back() == 0) k.pop_back();
  return k;
}

std::string ThetaWeights::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (std::size_t t = 0; t < w_.size(); ++t) {
    if (w_[t] == 0.0) continue;
    if (!first) os << ',';
    os << t + 1 << ':' << w_[t];
    first = false;
  }
  return os.str();
}

ThetaWeights theta_plus(const ThetaWeights& theta) {
  const double t1 = theta.weight(1);
  if (t1 >= 1.0 - 1e-15) return theta;
  const auto& w = theta.weights();
  std::vector<double> out(w.begin() + 1, w.end());
  for (double& x : out) x /= (1.0 - t1);
  return ThetaWeights(std::move(out));
}

ThetaWeights theta_lift(const ThetaWeights& theta, std::size_t m) {
  const std::size_t n = theta.max_stage();
  std::vector<double> out(m + n, 0.0);
  for (std::size_t s = m + 1; s <= m + n; ++s) {
    double acc = 0.0;
    for (std::size_t t = s - m; t <= n; ++t) acc += theta.weight(t) / static_cast<double>(t);
    out[s - 1] = acc;
  }
  return ThetaWeights(std::move(out));
}

}  // namespace rgs

#pragma once

#include <cstddef>
#include <functional>

namespace rgs {

// Worker count from RGS_JOBS, else hardware concurrency.
std::size_t default_jobs();

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first exception.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rgs

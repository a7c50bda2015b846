#pragma once

#include <mutex>

namespace sparsespec::detail {

// FFTW plan creation/destruction is not thread-safe; every translation unit
// that plans must hold this lock. Executing distinct plans needs no lock.
std::mutex& fftw_plan_mutex();

}  // namespace sparsespec::detail

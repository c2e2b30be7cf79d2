// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace clbound {

/// CLBOUND_THREADS if set and positive, otherwise hardware concurrency.
int default_thread_count();

/// Splits [0, n) into contiguous chunks run on up to `threads` workers.
/// The first exception thrown by any chunk is rethrown after all joined.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& chunk);

}  // namespace clbound

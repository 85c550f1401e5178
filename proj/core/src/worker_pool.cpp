// Copyright 2026 The docclust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docclust/minimr/worker_pool.hpp"

namespace docclust::minimr {

WorkerPool::WorkerPool(std::size_t workers) : workers_(workers == 0 ? 1 : workers) {
  threads_.reserve(workers_ - 1);
  for (std::size_t i = 1; i < workers_; ++i) {
    threads_.emplace_back([this] { workerLoop(); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::drain() {
  std::unique_lock lock(mutex_);
  while (next_ < count_) {
    const std::size_t index = next_++;
    const auto* task = task_;
    ++active_;
    lock.unlock();
    try {
      (*task)(index);
    } catch (...) {
      lock.lock();
      errors_[index] = std::current_exception();
      --active_;
      continue;
    }
    lock.lock();
    --active_;
  }
  if (active_ == 0) done_.notify_all();
}

void WorkerPool::workerLoop() {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
    }
    drain();
  }
}

void WorkerPool::parallelFor(std::size_t count, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  if (threads_.empty() || count == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    task_ = &task;
    count_ = count;
    next_ = 0;
    active_ = 0;
    errors_.assign(count, nullptr);
    ++generation_;
  }
  wake_.notify_all();
  drain();
  std::vector<std::exception_ptr> errors;
  {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return next_ >= count_ && active_ == 0; });
    task_ = nullptr;
    count_ = 0;
    errors.swap(errors_);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace docclust::minimr

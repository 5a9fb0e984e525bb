#pragma once

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

#include "flda/nomad/token.hpp"

namespace flda::nomad {

/// Unbounded FIFO channel of tokens. Push transfers ownership to the queue,
/// pop to the receiver; this is the only way state crosses workers, which is
/// what makes the data itself lock-free. An in-process stand-in for whatever
/// transport a distributed deployment would use.
class TokenQueue {
 public:
  void push(Token token) {
    {
      std::lock_guard lock(m_);
      q_.push_back(std::move(token));
    }
    cv_.notify_one();
  }

  /// Non-blocking pop.
  std::optional<Token> try_pop() {
    std::lock_guard lock(m_);
    if (q_.empty()) return std::nullopt;
    Token t = std::move(q_.front());
    q_.pop_front();
    return t;
  }

  /// Blocks until a token arrives or `stop` is raised (see kick()).
  std::optional<Token> pop_wait(const std::atomic<bool>& stop) {
    std::unique_lock lock(m_);
    cv_.wait(lock, [&] { return !q_.empty() || stop.load(); });
    if (q_.empty()) return std::nullopt;
    Token t = std::move(q_.front());
    q_.pop_front();
    return t;
  }

  /// Wake blocked poppers so they can observe a raised stop flag. Taking the
  /// mutex (even empty) serializes with a popper's predicate check, so the
  /// wakeup cannot fall into the window before it blocks.
  void kick() {
    { std::lock_guard lock(m_); }
    cv_.notify_all();
  }

  /// Block until at least n tokens are queued (used by the controller to
  /// detect that every word token has retired).
  void wait_size(std::size_t n) {
    std::unique_lock lock(m_);
    cv_.wait(lock, [&] { return q_.size() >= n; });
  }

  bool empty() const {
    std::lock_guard lock(m_);
    return q_.empty();
  }

  std::size_t size() const {
    std::lock_guard lock(m_);
    return q_.size();
  }

 private:
  mutable std::mutex m_;
  std::condition_variable cv_;
  std::deque<Token> q_;
};

}  // namespace flda::nomad

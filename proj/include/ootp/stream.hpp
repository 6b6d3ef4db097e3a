// Memoized lazy sequences used for tactic outcomes.

#ifndef OOTP_STREAM_HPP_
#define OOTP_STREAM_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace ootp {

template <class T>
class Stream {
 public:
  using Pull = std::function<std::optional<T>()>;

  Stream() : state_(std::make_shared<State>()) { state_->done = true; }

  static Stream empty() { return Stream(); }
  static Stream of(T value) { return from({std::move(value)}); }
  static Stream from(std::vector<T> values) {
    Stream s;
    s.state_->buffer = std::move(values);
    return s;
  }
  static Stream generate(Pull pull) {
    Stream s;
    s.state_->pull = std::move(pull);
    s.state_->done = false;
    return s;
  }
  // Defers building the stream until its first element is requested.
  static Stream defer(std::function<Stream()> make) {
    auto inner = std::make_shared<std::optional<Stream>>();
    auto pos = std::make_shared<std::size_t>(0);
    return generate([make = std::move(make), inner, pos]() -> std::optional<T> {
      if (!*inner) *inner = make();
      return (*inner)->at((*pos)++);
    });
  }

  // Element i, computing elements up to i on demand.
  std::optional<T> at(std::size_t i) const {
    State& s = *state_;
    while (s.buffer.size() <= i && !s.done) {
      std::optional<T> v = s.pull();
      if (!v) {
        s.done = true;
        s.pull = nullptr;
      } else {
        s.buffer.push_back(std::move(*v));
      }
    }
    if (i < s.buffer.size()) return s.buffer[i];
    return std::nullopt;
  }

  bool has_any() const { return at(0).has_value(); }

  std::vector<T> take(std::size_t n) const {
    std::vector<T> out;
    for (std::size_t i = 0; i < n; ++i) {
      auto v = at(i);
      if (!v) break;
      out.push_back(std::move(*v));
    }
    return out;
  }

  template <class F>
  auto map(F f) const -> Stream<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    auto pos = std::make_shared<std::size_t>(0);
    Stream self = *this;
    return Stream<U>::generate([self, f, pos]() -> std::optional<U> {
      auto v = self.at((*pos)++);
      if (!v) return std::nullopt;
      return f(*v);
    });
  }

  // Concatenation of f(x) over the elements x, in order.
  template <class F>
  auto flat_map(F f) const -> std::invoke_result_t<F, const T&> {
    using Out = std::invoke_result_t<F, const T&>;
    using U = std::decay_t<decltype(*std::declval<Out>().at(0))>;
    struct Cursor {
      std::size_t outer = 0;
      std::optional<Out> inner;
      std::size_t inner_pos = 0;
    };
    auto cur = std::make_shared<Cursor>();
    Stream self = *this;
    return Out::generate([self, f, cur]() -> std::optional<U> {
      for (;;) {
        if (cur->inner) {
          if (auto v = cur->inner->at(cur->inner_pos)) {
            ++cur->inner_pos;
            return v;
          }
          cur->inner.reset();
        }
        auto x = self.at(cur->outer++);
        if (!x) return std::nullopt;
        cur->inner = f(*x);
        cur->inner_pos = 0;
      }
    });
  }

  // This stream followed by the stream produced by `rest`, built only when reached.
  Stream concat(std::function<Stream()> rest) const {
    struct Cursor {
      std::size_t pos = 0;
      bool second = false;
      std::optional<Stream> tail;
      std::size_t tail_pos = 0;
    };
    auto cur = std::make_shared<Cursor>();
    Stream self = *this;
    return generate([self, rest = std::move(rest), cur]() -> std::optional<T> {
      if (!cur->second) {
        if (auto v = self.at(cur->pos)) {
          ++cur->pos;
          return v;
        }
        cur->second = true;
        cur->tail = rest();
      }
      return cur->tail->at(cur->tail_pos++);
    });
  }

 private:
  struct State {
    Pull pull;
    std::vector<T> buffer;
    bool done = false;
  };
  std::shared_ptr<State> state_;
};

}  // namespace ootp

#endif  // OOTP_STREAM_HPP_

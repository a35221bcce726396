#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lakefed/value.hpp"

namespace lakefed {

/// Pull-based tuple sequence. Single consumer; after the first disengaged
/// result every further next() returns end-of-stream as well, never blocks.
class TupleStream {
 public:
  virtual ~TupleStream() = default;
  virtual std::optional<Binding> next() = 0;
};

using TupleStreamPtr = std::unique_ptr<TupleStream>;

/// Stream over a materialized vector of bindings.
class VectorStream final : public TupleStream {
 public:
  explicit VectorStream(std::vector<Binding> rows) : rows_(std::move(rows)) {}

  std::optional<Binding> next() override {
    if (at_ >= rows_.size()) return std::nullopt;
    return rows_[at_++];
  }

 private:
  std::vector<Binding> rows_;
  size_t at_ = 0;
};

/// Drains a stream into a vector.
std::vector<Binding> collect(TupleStream& s);

}  // namespace lakefed

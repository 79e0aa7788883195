#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace turingflow {

using Position = std::int64_t;

// Bi-infinite sequence over a finite alphabet with finite support. Symbol 0 is
// the blank; every position outside the stored range reads as blank. Storage
// is trimmed on both ends, so two tapes compare equal iff they agree at every
// integer position.
//
// Shifting re-anchors the stored range instead of moving cells, which keeps a
// machine step O(1) amortized.
template <typename Symbol>
class FiniteTape {
 public:
  static constexpr Symbol kBlank = Symbol{};

  FiniteTape() = default;

  // Cells are laid out starting at position `first`.
  FiniteTape(Position first, std::vector<Symbol> cells)
      : first_(first), cells_(std::move(cells)) {
    trim();
  }

  Symbol at(Position n) const {
    if (n < first_ || n >= first_ + static_cast<Position>(cells_.size())) {
      return kBlank;
    }
    return cells_[static_cast<std::size_t>(n - first_)];
  }

  void set(Position n, Symbol s) {
    if (cells_.empty()) {
      if (s == kBlank) return;
      first_ = n;
      cells_.push_back(s);
      return;
    }
    const Position last = first_ + static_cast<Position>(cells_.size()) - 1;
    if (n < first_) {
      if (s == kBlank) return;
      cells_.insert(cells_.begin(), static_cast<std::size_t>(first_ - n),
                    kBlank);
      first_ = n;
    } else if (n > last) {
      if (s == kBlank) return;
      cells_.resize(static_cast<std::size_t>(n - first_ + 1), kBlank);
    }
    cells_[static_cast<std::size_t>(n - first_)] = s;
    if (s == kBlank) trim();
  }

  // New tape u with u_n = t_{n + amount}.
  void shift(Position amount) { first_ -= amount; }

  bool empty() const { return cells_.empty(); }

  // Inclusive [lo, hi] of the non-blank cells, if any.
  std::optional<std::pair<Position, Position>> support() const {
    if (cells_.empty()) return std::nullopt;
    return std::pair{first_,
                     first_ + static_cast<Position>(cells_.size()) - 1};
  }

  Position first() const { return first_; }
  std::span<const Symbol> cells() const { return cells_; }

  friend bool operator==(const FiniteTape& a, const FiniteTape& b) {
    if (a.cells_.empty() || b.cells_.empty()) {
      return a.cells_.empty() && b.cells_.empty();
    }
    return a.first_ == b.first_ && a.cells_ == b.cells_;
  }

 private:
  void trim() {
    std::size_t lead = 0;
    while (lead < cells_.size() && cells_[lead] == kBlank) ++lead;
    if (lead == cells_.size()) {
      cells_.clear();
      first_ = 0;
      return;
    }
    std::size_t end = cells_.size();
    while (cells_[end - 1] == kBlank) --end;
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(end),
                 cells_.end());
    cells_.erase(cells_.begin(),
                 cells_.begin() + static_cast<std::ptrdiff_t>(lead));
    first_ += static_cast<Position>(lead);
  }

  Position first_ = 0;
  std::vector<Symbol> cells_;
};

}  // namespace turingflow

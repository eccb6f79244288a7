// Incremental closure of element subsets under *, \ and /.

#pragma once

#include <cstdint>
#include <vector>

#include "qf/qcore.hpp"

namespace qf::detail {

class SubsetClosure {
 public:
  explicit SubsetClosure(CayleyTable const& q) : q_(&q), mask_((q.order() + 63) / 64, 0) {}

  // Adds x and everything it generates together with the current members.
  void add(Element x) {
    if (contains(x)) return;
    std::size_t first_new = members_.size();
    insert(x);
    for (std::size_t i = first_new; i < members_.size(); ++i) {
      Element u = members_[i];
      // Pair u with every member already present, including u itself and
      // anything appended during this pass before index i.
      for (std::size_t j = 0; j <= i; ++j) {
        Element v = members_[j];
        insert(q_->mul(u, v));
        insert(q_->mul(v, u));
        insert(q_->ldiv(u, v));
        insert(q_->ldiv(v, u));
        insert(q_->rdiv(u, v));
        insert(q_->rdiv(v, u));
      }
    }
  }

  bool contains(Element x) const { return (mask_[x / 64] >> (x % 64)) & 1U; }
  std::size_t size() const noexcept { return members_.size(); }
  std::vector<Element> const& members() const noexcept { return members_; }
  std::vector<std::uint64_t> const& mask() const noexcept { return mask_; }

  std::vector<Element> sorted_members() const {
    std::vector<Element> out;
    out.reserve(members_.size());
    for (Element x = 0; x < q_->order(); ++x) {
      if (contains(x)) out.push_back(x);
    }
    return out;
  }

 private:
  void insert(Element x) {
    if (contains(x)) return;
    mask_[x / 64] |= std::uint64_t{1} << (x % 64);
    members_.push_back(x);
  }

  CayleyTable const* q_;
  std::vector<std::uint64_t> mask_;
  std::vector<Element> members_;
};

struct MaskHash {
  std::size_t operator()(std::vector<std::uint64_t> const& mask) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t w : mask) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace qf::detail

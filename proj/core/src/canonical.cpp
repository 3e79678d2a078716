#include <algorithm>
#include <numeric>

#include "detail/local_ball.hpp"

namespace lociso::detail {

namespace {

std::uint32_t count_distinct(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  return static_cast<std::uint32_t>(std::unique(v.begin(), v.end()) - v.begin());
}

template <class Buf>
bool span_less(const Buf& buf, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0, std::uint32_t b1) {
  return std::lexicographical_compare(buf.begin() + a0, buf.begin() + a1, buf.begin() + b0, buf.begin() + b1);
}

template <class Buf>
bool span_equal(const Buf& buf, std::uint32_t a0, std::uint32_t a1, std::uint32_t b0, std::uint32_t b1) {
  return std::equal(buf.begin() + a0, buf.begin() + a1, buf.begin() + b0, buf.begin() + b1);
}

}  // namespace

// Label-independent refinement: a cell splits by the sorted multiset of
// (symbol, position, cells of all arguments) over incident tuples. New cells
// are numbered by key order, so the result depends only on the isomorphism
// type of (ball, cells).
void CanonicalCoder::refine(const LocalBall& b, std::vector<std::uint32_t>& cells) {
  const std::uint32_t n = b.n;
  std::uint32_t count = count_distinct(cells);
  next_.resize(n);
  order_.resize(n);
  while (true) {
    keys_.clear();
    key_off_.assign(1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      rec_.clear();
      rec_off_.assign(1, 0);
      for (const Incidence& i : b.incidences(v)) {
        rec_.push_back(b.tsym[i.tuple]);
        rec_.push_back(i.position);
        for (std::uint32_t a : b.args(i.tuple)) rec_.push_back(cells[a]);
        rec_off_.push_back(static_cast<std::uint32_t>(rec_.size()));
      }
      const std::uint32_t r = static_cast<std::uint32_t>(rec_off_.size() - 1);
      rec_order_.resize(r);
      std::iota(rec_order_.begin(), rec_order_.end(), 0);
      std::sort(rec_order_.begin(), rec_order_.end(), [&](std::uint32_t x, std::uint32_t y) {
        return span_less(rec_, rec_off_[x], rec_off_[x + 1], rec_off_[y], rec_off_[y + 1]);
      });
      keys_.push_back(cells[v]);
      keys_.push_back(r);
      for (std::uint32_t k : rec_order_)
        keys_.insert(keys_.end(), rec_.begin() + rec_off_[k], rec_.begin() + rec_off_[k + 1]);
      key_off_.push_back(static_cast<std::uint32_t>(keys_.size()));
    }
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t x, std::uint32_t y) {
      return span_less(keys_, key_off_[x], key_off_[x + 1], key_off_[y], key_off_[y + 1]);
    });
    std::uint32_t rank = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i > 0) {
        std::uint32_t p = order_[i - 1], q = order_[i];
        if (!span_equal(keys_, key_off_[p], key_off_[p + 1], key_off_[q], key_off_[q + 1])) ++rank;
      }
      next_[order_[i]] = rank;
    }
    const std::uint32_t fresh = n == 0 ? 0 : rank + 1;
    cells.assign(next_.begin(), next_.end());
    if (fresh == count) return;
    count = fresh;
  }
}

void CanonicalCoder::leaf(const LocalBall& b, const std::vector<std::uint32_t>& labels) {
  const std::uint32_t t = b.tuple_count();
  leaf_rec_.clear();
  leaf_off_.assign(1, 0);
  for (std::uint32_t k = 0; k < t; ++k) {
    leaf_rec_.push_back(b.tsym[k]);
    for (std::uint32_t a : b.args(k)) leaf_rec_.push_back(labels[a]);
    leaf_off_.push_back(static_cast<std::uint32_t>(leaf_rec_.size()));
  }
  rec_order_.resize(t);
  std::iota(rec_order_.begin(), rec_order_.end(), 0);
  std::sort(rec_order_.begin(), rec_order_.end(), [&](std::uint32_t x, std::uint32_t y) {
    return span_less(leaf_rec_, leaf_off_[x], leaf_off_[x + 1], leaf_off_[y], leaf_off_[y + 1]);
  });
  leaf_buf_.clear();
  leaf_buf_.push_back(b.n);
  leaf_buf_.push_back(t);
  for (std::uint32_t k : rec_order_)
    leaf_buf_.insert(leaf_buf_.end(), leaf_rec_.begin() + leaf_off_[k], leaf_rec_.begin() + leaf_off_[k + 1]);
  if (!have_best_ || leaf_buf_ < best_) {
    best_.swap(leaf_buf_);
    have_best_ = true;
  }
}

void CanonicalCoder::search(const LocalBall& b, std::vector<std::uint32_t> cells) {
  refine(b, cells);
  const std::uint32_t n = b.n;
  std::vector<std::uint32_t> size(n, 0);
  for (std::uint32_t c : cells) ++size[c];
  std::uint32_t target = n;
  for (std::uint32_t c = 0; c < n; ++c)
    if (size[c] > 1) {
      target = c;
      break;
    }
  if (target == n) {
    leaf(b, cells);
    return;
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (cells[v] != target) continue;
    std::vector<std::uint32_t> child(n);
    for (std::uint32_t u = 0; u < n; ++u) child[u] = 2 * cells[u] + ((cells[u] == target && u != v) ? 1 : 0);
    search(b, std::move(child));
  }
}

void CanonicalCoder::code(const LocalBall& b, std::string& out) {
  have_best_ = false;
  best_.clear();
  search(b, std::vector<std::uint32_t>(b.dist.begin(), b.dist.end()));
  out.clear();
  for (std::uint32_t v : best_) append_varint(out, v);
}

}  // namespace lociso::detail

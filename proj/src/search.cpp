#include "arcres/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "arcres/errors.hpp"

namespace arcres {

std::size_t BitGraph::num_edges() const {
  std::size_t d = 0;
  for (std::uint32_t v = 0; v < n_; ++v) d += degree(v);
  return d / 2;
}

void write_dimacs(std::ostream& out, const BitGraph& g) {
  out << "p edge " << g.size() << ' ' << g.num_edges() << '\n';
  for (std::uint32_t a = 0; a < g.size(); ++a)
    bits::for_each(g.row(a), [&](std::size_t b) {
      if (b > a) out << "e " << a + 1 << ' ' << b + 1 << '\n';
    });
}

namespace {

/// Greedy sequential colouring of `cand`. Writes vertices in non-decreasing
/// colour order to `order` and their colours (1-based) to `color`; returns
/// the number of vertices written.
std::size_t color_sort(const BitGraph& g, std::span<const std::uint64_t> cand, std::span<std::uint64_t> uncolored,
                       std::span<std::uint64_t> avail, std::uint32_t* order, std::uint32_t* color) {
  const std::size_t w = cand.size();
  std::copy(cand.begin(), cand.end(), uncolored.begin());
  std::size_t written = 0;
  std::uint32_t c = 0;
  while (!bits::none(uncolored)) {
    ++c;
    std::copy(uncolored.begin(), uncolored.end(), avail.begin());
    for (std::size_t wi = 0; wi < w; ++wi) {
      while (avail[wi]) {
        const auto v = static_cast<std::uint32_t>(wi * bits::kWordBits + std::countr_zero(avail[wi]));
        avail[wi] &= avail[wi] - 1;
        uncolored[wi] &= ~(std::uint64_t{1} << (v % bits::kWordBits));
        auto nb = g.row(v);
        for (std::size_t j = wi; j < w; ++j) avail[j] &= ~nb[j];
        order[written] = v;
        color[written] = c;
        ++written;
      }
    }
  }
  return written;
}

/// Depth-first fixed-size clique search from one root branch. `Sink` gets
/// either each finished clique (collect) or a bulk count at the last level.
template <bool Collect>
class Worker {
 public:
  Worker(const BitGraph& g, std::uint32_t size)
      : g_(g),
        size_(size),
        w_(g.stride()),
        cand_((size + 1) * w_),
        scratch_(2 * w_),
        order_(std::size_t{size + 1} * g.size()),
        color_(std::size_t{size + 1} * g.size()) {
    clique_.reserve(size);
  }

  /// Cliques containing `root` whose other vertices lie in `cand`.
  void run_root(std::uint32_t root, std::span<const std::uint64_t> cand) {
    clique_.assign(1, root);
    std::copy(cand.begin(), cand.end(), level(1).begin());
    if (size_ == 1)
      emit_current();
    else
      expand(1);
  }

  std::vector<Clique>& found() { return found_; }
  std::uint64_t count() const { return count_; }

 private:
  std::span<std::uint64_t> level(std::uint32_t d) { return {cand_.data() + d * w_, w_}; }

  void emit_current() {
    for (std::size_t i = 0; i < clique_.size(); ++i)
      for (std::size_t j = i + 1; j < clique_.size(); ++j)
        if (!g_.adjacent(clique_[i], clique_[j])) throw std::logic_error("clique search emitted a non-clique");
    if constexpr (Collect) {
      Clique c = clique_;
      std::sort(c.begin(), c.end());
      found_.push_back(std::move(c));
    } else {
      ++count_;
    }
  }

  void expand(std::uint32_t depth) {
    auto cand = level(depth);
    const std::uint32_t need = size_ - depth;
    if (need == 1) {
      if constexpr (Collect) {
        bits::for_each(cand, [&](std::size_t v) {
          clique_.push_back(static_cast<std::uint32_t>(v));
          emit_current();
          clique_.pop_back();
        });
      } else {
        count_ += bits::count(cand);
      }
      return;
    }
    if (bits::count(cand) < need) return;

    std::uint32_t* order = order_.data() + std::size_t{depth} * g_.size();
    std::uint32_t* color = color_.data() + std::size_t{depth} * g_.size();
    const std::size_t m = color_sort(g_, cand, {scratch_.data(), w_}, {scratch_.data() + w_, w_}, order, color);

    auto next = level(depth + 1);
    for (std::size_t i = m; i-- > 0;) {
      if (color[i] < need) return;  // remaining vertices fit in fewer than `need` colours
      const std::uint32_t v = order[i];
      auto nb = g_.row(v);
      std::size_t pop = 0;
      for (std::size_t j = 0; j < w_; ++j) {
        next[j] = cand[j] & nb[j];
        pop += static_cast<std::size_t>(std::popcount(next[j]));
      }
      if (pop + 1 >= need) {
        clique_.push_back(v);
        expand(depth + 1);
        clique_.pop_back();
      }
      bits::reset(cand, v);
    }
  }

  const BitGraph& g_;
  std::uint32_t size_;
  std::size_t w_;
  std::vector<std::uint64_t> cand_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> color_;
  Clique clique_;
  std::vector<Clique> found_;
  std::uint64_t count_ = 0;
};

template <bool Collect>
void run_search(const BitGraph& g, std::uint32_t size, SearchOptions opt, std::vector<Clique>* out,
                std::uint64_t* total) {
  const std::uint32_t n = g.size();
  const std::size_t w = g.stride();

  // Root colouring decides the branch list; branch i may only use vertices
  // earlier in the order, so branches are independent tasks.
  std::vector<std::uint64_t> all(w, 0), s1(w), s2(w);
  for (std::uint32_t v = 0; v < n; ++v) bits::set(all, v);
  std::vector<std::uint32_t> order(n), color(n);
  const std::size_t m = color_sort(g, all, s1, s2, order.data(), color.data());

  std::vector<std::size_t> tasks;
  for (std::size_t i = m; i-- > 0;) {
    if (color[i] < size) break;
    tasks.push_back(i);
  }

  unsigned jobs = opt.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(tasks.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::mutex merge;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      Worker<Collect> worker(g, size);
      std::vector<std::uint64_t> cand(w);
      for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
        const std::size_t pos = tasks[t];
        const std::uint32_t v = order[pos];
        std::fill(cand.begin(), cand.end(), 0);
        for (std::size_t j = 0; j < pos; ++j) bits::set(cand, order[j]);
        auto nb = g.row(v);
        for (std::size_t j = 0; j < w; ++j) cand[j] &= nb[j];
        worker.run_root(v, cand);
      }
      std::lock_guard lock(merge);
      if constexpr (Collect) {
        auto& f = worker.found();
        out->insert(out->end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
      } else {
        *total += worker.count();
      }
    } catch (...) {
      std::lock_guard lock(merge);
      if (!failure) failure = std::current_exception();
      next.store(tasks.size());
    }
  };

  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  if constexpr (Collect) std::sort(out->begin(), out->end());
}

}  // namespace

std::vector<Clique> enumerate_cliques(const BitGraph& g, std::uint32_t size, SearchOptions opt) {
  if (size == 0) throw ParameterError("clique size must be at least 1");
  std::vector<Clique> out;
  if (size > g.size()) return out;
  run_search<true>(g, size, opt, &out, nullptr);
  return out;
}

std::uint64_t count_cliques(const BitGraph& g, std::uint32_t size, SearchOptions opt) {
  if (size == 0) throw ParameterError("clique size must be at least 1");
  if (size > g.size()) return 0;
  std::uint64_t total = 0;
  run_search<false>(g, size, opt, nullptr, &total);
  return total;
}

}  // namespace arcres

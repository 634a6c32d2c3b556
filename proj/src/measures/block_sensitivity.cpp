// Exact block sensitivity.
//
// At a fixed input x the sensitive blocks are {B : f(x ^ B) != f(x)}. Any packing of sensitive
// blocks can be shrunk block-by-block to a packing of minimal sensitive blocks of the same size,
// so the search only packs minimal blocks. Minimal blocks are found with word-parallel subset
// closures over the 2^n block masks; the packing itself is a branch-and-bound over the element
// with the fewest candidate blocks.

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>

#include "ilab/core/errors.hpp"
#include "ilab/kernels/kernels.hpp"
#include "ilab/measures/measures.hpp"

namespace ilab {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kVarMaskNeg[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};

void check_exact_capacity(const TruthTable& t) {
  if (t.n() > kMaxExactBsVars) {
    throw CapacityError("exact block sensitivity is limited to n <= " + std::to_string(kMaxExactBsVars) +
                        " (got n = " + std::to_string(t.n()) + ")");
  }
}

struct Deadline {
  std::optional<Clock::time_point> at;

  explicit Deadline(const std::optional<std::chrono::milliseconds>& budget) {
    if (budget) at = Clock::now() + *budget;
  }
  bool passed() const { return at && Clock::now() >= *at; }
};

/// Scratch buffers for the per-input minimal block computation.
class MinimalBlockFinder {
 public:
  explicit MinimalBlockFinder(const TruthTable& t)
      : t_(t), sensitive_(t.words().size()), closure_(t.words().size()), strict_(t.words().size()) {}

  const std::vector<std::uint32_t>& find(std::uint32_t x) {
    build_sensitive(x);
    close_upward();
    blocks_.clear();
    for (std::size_t j = 0; j < sensitive_.size(); ++j) {
      std::uint64_t w = sensitive_[j] & ~strict_[j];
      while (w != 0) {
        const int b = std::countr_zero(w);
        blocks_.push_back(static_cast<std::uint32_t>(j * 64 + b));
        w &= w - 1;
      }
    }
    std::sort(blocks_.begin(), blocks_.end(), [](std::uint32_t a, std::uint32_t b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    return blocks_;
  }

 private:
  // sensitive_[B] = f(x ^ B) ^ f(x)
  void build_sensitive(std::uint32_t x) {
    const auto words = t_.words();
    std::copy(words.begin(), words.end(), sensitive_.begin());
    for (int i = 0; i < t_.n(); ++i) {
      if (((x >> i) & 1u) == 0) continue;
      if (i < 6) {
        const unsigned sh = 1u << i;
        for (auto& w : sensitive_) w = ((w & kVarMaskNeg[i]) << sh) | ((w >> sh) & kVarMaskNeg[i]);
      } else {
        const std::size_t stride = std::size_t{1} << (i - 6);
        for (std::size_t j = 0; j < sensitive_.size(); ++j) {
          if ((j & stride) == 0) std::swap(sensitive_[j], sensitive_[j | stride]);
        }
      }
    }
    if (t_[x]) {
      for (auto& w : sensitive_) w = ~w;
      sensitive_.back() &= valid_mask(t_.n());
    }
  }

  // closure_[B] = some subset of B is sensitive; strict_[B] = some proper subset is.
  void close_upward() {
    closure_ = sensitive_;
    for (int i = 0; i < t_.n(); ++i) lift(closure_, closure_, i);
    std::fill(strict_.begin(), strict_.end(), 0);
    for (int i = 0; i < t_.n(); ++i) lift(closure_, strict_, i);
  }

  // dst[B] |= src[B \ {i}] for every B containing i
  void lift(const std::vector<std::uint64_t>& src, std::vector<std::uint64_t>& dst, int i) {
    if (i < 6) {
      const unsigned sh = 1u << i;
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] |= (src[j] & kVarMaskNeg[i]) << sh;
    } else {
      const std::size_t stride = std::size_t{1} << (i - 6);
      for (std::size_t j = 0; j < dst.size(); ++j) {
        if (j & stride) dst[j] |= src[j ^ stride];
      }
    }
  }

  const TruthTable& t_;
  std::vector<std::uint64_t> sensitive_;
  std::vector<std::uint64_t> closure_;
  std::vector<std::uint64_t> strict_;
  std::vector<std::uint32_t> blocks_;
};

/// Maximum disjoint packing of a block family; only packings larger than `floor` are recorded.
class Packer {
 public:
  Packer(int floor, const Deadline& deadline) : best_size_(floor), deadline_(deadline) {}

  void run(const std::vector<std::uint32_t>& blocks) {
    levels_.assign(1, blocks);
    search(0);
  }

  int best_size() const { return best_size_; }
  const std::vector<std::uint32_t>& best() const { return best_; }
  bool timed_out() const { return timed_out_; }

 private:
  void search(std::size_t depth) {
    if (timed_out_) return;
    if ((++nodes_ & 0xfff) == 0 && deadline_.passed()) {
      timed_out_ = true;
      return;
    }
    const int current = static_cast<int>(chosen_.size());
    if (current > best_size_) {
      best_size_ = current;
      best_ = chosen_;
    }
    const auto& cands = levels_[depth];
    if (cands.empty()) return;

    std::uint32_t covered = 0;
    for (auto b : cands) covered |= b;
    // cands stay sorted by size, so cands[0] is a smallest block.
    const int by_elements = std::popcount(covered) / std::popcount(cands[0]);
    const int bound = current + std::min(static_cast<int>(cands.size()), by_elements);
    if (bound <= best_size_) return;

    int pivot = -1, fewest = 1 << 30;
    for (std::uint32_t rest = covered; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      int occurrences = 0;
      for (auto b : cands) occurrences += (b >> v) & 1u;
      if (occurrences < fewest) {
        fewest = occurrences;
        pivot = v;
      }
    }
    const std::uint32_t pivot_bit = std::uint32_t{1} << pivot;

    if (levels_.size() <= depth + 1) levels_.resize(depth + 2);
    // Indexing (not references) because levels_ may grow during recursion.
    for (std::size_t c = 0; c < levels_[depth].size(); ++c) {
      const std::uint32_t block = levels_[depth][c];
      if ((block & pivot_bit) == 0) continue;
      auto& next = levels_[depth + 1];
      next.clear();
      for (auto b : levels_[depth]) {
        if ((b & block) == 0) next.push_back(b);
      }
      chosen_.push_back(block);
      search(depth + 1);
      chosen_.pop_back();
      if (timed_out_) return;
    }
    auto& next = levels_[depth + 1];
    next.clear();
    for (auto b : levels_[depth]) {
      if ((b & pivot_bit) == 0) next.push_back(b);
    }
    search(depth + 1);
  }

  int best_size_;
  std::vector<std::uint32_t> best_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::vector<std::uint32_t>> levels_;
  const Deadline& deadline_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

struct Candidate {
  int value = -1;
  std::uint32_t x = 0;
  std::vector<std::uint32_t> blocks;
};

/// Scan every input, recording any x whose BS exceeds the shared running best.
void scan_inputs(const TruthTable& t, Candidate& best, const Deadline& deadline, bool serial,
                 bool& timed_out) {
  std::atomic<int> shared_best{best.value};
  std::atomic<bool> stop{false};
  const auto total = static_cast<std::int64_t>(t.size());
  const int n = t.n();
#pragma omp parallel if (!serial)
  {
    MinimalBlockFinder finder(t);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t xi = 0; xi < total; ++xi) {
      if (stop.load(std::memory_order_relaxed)) continue;
      if (deadline.passed()) {
        stop = true;
        continue;
      }
      const auto x = static_cast<std::uint32_t>(xi);
      const int floor = shared_best.load(std::memory_order_relaxed);
      if (floor >= n) continue;
      Packer packer(floor, deadline);
      packer.run(finder.find(x));
      if (packer.timed_out()) stop = true;
      if (packer.best_size() > floor) {
#pragma omp critical(ilab_bs_best)
        {
          const int v = packer.best_size();
          if (v > best.value || (v == best.value && x < best.x)) {
            best.value = v;
            best.x = x;
            best.blocks = packer.best();
            if (v > shared_best.load()) shared_best = v;
          }
        }
      }
    }
  }
  timed_out = stop.load();
}

}  // namespace

std::vector<std::uint32_t> minimal_sensitive_blocks(const TruthTable& t, std::uint32_t x) {
  check_exact_capacity(t);
  t.at(x);
  MinimalBlockFinder finder(t);
  return finder.find(x);
}

BlockSensitivityResult block_sensitivity_at(const TruthTable& t, std::uint32_t x, const BsOptions& options) {
  check_exact_capacity(t);
  t.at(x);
  Deadline deadline(options.budget);
  MinimalBlockFinder finder(t);
  Packer packer(0, deadline);
  packer.run(finder.find(x));
  BlockSensitivityResult r;
  r.value = packer.best_size();
  r.exact = !packer.timed_out();
  r.witness_input = x;
  r.witness_blocks = packer.best();
  return r;
}

BlockSensitivityResult block_sensitivity(const TruthTable& t, const BsOptions& options) {
  check_exact_capacity(t);
  Deadline deadline(options.budget);

  // Sensitivity is a packing of singletons, so it seeds the search.
  Candidate best;
  best.x = kernels::omp::sensitivity_scan(t).argmax;
  for (int i = 0; i < t.n(); ++i) {
    const std::uint32_t e = std::uint32_t{1} << i;
    if (t[best.x] != t[best.x ^ e]) best.blocks.push_back(e);
  }
  best.value = static_cast<int>(best.blocks.size());

  bool timed_out = false;
  scan_inputs(t, best, deadline, options.serial, timed_out);

  // Report the smallest input attaining the maximum.
  if (!timed_out && best.value > 0) {
    MinimalBlockFinder finder(t);
    for (std::uint32_t x = 0; x < best.x; ++x) {
      Packer packer(best.value - 1, deadline);
      packer.run(finder.find(x));
      if (packer.timed_out()) {
        timed_out = true;
        break;
      }
      if (packer.best_size() >= best.value) {
        best.x = x;
        best.blocks = packer.best();
        break;
      }
    }
  }

  BlockSensitivityResult r;
  r.value = best.value;
  r.exact = !timed_out;
  r.witness_input = best.x;
  r.witness_blocks = std::move(best.blocks);
  return r;
}

}  // namespace ilab

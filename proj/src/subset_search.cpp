#include "gapratio/subset_search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <optional>
#include <thread>

#include "gapratio/error.hpp"
#include "gapratio/kernels.hpp"

namespace gapratio {
namespace {

// Result of the subsets whose first element is one fixed site.
struct Partial {
  bool any = false;
  std::vector<Index> best;
  double best_gr = 0.0;
  Ratio best_ratio{};
  std::vector<Index> min_cover_subset;
  double min_cover = std::numeric_limits<double>::infinity();
  std::vector<Index> max_pack_subset;
  double max_pack = -1.0;
  std::uint64_t examined = 0;
};

class Searcher {
 public:
  Searcher(const FiniteMetric& m, std::size_t k, bool exact)
      : m_(m), n_(m.size()), k_(k), exact_(exact), kern_(kernels::active()), chosen_(k) {
    if (exact_) {
      cover2x_.resize(k * n_);
    } else {
      cover_.resize(k * n_);
    }
    pair_.resize(k);
    pair2x_.resize(k);
  }

  Partial run(Index first) {
    part_ = Partial{};
    chosen_[0] = first;
    if (exact_) {
      std::copy_n(m_.exact_row(first).data(), n_, cover2x_.data());
      pair2x_[0] = std::numeric_limits<std::int64_t>::max();
    } else {
      std::copy_n(m_.row(first).data(), n_, cover_.data());
      pair_[0] = std::numeric_limits<double>::infinity();
    }
    descend(1);
    return std::move(part_);
  }

 private:
  void descend(std::size_t t) {
    if (t == k_) {
      leaf();
      return;
    }
    const Index lo = chosen_[t - 1] + 1;
    const Index hi = n_ - (k_ - t);  // inclusive
    for (Index c = lo; c <= hi; ++c) {
      chosen_[t] = c;
      if (exact_) {
        const auto row = m_.exact_row(c);
        const std::int64_t* prev = cover2x_.data() + (t - 1) * n_;
        std::int64_t* cur = cover2x_.data() + t * n_;
        for (Index j = 0; j < n_; ++j) cur[j] = std::min(prev[j], row[j]);
        std::int64_t p = pair2x_[t - 1];
        for (std::size_t s = 0; s < t; ++s) p = std::min(p, row[chosen_[s]]);
        pair2x_[t] = p;
      } else {
        const auto row = m_.row(c);
        kern_.min_of(cover_.data() + (t - 1) * n_, row.data(), cover_.data() + t * n_, n_);
        double p = pair_[t - 1];
        for (std::size_t s = 0; s < t; ++s) p = std::min(p, row[chosen_[s]]);
        pair_[t] = p;
      }
      descend(t + 1);
    }
  }

  void leaf() {
    ++part_.examined;
    const std::size_t last = k_ - 1;
    double cover;
    double pack;
    bool better;
    if (exact_) {
      const std::int64_t* acc = cover2x_.data() + last * n_;
      const std::int64_t c2 = *std::max_element(acc, acc + n_);
      const std::int64_t p2 = pair2x_[last];
      cover = static_cast<double>(c2) / 2.0;
      pack = static_cast<double>(p2) / 4.0;
      const Ratio gr{2 * c2, p2};
      better = !part_.any || gr < part_.best_ratio;
      if (better) part_.best_ratio = gr;
    } else {
      cover = kern_.max_loc(cover_.data() + last * n_, n_).value;
      pack = pair_[last] / 2.0;
      const double gr = cover / pack;
      better = !part_.any || gr < part_.best_gr;
      if (better) part_.best_gr = gr;
    }
    if (better) part_.best.assign(chosen_.begin(), chosen_.end());
    if (cover < part_.min_cover) {
      part_.min_cover = cover;
      part_.min_cover_subset.assign(chosen_.begin(), chosen_.end());
    }
    if (pack > part_.max_pack) {
      part_.max_pack = pack;
      part_.max_pack_subset.assign(chosen_.begin(), chosen_.end());
    }
    part_.any = true;
  }

  const FiniteMetric& m_;
  std::size_t n_;
  std::size_t k_;
  bool exact_;
  const kernels::KernelTable& kern_;
  std::vector<Index> chosen_;
  std::vector<double> cover_;
  std::vector<std::int64_t> cover2x_;
  std::vector<double> pair_;
  std::vector<std::int64_t> pair2x_;
  Partial part_;
};

}  // namespace

SubsetSearchResult exhaustive_subset_search(const FiniteMetric& m, std::size_t k,
                                            std::uint64_t default_guard,
                                            const SearchOptions& options) {
  const std::size_t n = m.size();
  if (k < 2 || k > n) {
    throw Error(Errc::invalid_argument, "subset size must satisfy 2 <= k <= n (k = " +
                                            std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  const std::uint64_t guard = options.guard != 0 ? options.guard : default_guard;
  const std::uint64_t total = binomial(n, k);
  if (!options.force && total > guard) {
    throw Error(Errc::guard_exceeded, "C(" + std::to_string(n) + ", " + std::to_string(k) +
                                          ") = " + std::to_string(total) +
                                          " subsets exceeds the enumeration guard " +
                                          std::to_string(guard));
  }
  bool exact = false;
  switch (options.mode) {
    case EvalMode::automatic: exact = m.has_exact(); break;
    case EvalMode::floating: exact = false; break;
    case EvalMode::exact:
      if (!m.has_exact()) {
        throw Error(Errc::invalid_argument, "exact evaluation requested but the metric has "
                                            "non-half-integer distances");
      }
      exact = true;
      break;
  }

  const std::size_t firsts = n - k + 1;
  std::vector<Partial> parts(firsts);
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, firsts));
  if (threads == 1) {
    Searcher s(m, k, exact);
    for (Index f = 0; f < firsts; ++f) parts[f] = s.run(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        Searcher s(m, k, exact);
        for (std::size_t f = next++; f < firsts; f = next++) parts[f] = s.run(f);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in first-index order; strict improvement keeps lexicographic ties.
  SubsetSearchResult out;
  std::optional<std::size_t> best;
  std::optional<std::size_t> cov;
  std::optional<std::size_t> pack;
  for (std::size_t f = 0; f < firsts; ++f) {
    const Partial& p = parts[f];
    out.examined += p.examined;
    if (!p.any) continue;
    if (!best) {
      best = f;
    } else if (exact ? p.best_ratio < parts[*best].best_ratio : p.best_gr < parts[*best].best_gr) {
      best = f;
    }
    if (!cov || p.min_cover < parts[*cov].min_cover) cov = f;
    if (!pack || p.max_pack > parts[*pack].max_pack) pack = f;
  }
  out.best = parts[*best].best;
  out.best_report = gap_ratio(m, out.best, exact ? EvalMode::exact : EvalMode::floating);
  out.min_cover = parts[*cov].min_cover;
  out.min_cover_subset = parts[*cov].min_cover_subset;
  out.max_pack = parts[*pack].max_pack;
  out.max_pack_subset = parts[*pack].max_pack_subset;
  return out;
}

}  // namespace gapratio

#include "wcq/check.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace wcq {

namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int n) { g_threads = n < 1 ? 1 : n; }
int threads() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

void add_report(HilbertTable& t, const HomologyReport& r) {
  for (const auto& e : r.entries)
    if (e.dim) t.entries.push_back({r.degree, e.hdeg, e.dim, e.certified});
}

std::vector<HomologyReport> algebra_homology(const Algebra& alg, const std::vector<Multidegree>& degrees, int hmin,
                                             int budget) {
  SliceFamily fam(alg, degrees, hmin - 1, 0, budget);
  CompletenessOracle oracle(alg);
  std::vector<HomologyReport> out(degrees.size());
  parallel_for(degrees.size(), [&](std::size_t i) {
    out[i] = homology_dims(algebra_slice_complex(fam, degrees[i], hmin, &oracle));
  });
  return out;
}

}  // namespace wcq

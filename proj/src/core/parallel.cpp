#include "gtoda/parallel.hpp"

#include <atomic>

namespace gtoda {

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int threads) { g_threads = threads < 0 ? 0 : threads; }
int default_threads() { return g_threads; }

}  // namespace gtoda

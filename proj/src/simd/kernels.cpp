// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <atomic>
#include <cstdlib>

#include "boltzkit/simd/kernels.hpp"

namespace boltzkit::simd {

#if !defined(__x86_64__) && !defined(_M_X64)
const Backend* avx2_backend() { return nullptr; }
#endif
#if !defined(__aarch64__)
const Backend* neon_backend() { return nullptr; }
#endif

namespace {

const Backend* detect() {
  if (const char* env = std::getenv("BOLTZKIT_SIMD")) {
    std::string_view want(env);
    if (want == "scalar") return &scalar_backend();
    if (want == "avx2" && avx2_backend()) return avx2_backend();
    if (want == "neon" && neon_backend()) return neon_backend();
  }
  if (const Backend* b = avx2_backend()) return b;
  if (const Backend* b = neon_backend()) return b;
  return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active_backend() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (!b) {
    b = detect();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

bool set_active_backend(std::string_view name) {
  const Backend* b = nullptr;
  if (name == "auto")
    b = detect();
  else if (name == "scalar")
    b = &scalar_backend();
  else if (name == "avx2")
    b = avx2_backend();
  else if (name == "neon")
    b = neon_backend();
  if (!b) return false;
  g_active.store(b, std::memory_order_release);
  return true;
}

std::vector<std::string> available_backends() {
  std::vector<std::string> out{"scalar"};
  if (avx2_backend()) out.emplace_back("avx2");
  if (neon_backend()) out.emplace_back("neon");
  return out;
}

}  // namespace boltzkit::simd

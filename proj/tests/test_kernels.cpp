// Equivalence tests: every SIMD kernel variant against the scalar reference.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "midtune/num/kernels.hpp"
#include "midtune/num/rng.hpp"

using namespace midtune::num;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return v;
}

// Bound allowing fma contraction and 4-lane reassociation.
double matmul_tol(std::size_t k) { return 1e-14 * static_cast<double>(k + 1) * 8.0; }

void check_matmul(const KernelTable& t, std::size_t m, std::size_t k, std::size_t n,
                  Rng& rng) {
  const KernelTable& ref = scalar_kernels();
  auto a = random_vec(rng, m * k);
  auto b = random_vec(rng, k * n);
  std::vector<double> c0(m * n), c1(m * n);
  ref.matmul(a.data(), b.data(), c0.data(), m, k, n);
  t.matmul(a.data(), b.data(), c1.data(), m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) {
    CAPTURE(i);
    CHECK(std::abs(c0[i] - c1[i]) <= matmul_tol(k));
  }
  // accumulate path
  auto base = random_vec(rng, m * n);
  auto c2 = base;
  auto c3 = base;
  ref.matmul_acc(a.data(), b.data(), c2.data(), m, k, n);
  t.matmul_acc(a.data(), b.data(), c3.data(), m, k, n);
  for (std::size_t i = 0; i < m * n; ++i) {
    CHECK(std::abs(c2[i] - c3[i]) <= matmul_tol(k));
  }
}

void check_elementwise(const KernelTable& t, std::size_t n, Rng& rng) {
  const KernelTable& ref = scalar_kernels();
  auto a = random_vec(rng, n);
  auto b = random_vec(rng, n);
  std::vector<double> o0(n), o1(n);

  ref.add(a.data(), b.data(), o0.data(), n);
  t.add(a.data(), b.data(), o1.data(), n);
  CHECK(o0 == o1);

  ref.sub(a.data(), b.data(), o0.data(), n);
  t.sub(a.data(), b.data(), o1.data(), n);
  CHECK(o0 == o1);

  ref.mul(a.data(), b.data(), o0.data(), n);
  t.mul(a.data(), b.data(), o1.data(), n);
  CHECK(o0 == o1);

  auto y0 = b;
  auto y1 = b;
  ref.axpy(0.37, a.data(), y0.data(), n);
  t.axpy(0.37, a.data(), y1.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(y0[i] - y1[i]) <= 1e-15 * 8.0);
  }

  auto s0 = a;
  auto s1 = a;
  ref.scale(-1.25, s0.data(), n);
  t.scale(-1.25, s1.data(), n);
  CHECK(s0 == s1);

  const double d0 = ref.dot(a.data(), b.data(), n);
  const double d1 = t.dot(a.data(), b.data(), n);
  CHECK(std::abs(d0 - d1) <= 1e-13 * static_cast<double>(n + 1));
}

}  // namespace

TEST_CASE("simd variants agree with the scalar reference") {
  Rng rng(20260809);
  for (SimdLevel level : supported_simd_levels()) {
    if (level == SimdLevel::kScalar) continue;
    set_simd_level(level);
    const KernelTable& t = active_kernels();
    INFO("level: ", t.name);
    // deliberately awkward sizes to cover vector tails
    const int sizes[][3] = {{1, 1, 1},   {3, 5, 7},    {16, 16, 16},
                            {13, 64, 21}, {64, 80, 64}, {2, 128, 130}};
    for (const auto& s : sizes) {
      check_matmul(t, static_cast<std::size_t>(s[0]), static_cast<std::size_t>(s[1]),
                   static_cast<std::size_t>(s[2]), rng);
    }
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 17u, 64u, 1000u}) {
      check_elementwise(t, n, rng);
    }
  }
  set_simd_level(SimdLevel::kScalar);
}

TEST_CASE("dispatch exposes a usable active table") {
  const KernelTable& t = active_kernels();
  CHECK(t.name != nullptr);
  std::vector<double> a{1.0, 2.0}, b{3.0, 4.0}, c(1);
  t.matmul(a.data(), b.data(), c.data(), 1, 2, 1);
  CHECK(c[0] == doctest::Approx(11.0));
  CHECK(supported_simd_levels().size() >= 1);
}

#include <doctest.h>

#include "helpers.hpp"
#include "masr/rnn/kernels.hpp"

using namespace masr;
using namespace masr::rnn;

TEST_SUITE("kernels") {
  TEST_CASE("serial, parallel and dense kernels agree") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto d = testutil::random_codes(120, 90, 0.3, seed);
      const auto w = CompactMatrix::encode(d);
      const auto av = testutil::random_dense_vector(120, 0.4, seed + 50);
      const auto a = sparse::encode_vector(av);
      std::vector<SplitAccumulator> s(90), p(90), r(90);
      matvec_serial(w, a, s);
      matvec_parallel(w, a, p);
      matvec_dense_reference(d, av, r);
      CHECK(s == r);
      CHECK(p == r);

      std::uint64_t macs = 0;
      for (std::size_t row = 0; row < 120; ++row) {
        for (std::size_t c = 0; c < 90; ++c) macs += d(row, c) != 0 && av[row] != 0;
      }
      CHECK(work_mask_macs(w, a) == macs);
    }
  }

  TEST_CASE("column-restricted kernel leaves inactive columns zero") {
    const auto d = testutil::random_codes(30, 10, 0.5, 3);
    const auto w = CompactMatrix::encode(d);
    const auto a = sparse::encode_vector(testutil::random_dense_vector(30, 0.5, 4));
    std::vector<char> active(10, 0);
    active[2] = active[7] = 1;
    std::vector<SplitAccumulator> full(10), part(10);
    matvec_serial(w, a, full);
    matvec_columns(w, a, active, part);
    for (std::size_t c = 0; c < 10; ++c) CHECK(part[c] == (active[c] ? full[c] : SplitAccumulator{}));
  }

  TEST_CASE("split accumulator buckets by sign") {
    SplitAccumulator acc;
    acc.add(3, 2);
    acc.add(-3, 2);
    acc.add(3, -2);
    acc.add(-1, -5);
    CHECK(acc == SplitAccumulator{6, 6, 6, 5});
    const QuantParams w{10, 2.0, 1.0}, x{10, 1.0, 4.0};
    // pp*sp*sp - pn*sp*sn - np*sn*sp + nn*sn*sn, over 511^2
    const double expect = (6 * 2.0 * 1.0 - 6 * 2.0 * 4.0 - 6 * 1.0 * 1.0 + 5 * 1.0 * 4.0) / (511.0 * 511.0);
    CHECK(to_real(acc, w, x) == doctest::Approx(expect).epsilon(1e-12));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "csrk/csrk_matrix.hpp"
#include "csrk/kernels.hpp"
#include "support.hpp"

using namespace csrk;
using namespace csrk::testing;

TEST_CASE("build_csr: identity triplets") {
  const Triplet t[] = {{0, 0, 1.0}, {1, 1, 1.0}};
  const auto a = build_csr(2, 2, t);
  CHECK(a.row_ptr() == std::vector<index_t>{0, 1, 2});
  CHECK(a.col_idx() == std::vector<index_t>{0, 1});
  CHECK(a.vals() == std::vector<value_t>{1.0, 1.0});
}

TEST_CASE("build_csr: duplicates are summed") {
  const Triplet t[] = {{0, 0, 1.0}, {0, 0, 2.0}};
  const auto a = build_csr(2, 2, t);
  CHECK(a.nnz() == 1);
  CHECK(a.vals() == std::vector<value_t>{3.0});
  CHECK(a.row_ptr() == std::vector<index_t>{0, 1, 1});
}

TEST_CASE("build_csr: explicit zeros stay structural") {
  const Triplet t[] = {{0, 1, 0.0}, {1, 0, 2.0}};
  const auto a = build_csr(2, 2, t);
  CHECK(a.nnz() == 2);
  REQUIRE(a.find(0, 1) != nullptr);
  CHECK(*a.find(0, 1) == 0.0);
}

TEST_CASE("build_csr: out-of-range triplet names its position") {
  const Triplet t[] = {{0, 0, 1.0}, {0, 1, 1.0}, {2, 0, 1.0}};
  try {
    build_csr(2, 2, t);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("triplet 2") != std::string::npos);
  }
}

TEST_CASE("build_csr: random 6x6 with 12 triplets matches a dense accumulator") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Triplet> t;
    double dense[6][6] = {};
    for (int i = 0; i < 12; ++i) {
      const index_t r = rng() % 6, c = rng() % 6;
      const double v = static_cast<double>(static_cast<int>(rng() % 17) - 8);
      t.push_back({r, c, v});
      dense[r][c] += v;
    }
    const auto a = build_csr(6, 6, t);
    // Every stored position must carry the dense sum; every touched position must be stored.
    std::vector<std::vector<char>> touched(6, std::vector<char>(6, 0));
    for (const auto &x : t)
      touched[x.row][x.col] = 1;
    for (index_t r = 0; r < 6; ++r)
      for (index_t c = 0; c < 6; ++c) {
        const value_t *p = a.find(r, c);
        CHECK((p != nullptr) == static_cast<bool>(touched[r][c]));
        if (p)
          CHECK(*p == dense[r][c]);
      }
    for (index_t r = 0; r < 6; ++r) {
      auto cols = a.row_cols(r);
      CHECK(std::is_sorted(cols.begin(), cols.end()));
      CHECK(std::adjacent_find(cols.begin(), cols.end()) == cols.end());
    }
  }
}

TEST_CASE("CsrMatrix constructor rejects broken invariants") {
  CHECK_THROWS_AS(CsrMatrix(2, 2, {1, 1, 2}, {0, 1}, {1, 1}), Error);      // row_ptr[0] != 0
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 1}, {0, 1}, {1, 1}), Error);      // decreasing
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 1, 2}, {0, 2}, {1, 1}), Error);      // column out of range
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 2}, {1, 0}, {1, 1}), Error);      // unsorted row
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 2}, {1, 1}, {1, 1}), Error);      // duplicate column
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 1, 2}, {0, 1}, {1}), Error);         // vals length
  CHECK_NOTHROW(CsrMatrix(2, 3, {0, 1, 3}, {2, 0, 1}, {1, 2, 3}));
}

TEST_CASE("permutation: factories validate bijection") {
  CHECK_THROWS_AS(Permutation::from_forward({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation::from_forward({0, 3, 1}), Error);
  CHECK_THROWS_AS(Permutation::from_inverse({1, 1}), Error);
  const auto p = Permutation::from_forward({2, 0, 1});
  CHECK(p.inverse() == std::vector<index_t>{1, 2, 0});
  CHECK(Permutation::from_inverse(p.inverse()) == p);
  CHECK(p.then(p.inverted()).is_identity());
}

TEST_CASE("permutation: composition follows then()") {
  std::mt19937_64 rng(11);
  const auto p = random_permutation(20, rng);
  const auto q = random_permutation(20, rng);
  const auto pq = p.then(q);
  for (index_t i = 0; i < 20; ++i)
    CHECK(pq.new_index(i) == q.new_index(p.new_index(i)));
}

TEST_CASE("permute_vector / unpermute_vector") {
  const std::vector<value_t> x{1.0, 2.0};
  SUBCASE("identity leaves x unchanged") {
    const auto id = Permutation::identity(2);
    CHECK(permute_vector(id, x) == x);
    CHECK(unpermute_vector(id, x) == x);
  }
  SUBCASE("swap reverses a length-2 vector") {
    const auto swap = Permutation::from_forward({1, 0});
    CHECK(permute_vector(swap, x) == std::vector<value_t>{2.0, 1.0});
  }
  SUBCASE("random round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = random_permutation(50, rng);
      const auto v = random_vector(50, rng);
      CHECK(unpermute_vector(p, permute_vector(p, v)) == v);
      const auto w = permute_vector(p, v);
      for (index_t i = 0; i < 50; ++i)
        CHECK(w[p.new_index(i)] == v[i]);
    }
  }
  SUBCASE("length mismatch") {
    const auto p = Permutation::identity(3);
    CHECK_THROWS_AS(permute_vector(p, x), DimensionError);
    CHECK_THROWS_AS(unpermute_vector(p, x), DimensionError);
  }
}

TEST_CASE("symmetric_permute moves (i,j) to (p(i),p(j))") {
  std::mt19937_64 rng(5);
  const auto a = random_matrix(30, 0.1, Shape::General, rng);
  const auto p = random_permutation(30, rng);
  const auto b = symmetric_permute(a, p);
  const auto da = to_dense(a), db = to_dense(b);
  for (index_t i = 0; i < 30; ++i)
    for (index_t j = 0; j < 30; ++j)
      CHECK(db[p.new_index(i)][p.new_index(j)] == da[i][j]);
  CHECK(b.nnz() == a.nnz());
}

TEST_CASE("SpMV on the permuted system equals SpMV on the original") {
  std::mt19937_64 rng(9);
  const auto a = random_matrix(40, 0.1, Shape::General, rng);
  const auto p = random_permutation(40, rng);
  const auto x = random_vector(40, rng);
  const auto y = spmv_csr_ref(a, x);
  const auto yp = unpermute_vector(p, spmv_csr_ref(symmetric_permute(a, p), permute_vector(p, x)));
  const auto scale = dense_abs_matvec(to_dense(a), x);
  CHECK(oracle_error(yp, y, scale) <= 1e-12);
}

TEST_CASE("transpose and bandwidth") {
  const Triplet t[] = {{0, 2, 1.0}, {1, 0, 2.0}, {2, 2, 3.0}};
  const auto a = build_csr(3, 3, t);
  const auto at = transpose(a);
  CHECK(*at.find(2, 0) == 1.0);
  CHECK(*at.find(0, 1) == 2.0);
  CHECK(transpose(at) == a);
  CHECK(bandwidth(a) == 2);
  CHECK(bandwidth(identity_matrix(5)) == 0);
  CHECK(bandwidth(CsrMatrix{}) == 0);
}

TEST_CASE("pack_csrk: 9-row example gives sr_ptr {0,2,5,7,9} and ssr_ptr {0,2,4}") {
  const auto a = tridiagonal(9);
  const std::vector<std::vector<index_t>> groups{{2, 3, 2, 2}, {2, 2}};
  const auto m = pack_csrk(a, Permutation::identity(9), groups);
  CHECK(m.k() == 3);
  CHECK(m.sr_ptr() == std::vector<index_t>{0, 2, 5, 7, 9});
  CHECK(m.ssr_ptr() == std::vector<index_t>{0, 2, 4});
  CHECK(m.num_super_rows() == 4);
  CHECK(m.num_super_super_rows() == 2);
  CHECK(m.base() == a);
}

TEST_CASE("pack_csrk: one group holding every row") {
  const auto a = tridiagonal(7);
  const std::vector<std::vector<index_t>> groups{{7}};
  const auto m = pack_csrk(a, Permutation::identity(7), groups);
  CHECK(m.k() == 2);
  CHECK(m.sr_ptr() == std::vector<index_t>{0, 7});
  CHECK_THROWS_AS(m.ssr_ptr(), Error);
}

TEST_CASE("pack_csrk: inconsistent groups name the level") {
  const auto a = tridiagonal(9);
  auto message = [&](std::vector<std::vector<index_t>> groups) {
    try {
      pack_csrk(a, Permutation::identity(9), groups);
    } catch (const Error &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message({{2, 3, 2, 1}}).find("level 1") != std::string::npos);
  CHECK(message({{2, 3, 2, 2}, {2, 1}}).find("level 2") != std::string::npos);
  CHECK(message({{2, 0, 5, 2}}).find("level 1") != std::string::npos);
  CHECK(message({}) != "");
  CHECK(message({{9}, {1}, {1}}) != "");
  CHECK_THROWS_AS(pack_csrk(a, Permutation::identity(8), std::vector<std::vector<index_t>>{{9}}),
                  Error);
}

TEST_CASE("pack_csrk / unpack_csrk round trip on random 8x8 matrices") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_matrix(8, 0.3, Shape::General, rng);
    const auto p = random_permutation(8, rng);
    std::vector<index_t> sizes;
    for (index_t left = 8; left > 0;) {
      const index_t s = 1 + static_cast<index_t>(rng() % std::min<index_t>(left, 3));
      sizes.push_back(s);
      left -= s;
    }
    std::vector<std::vector<index_t>> groups{sizes};
    if (trial % 2 == 0)
      groups.push_back({static_cast<index_t>(sizes.size())});
    const auto m = pack_csrk(a, p, groups);
    CHECK(unpack_csrk(m) == a);
    CHECK(m.base() == symmetric_permute(a, p));
    // The base is plain CSR: its arrays satisfy the CSR constructor on their own.
    CHECK_NOTHROW(CsrMatrix(m.base().n_rows(), m.base().n_cols(), m.base().row_ptr(),
                            m.base().col_idx(), m.base().vals()));
  }
}

TEST_CASE("validate_group_ptrs") {
  CHECK_NOTHROW(validate_group_ptrs({{0, 2, 5}, {0, 2}}, 5));
  CHECK_THROWS_AS(validate_group_ptrs({{1, 2, 5}}, 5), Error);
  CHECK_THROWS_AS(validate_group_ptrs({{0, 2, 2, 5}}, 5), Error);
  CHECK_THROWS_AS(validate_group_ptrs({{0, 2, 4}}, 5), Error);
  CHECK_THROWS_AS(validate_group_ptrs({{0, 2, 5}, {0, 1}}, 5), Error);
}

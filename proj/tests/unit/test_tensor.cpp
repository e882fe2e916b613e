#include <doctest.h>

#include <cmath>

#include "gf/rng.hpp"
#include "gf/tensor.hpp"

using gf::Rng;
using gf::ShapeError;
using gf::Tensor;

TEST_SUITE_BEGIN("tensor");

TEST_CASE("constructor enforces the shape invariants") {
  CHECK_THROWS_AS(Tensor(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(1, 1, {std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Tensor(1, 1, {INFINITY}), std::invalid_argument);
}

TEST_CASE("matmul identity") {
  Tensor a(2, 2, {1.5, -2.0, 0.25, 7.0});
  auto r = Tensor::identity(2).matmul(a);
  CHECK(r == a);
}

TEST_CASE("matmul hand arithmetic") {
  Tensor a(2, 2, {1, 2, 3, 4});
  Tensor b(2, 1, {1, 1});
  auto r = a.matmul(b);
  CHECK(r(0, 0) == 3.0);
  CHECK(r(1, 0) == 7.0);
}

TEST_CASE("matmul inner mismatch names both shapes") {
  Tensor a(2, 3), b(4, 2);
  try {
    a.matmul(b);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    std::string msg = e.what();
    CHECK(msg.find("(2,3)") != std::string::npos);
    CHECK(msg.find("(4,2)") != std::string::npos);
  }
}

TEST_CASE("matmul associativity") {
  Rng rng(5);
  auto a = Tensor::uniform(rng, 3, 4, -1, 1);
  auto b = Tensor::uniform(rng, 4, 5, -1, 1);
  auto c = Tensor::uniform(rng, 5, 2, -1, 1);
  auto lhs = a.matmul(b).matmul(c);
  auto rhs = a.matmul(b.matmul(c));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(lhs(i, j) == doctest::Approx(rhs(i, j)).epsilon(1e-12));
}

TEST_CASE("elementwise ops commute with transpose") {
  Rng rng(6);
  auto a = Tensor::uniform(rng, 3, 3, -2, 2);
  auto b = Tensor::uniform(rng, 3, 3, -2, 2);
  CHECK(a.add(b).transpose() == a.transpose().add(b.transpose()));
  CHECK(a.mul(b).transpose() == a.transpose().mul(b.transpose()));
  CHECK(a.mul_scalar(3.0).transpose() == a.transpose().mul_scalar(3.0));
}

TEST_CASE("row broadcast in binary ops") {
  Tensor a(2, 2, {1, 2, 3, 4});
  Tensor row(1, 2, {10, 20});
  auto r = a.add(row);
  CHECK(r(0, 0) == 11.0);
  CHECK(r(1, 1) == 24.0);
  auto r2 = row.add(a);  // broadcast from the left as well
  CHECK(r2 == r);
  CHECK_THROWS_AS(a.add(Tensor(2, 3)), ShapeError);
}

TEST_CASE("reductions are consistent") {
  Rng rng(7);
  auto a = Tensor::uniform(rng, 17, 5, -3, 3);
  CHECK(a.mean() * static_cast<double>(a.size()) ==
        doctest::Approx(a.sum()).epsilon(1e-12));
  auto cs = a.col_sum();
  double total = 0.0;
  for (std::size_t j = 0; j < 5; ++j) total += cs(0, j);
  CHECK(total == doctest::Approx(a.sum()).epsilon(1e-12));
}

TEST_CASE("uniform tensors are deterministic per seed") {
  Rng r1(7), r2(7);
  auto a = Tensor::uniform(r1, 4, 1, 0, 1);
  auto b = Tensor::uniform(r2, 4, 1, 0, 1);
  CHECK(a == b);
}

TEST_CASE("normal tensors are deterministic per seed") {
  Rng r1(3), r2(3);
  CHECK(Tensor::normal(r1, 5, 2, 0, 1) == Tensor::normal(r2, 5, 2, 0, 1));
}

TEST_CASE("uniform rejects lo >= hi") {
  Rng r(1);
  CHECK_THROWS_AS(Tensor::uniform(r, 2, 2, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("tiny-variance normal stays tiny") {
  Rng r(9);
  auto a = Tensor::normal(r, 10, 10, 0.0, 1e-300);
  CHECK(a.max_abs() < 1e-140);
}

TEST_CASE("slice, concat and tile round-trip") {
  Tensor a(2, 3, {1, 2, 3, 4, 5, 6});
  auto left = a.slice_cols(0, 1);
  auto rest = a.slice_cols(1, 3);
  CHECK(left.cols() == 1);
  CHECK(rest.cols() == 2);
  CHECK(Tensor::concat_cols({left, rest}) == a);

  Tensor row(1, 2, {4, 2});
  auto tiled = row.tile_rows(3);
  CHECK(tiled.rows() == 3);
  CHECK(tiled(2, 1) == 2.0);
}

TEST_SUITE_END();

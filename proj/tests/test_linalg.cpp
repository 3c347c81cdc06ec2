#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qha/linalg.hpp"

using namespace qha;

// Independent oracle: determinant by cofactor expansion along the first row.
// Deliberately avoids the elimination engine under test.
static Scalar det_cofactor(const std::vector<Vec>& a) {
  const size_t n = a.size();
  if (n == 0) return Scalar(1);
  if (n == 1) return a[0][0];
  Scalar acc(0);
  for (size_t j = 0; j < n; ++j) {
    if (is_zero(a[0][j])) continue;
    std::vector<Vec> minor;
    for (size_t i = 1; i < n; ++i) {
      Vec row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    Scalar term = a[0][j] * det_cofactor(minor);
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

static std::vector<Vec> dense_of(const LinearMap& m) {
  std::vector<Vec> a(m.tgt().dim(), Vec(m.src().dim(), Scalar(0)));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  return a;
}

static LinearMap random_map(std::mt19937& rng, int rows, int cols,
                            int density_pct, bool with_fractions) {
  LinearMap m(Space::std_basis("x", cols), Space::std_basis("y", rows));
  std::uniform_int_distribution<int> pct(0, 99), num(-5, 5), den(1, 4);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (pct(rng) >= density_pct) continue;
      Scalar v(num(rng), with_fractions ? den(rng) : 1);
      v.canonicalize();
      m.set(i, j, v);
    }
  return m;
}

static bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

TEST_CASE("scalar literals parse canonically and round-trip") {
  CHECK(scalar_to_string(scalar_from_string("2/4")) == "1/2");
  CHECK(scalar_to_string(scalar_from_string("-3/6")) == "-1/2");
  CHECK(scalar_to_string(scalar_from_string("7")) == "7");
  CHECK(scalar_to_string(scalar_from_string("0/5")) == "0");
  CHECK_THROWS(scalar_from_string(""));
  CHECK_THROWS(scalar_from_string("1/0"));
  CHECK_THROWS(scalar_from_string("1.5"));
  CHECK_THROWS(scalar_from_string("1/-2"));
  CHECK_THROWS(scalar_from_string("a"));

  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 1000);
  for (int t = 0; t < 200; ++t) {
    Scalar v(num(rng), den(rng));
    v.canonicalize();
    CHECK(scalar_from_string(scalar_to_string(v)) == v);
  }
}

TEST_CASE("rank: pinned small cases") {
  Space s2 = Space::std_basis("e", 2);
  CHECK(rank(LinearMap::identity(s2)) == 2);

  LinearMap prop(s2, s2);
  prop.set(0, 0, 1);
  prop.set(0, 1, 2);
  prop.set(1, 0, 2);
  prop.set(1, 1, 4);
  CHECK(rank(prop) == 1);

  CHECK(rank(LinearMap::zero(s2, s2)) == 0);
}

TEST_CASE("rank agrees with the cofactor determinant oracle on 4x4") {
  std::mt19937 rng(41);
  int nonsingular_seen = 0, singular_seen = 0;
  for (int t = 0; t < 40; ++t) {
    LinearMap m = random_map(rng, 4, 4, 70, true);
    Scalar d = det_cofactor(dense_of(m));
    if (!is_zero(d)) {
      CHECK(rank(m) == 4);
      ++nonsingular_seen;
    } else {
      CHECK(rank(m) < 4);
      ++singular_seen;
    }
  }
  CHECK(nonsingular_seen > 0);
  // force singularity: duplicate a row
  for (int t = 0; t < 10; ++t) {
    LinearMap m = random_map(rng, 4, 4, 80, false);
    for (int j = 0; j < 4; ++j) m.set(3, j, m.get(0, j));
    CHECK(is_zero(det_cofactor(dense_of(m))));
    CHECK(rank(m) < 4);
    ++singular_seen;
  }
  CHECK(singular_seen > 0);
}

TEST_CASE("kernel_basis: pinned cases and application check") {
  Space s3 = Space::std_basis("e", 3);
  auto kz = kernel_basis(LinearMap::zero(s3, s3));
  REQUIRE(kz.size() == 3);
  {
    LinearMap b(Space::std_basis("k", 3), s3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) b.set(i, j, kz[j][i]);
    CHECK(rank(b) == 3);
  }

  LinearMap row(Space::std_basis("e", 2), Space::std_basis("y", 1));
  row.set(0, 0, 1);
  row.set(0, 1, 1);
  auto k = kernel_basis(row);
  REQUIRE(k.size() == 1);
  // proportional to (1, -1)
  CHECK(k[0][0] == -k[0][1]);
  CHECK(!is_zero(k[0][0]));

  std::mt19937 rng(17);
  for (int t = 0; t < 25; ++t) {
    LinearMap m = random_map(rng, 5, 7, 30, true);
    auto kb = kernel_basis(m);
    CHECK(static_cast<long>(kb.size()) == 7 - rank(m));
    for (const auto& v : kb) CHECK(vec_is_zero(m.apply(v)));
  }
}

TEST_CASE("solve: pinned cases and substitution check") {
  Space s3 = Space::std_basis("e", 3);
  Vec v{Scalar(1), Scalar(-2), Scalar(1, 3)};
  v[2].canonicalize();
  auto x = solve(LinearMap::identity(s3), v);
  REQUIRE(x.has_value());
  CHECK(*x == v);

  CHECK(!solve(LinearMap::zero(s3, s3), v).has_value());

  std::mt19937 rng(99);
  for (int t = 0; t < 30; ++t) {
    LinearMap m = random_map(rng, 4, 6, 50, true);
    Vec x0;
    std::uniform_int_distribution<int> num(-3, 3);
    for (int j = 0; j < 6; ++j) x0.push_back(Scalar(num(rng)));
    Vec b = m.apply(x0);
    auto got = solve(m, b);
    REQUIRE(got.has_value());
    CHECK(m.apply(*got) == b);
  }

  // unreachable target: last codomain coordinate never hit
  LinearMap m(Space::std_basis("x", 2), s3);
  m.set(0, 0, 1);
  m.set(1, 1, 1);
  Vec bad{Scalar(0), Scalar(0), Scalar(1)};
  CHECK(!solve(m, bad).has_value());
}

TEST_CASE("rank-nullity holds across random shapes and densities") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(0, 9), dens(10, 90);
  for (int t = 0; t < 120; ++t) {
    int r = dim(rng), c = dim(rng);
    LinearMap m = random_map(rng, r, c, dens(rng), t % 2 == 0);
    CHECK(rank(m) + static_cast<long>(kernel_basis(m).size()) == c);
  }
}

TEST_CASE("rref is reduced, pivots increase, invertible gives identity") {
  std::mt19937 rng(13);
  LinearMap m = random_map(rng, 5, 5, 90, true);
  while (is_zero(det_cofactor(dense_of(m)))) m = random_map(rng, 5, 5, 90, true);
  Rref r = rref(m);
  REQUIRE(r.pivot_cols.size() == 5);
  for (size_t k = 0; k < 5; ++k) {
    CHECK(r.pivot_cols[k] == static_cast<int>(k));
    for (size_t j = 0; j < 5; ++j)
      CHECK(r.rows[k][j] == (j == k ? Scalar(1) : Scalar(0)));
  }

  LinearMap w = random_map(rng, 6, 8, 40, true);
  Rref rw = rref(w);
  for (size_t k = 1; k < rw.pivot_cols.size(); ++k)
    CHECK(rw.pivot_cols[k] > rw.pivot_cols[k - 1]);
  for (size_t k = 0; k < rw.pivot_cols.size(); ++k) {
    CHECK(rw.rows[k][rw.pivot_cols[k]] == Scalar(1));
    for (size_t k2 = 0; k2 < rw.pivot_cols.size(); ++k2)
      if (k2 != k) CHECK(is_zero(rw.rows[k2][rw.pivot_cols[k]]));
  }
}

TEST_CASE("subquotient equalizer: f = g gives whole domain with identity") {
  std::mt19937 rng(5);
  LinearMap f = random_map(rng, 4, 5, 60, true);
  auto [space, inc] = subquotient(f.src(), f, f, SubquotientMode::equalizer);
  CHECK(space.dim() == 5);
  CHECK(space.labels == f.src().labels);
  CHECK(inc.same_matrix(LinearMap::identity(f.src())));
}

TEST_CASE("subquotient coequalizer: surjective difference kills everything") {
  Space s2 = Space::std_basis("e", 2);
  LinearMap f = LinearMap::identity(s2);
  LinearMap g = LinearMap::zero(s2, s2);
  auto [space, proj] = subquotient(s2, f, g, SubquotientMode::coequalizer);
  CHECK(space.dim() == 0);
  CHECK(proj.is_zero());
}

TEST_CASE("subquotient universal equations hold exactly on random maps") {
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    LinearMap f = random_map(rng, 5, 6, 45, true);
    LinearMap g = random_map(rng, 5, 6, 45, true);

    auto eq = subquotient(f.src(), f, g, SubquotientMode::equalizer);
    CHECK(compose(f, eq.structure).same_matrix(compose(g, eq.structure)));
    CHECK(eq.space.dim() == 6 - rank(f - g));
    CHECK(rank(eq.structure) == eq.space.dim());
    for (const auto& lab : eq.space.labels) {
      bool found = false;
      for (const auto& amb : f.src().labels) found = found || amb == lab;
      CHECK(found);
    }

    auto coeq = subquotient(f.tgt(), f, g, SubquotientMode::coequalizer);
    CHECK(compose(coeq.structure, f).same_matrix(compose(coeq.structure, g)));
    CHECK(coeq.space.dim() == 5 - rank(f - g));
    CHECK(rank(coeq.structure) == coeq.space.dim());
    for (const auto& lab : coeq.space.labels) {
      CHECK(lab.front() == '[');
      CHECK(lab.back() == ']');
    }
  }
}

TEST_CASE("compose and kron behave on samples") {
  std::mt19937 rng(3);
  LinearMap a = random_map(rng, 3, 4, 70, true);
  LinearMap b = random_map(rng, 4, 5, 70, true);
  LinearMap c = random_map(rng, 5, 2, 70, true);
  CHECK(compose(compose(a, b), c).same_matrix(compose(a, compose(b, c))));

  LinearMap f = random_map(rng, 2, 3, 80, false);
  LinearMap g = random_map(rng, 3, 2, 80, false);
  LinearMap fg = kron(f, g);
  CHECK(fg.src().dim() == 6);
  CHECK(fg.tgt().dim() == 6);
  // (f⊗g)(x⊗y) = f(x)⊗g(y) on a pure tensor
  Vec x{Scalar(1), Scalar(-2), Scalar(3)};
  Vec y{Scalar(2), Scalar(5)};
  Vec xy(6, Scalar(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) xy[i * 2 + j] = x[i] * y[j];
  Vec fx = f.apply(x), gy = g.apply(y);
  Vec want(6, Scalar(0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) want[i * 3 + j] = fx[i] * gy[j];
  CHECK(fg.apply(xy) == want);
}

TEST_CASE("permutation-like big matrix ranks fast") {
  // 1024 x 1024 signed permutation with a few extra entries; the elimination
  // must exploit sparsity for the large acceptance instances
  const int n = 1024;
  Space s = Space::std_basis("e", n);
  LinearMap m(s, s);
  for (int j = 0; j < n; ++j) m.set((j * 811 + 3) % n, j, (j % 2) ? 1 : -1);
  CHECK(rank(m) == n);
}

#include <doctest.h>

#include <cmath>

#include "dgmp/kron.hpp"
#include "dgmp/rng.hpp"
#include "dgmp/steering.hpp"
#include "support/oracles.hpp"

using namespace dgmp;

namespace {

CMat random_cmat(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  CMat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_gaussian(1.0);
  return m;
}

} // namespace

TEST_CASE("steering vector entries and edge cases") {
  const auto single = steering_vector(1, 0.37);
  REQUIRE(single.entries.size() == 1);
  CHECK(std::abs(single.entries(0) - cxd(1.0, 0.0)) == 0.0);

  const auto flat = steering_vector(4, 0.0);
  for (int n = 0; n < 4; ++n) CHECK(flat.entries(n) == cxd(1.0, 0.0));

  // x = 1/2: entries exp(j*pi*n) alternate sign.
  const auto nyq = steering_vector(4, 0.5);
  const cxd expect[4] = {{1, 0}, {-1, 0}, {1, 0}, {-1, 0}};
  for (int n = 0; n < 4; ++n) CHECK(std::abs(nyq.entries(n) - expect[n]) < 1e-15);

  CHECK_THROWS_AS(steering_vector(0, 0.1), std::invalid_argument);
}

TEST_CASE("steering vectors have exactly unit-modulus entries") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = steering_vector(1 + static_cast<int>(rng.uniform_index(64)),
                                   rng.uniform(-3.0, 3.0));
    double worst = 0.0;
    for (Eigen::Index n = 0; n < s.entries.size(); ++n)
      worst = std::max(worst, std::abs(std::abs(s.entries(n)) - 1.0));
    CHECK(worst <= 2.3e-16); // |e^{j phi}| from sin/cos is 1 to within an ulp
    CHECK(s.spatial_freq >= 0.0);
    CHECK(s.spatial_freq < 1.0);
  }
}

TEST_CASE("spatial frequency wrap is 1-periodic") {
  CHECK(wrap_frequency(0.25) == 0.25);
  CHECK(wrap_frequency(1.25) == doctest::Approx(0.25));
  CHECK(wrap_frequency(-0.75) == doctest::Approx(0.25));
  CHECK(wrap_frequency(0.0) == 0.0);
  CHECK(wrap_frequency(1.0) == 0.0);
  const auto a = steering_vector(8, 0.3);
  const auto b = steering_vector(8, 1.3);
  CHECK((a.entries - b.entries).norm() < 1e-12);
}

TEST_CASE("canonical dictionary of two antennas") {
  const auto d = canonical_dictionary(2);
  REQUIRE(d.size() == 2);
  CHECK((d.columns.col(0) - CVec::Ones(2)).norm() == 0.0);
  CHECK(std::abs(d.columns(0, 1) - cxd(1, 0)) < 1e-15);
  CHECK(std::abs(d.columns(1, 1) - cxd(-1, 0)) < 1e-15);
}

TEST_CASE("canonical dictionary unitarity") {
  for (int n : {2, 4, 8, 16}) {
    const auto d = canonical_dictionary(n);
    const CMat gram = d.columns.adjoint() * d.columns / static_cast<double>(n);
    CHECK((gram - CMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("single-point grid and empty grid") {
  RVec zero_grid(1);
  zero_grid << 0.0;
  const auto d = build_dictionary(5, zero_grid);
  CHECK((d.columns.col(0) - CVec::Ones(5)).norm() == 0.0);
  CHECK_THROWS_AS(build_dictionary(4, RVec(0)), std::invalid_argument);
}

TEST_CASE("vectorize_sandwich identity and zero cases") {
  Rng rng(11);
  const CMat x = random_cmat(2, 2, rng);
  const CMat eye = CMat::Identity(2, 2);
  CHECK((vectorize_sandwich(eye, x, eye) - vectorize(x)).norm() == 0.0);
  CHECK(vectorize_sandwich(eye, CMat::Zero(2, 2), eye).norm() == 0.0);
  CHECK_THROWS_AS(vectorize_sandwich(random_cmat(3, 2, rng), random_cmat(3, 2, rng),
                                     random_cmat(2, 2, rng)),
                  std::invalid_argument);
}

TEST_CASE("Kronecker identity against the brute-force oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform_index(8));
    const int n = 1 + static_cast<int>(rng.uniform_index(8));
    const int q = 1 + static_cast<int>(rng.uniform_index(8));
    const int r = 1 + static_cast<int>(rng.uniform_index(8));
    const CMat a = random_cmat(m, n, rng);
    const CMat x = random_cmat(n, q, rng);
    const CMat b = random_cmat(q, r, rng);

    const CVec direct = vectorize_sandwich(a, x, b);
    const CVec via_kron =
        test::kron_bruteforce(b.transpose(), a) * test::vect_bruteforce(x);
    CHECK((direct - via_kron).norm() <= 1e-12 * std::max(1.0, via_kron.norm()));
  }
}

TEST_CASE("library kronecker matches the brute-force oracle") {
  Rng rng(13);
  const CMat a = random_cmat(3, 2, rng);
  const CMat b = random_cmat(2, 4, rng);
  CHECK((kronecker(a, b) - test::kron_bruteforce(a, b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("angle transform concentrates an on-grid rank-1 channel") {
  const int n_bs = 16, n_ue = 8;
  const int q1 = 5, q2 = 3;
  const auto d_bs = canonical_dictionary(n_bs);
  const auto d_ue = canonical_dictionary(n_ue);
  const CVec a_bs = steering_vector(n_bs, static_cast<double>(q1) / n_bs).entries;
  const CVec a_ue = steering_vector(n_ue, static_cast<double>(q2) / n_ue).entries;
  const CMat h_f = a_bs * a_ue.adjoint();

  const CMat h_a = angle_transform(h_f, d_bs, d_ue);
  const double peak = std::norm(h_a(q1, q2));
  CHECK(peak / h_a.squaredNorm() >= 0.999);
  // Unnormalized dictionaries: the peak carries the N_bs*N_ue scaling.
  CHECK(std::abs(h_a(q1, q2)) == doctest::Approx(n_bs * n_ue).epsilon(1e-12));

  CHECK(angle_transform(CMat::Zero(n_bs, n_ue), d_bs, d_ue).norm() == 0.0);
}

TEST_CASE("angle transform round trip") {
  Rng rng(14);
  const int n_bs = 16, n_ue = 8;
  const auto d_bs = canonical_dictionary(n_bs);
  const auto d_ue = canonical_dictionary(n_ue);
  const CMat h_f = random_cmat(n_bs, n_ue, rng);
  const CMat back = inverse_angle_transform(angle_transform(h_f, d_bs, d_ue), d_bs, d_ue);
  CHECK((back - h_f).norm() <= 1e-10 * h_f.norm());
}

TEST_CASE("on-grid sparsity: L distinct paths give exactly L angle-domain entries") {
  const int n_bs = 16, n_ue = 8, n_paths = 4;
  const auto d_bs = canonical_dictionary(n_bs);
  const auto d_ue = canonical_dictionary(n_ue);
  Rng rng(15);
  CMat h_f = CMat::Zero(n_bs, n_ue);
  const int qs_bs[n_paths] = {1, 7, 7, 12};
  const int qs_ue[n_paths] = {2, 4, 6, 2}; // pairs distinct even where one index repeats
  for (int l = 0; l < n_paths; ++l) {
    const CVec a = steering_vector(n_bs, static_cast<double>(qs_bs[l]) / n_bs).entries;
    const CVec b = steering_vector(n_ue, static_cast<double>(qs_ue[l]) / n_ue).entries;
    h_f += rng.complex_gaussian(1.0) * (a * b.adjoint());
  }
  const CMat h_a = angle_transform(h_f, d_bs, d_ue);
  const double peak = h_a.cwiseAbs().maxCoeff();
  int nonzero = 0;
  for (Eigen::Index j = 0; j < h_a.cols(); ++j)
    for (Eigen::Index i = 0; i < h_a.rows(); ++i)
      if (std::abs(h_a(i, j)) > 1e-9 * peak) ++nonzero;
  CHECK(nonzero == n_paths);
}

#include "acara/instances.hpp"

#include "acara/rng.hpp"
#include "acara/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace acara {

namespace {

void l1_normalize(NnTensor& t) {
  double mass = 0.0;
  for (double e : t.entries) mass += std::abs(e);
  if (mass == 0.0) throw std::invalid_argument("instance has zero l1 mass");
  for (double& e : t.entries) e /= mass;
}

}  // namespace

NnTensor build_random_instance(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("build_random_instance: d >= 1 required");
  std::mt19937_64 gen(seed);
  NnTensor t(1, d);
  double mass = 0.0;
  do {
    mass = 0.0;
    for (double& e : t.entries) {
      e = uniform01(gen);
      mass += e;
    }
  } while (mass == 0.0);
  l1_normalize(t);
  return t;
}

NnTensor build_rank1_instance(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("build_rank1_instance: d >= 1 required");
  std::mt19937_64 gen(seed);
  NnTensor t(1, d);
  std::vector<double> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
  double mass = 0.0;
  do {
    for (double& x : a) x = uniform01(gen);
    for (double& x : b) x = uniform01(gen);
    mass = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double e = a[std::size_t(i)] * b[std::size_t(j)];
        t.entries[std::size_t(i) * std::size_t(d) + std::size_t(j)] = e;
        mass += e;
      }
  } while (mass == 0.0);
  l1_normalize(t);
  return t;
}

NnTensor build_euclid_instance(int d) {
  if (d < 2) throw std::invalid_argument("build_euclid_instance: d >= 2 required");
  NnTensor t(1, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      t.entries[std::size_t(i) * std::size_t(d) + std::size_t(j)] = double((i - j) * (i - j));
  l1_normalize(t);
  return t;
}

NnTensor build_slack_instance(int d) {
  if (d < 3) throw std::invalid_argument("build_slack_instance: d >= 3 required");
  NnTensor t(1, d);
  std::vector<double> vx(static_cast<std::size_t>(d)), vy(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    vx[std::size_t(j)] = std::cos(2.0 * std::numbers::pi * j / d);
    vy[std::size_t(j)] = std::sin(2.0 * std::numbers::pi * j / d);
  }
  for (int i = 0; i < d; ++i) {
    // facet through v_i, v_{i+1}; outward normal for the counterclockwise polygon
    const int i2 = (i + 1) % d;
    const double ex = vx[std::size_t(i2)] - vx[std::size_t(i)];
    const double ey = vy[std::size_t(i2)] - vy[std::size_t(i)];
    const double ax = ey;
    const double ay = -ex;
    const double b = ax * vx[std::size_t(i)] + ay * vy[std::size_t(i)];
    for (int j = 0; j < d; ++j) {
      double s = b - (ax * vx[std::size_t(j)] + ay * vy[std::size_t(j)]);
      if (std::abs(s) < 1e-14) s = 0.0;
      if (s < 0.0) throw std::logic_error("build_slack_instance: negative slack entry");
      t.entries[std::size_t(i) * std::size_t(d) + std::size_t(j)] = s;
    }
  }
  l1_normalize(t);
  return t;
}

NnTensor parse_nn_tensor(std::istream& in) {
  int n = 0, d = 0;
  if (!(in >> n >> d)) throw std::invalid_argument("tensor file: expected header `n d`");
  NnTensor t(n, d);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!(in >> t.entries[i]))
      throw std::invalid_argument("tensor file: expected " + std::to_string(t.size()) + " entries");
  return t;
}

std::string format_nn_tensor(const NnTensor& t) {
  std::ostringstream os;
  os << t.n << " " << t.d << "\n";
  char buf[32];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", t.entries[i]);
    os << buf << (i + 1 == t.size() ? "\n" : " ");
  }
  return os.str();
}

}  // namespace acara

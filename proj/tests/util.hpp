#pragma once

#include <random>

#include "iia/kform.hpp"

namespace iia::testutil {

template <class S>
KForm<S> random_form(int degree, std::mt19937_64& g, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> dist(lo, hi);
  KForm<S> f(degree);
  for (Blade b : blades_of_degree(degree)) f.add(b, S(dist(g)));
  return f;
}

}  // namespace iia::testutil

// Copyright 2026 The qoracle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "walsh.hpp"

namespace qoracle {

/// Parity operator over the wires of a synthesis register: bit w set means
/// x_w takes part in the XOR. The empty mask is the global-phase term.
using Mask = std::uint64_t;

inline bool parity(Mask mask, std::uint64_t x) {
  return (std::popcount(mask & x) & 1) != 0;
}

inline unsigned hamming(Mask a, Mask b) {
  return static_cast<unsigned>(std::popcount(a ^ b));
}

/// Desired phase phis[x] on basis state |x> of an m-wire register.
struct PhaseSpec {
  std::vector<double> phis;

  unsigned wires() const { return log2_exact(phis.size()); }
};

/// RZ angle per parity operator; only non-negligible entries are stored.
struct ThetaSolution {
  unsigned wires = 0;
  std::map<Mask, double> thetas;
};

inline constexpr double kThetaDropThreshold = 1e-12;

/// Walsh-domain solution of the phase equations. RZ(theta) on a wire holding
/// parity p contributes -theta/2 when p(x) = 0 and +theta/2 when p(x) = 1,
/// so theta_p = -(2/N) * (H_N phi)_p, pairing Walsh index p with mask p.
inline ThetaSolution solve_theta(const PhaseSpec& spec) {
  ThetaSolution out;
  out.wires = spec.wires();
  const std::vector<double> walsh = fwht(spec.phis);
  const double scale = -2.0 / static_cast<double>(walsh.size());
  for (std::size_t p = 1; p < walsh.size(); ++p) {
    const double theta = scale * walsh[p];
    if (std::abs(theta) > kThetaDropThreshold) out.thetas.emplace(p, theta);
  }
  return out;
}

/// Phases produced by applying every RZ of the solution to its parity.
inline std::vector<double> reconstruct_phases(const ThetaSolution& solution) {
  std::vector<double> phis(std::size_t{1} << solution.wires, 0.0);
  for (std::size_t x = 0; x < phis.size(); ++x)
    for (const auto& [mask, theta] : solution.thetas)
      phis[x] += parity(mask, x) ? theta / 2.0 : -theta / 2.0;
  return phis;
}

/// Largest deviation between two phase vectors after removing the best
/// uniform offset, measured on the unit circle.
inline double phase_distance_up_to_offset(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  std::complex<double> sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::polar(1.0, a[i] - b[i]);
  const double offset = std::arg(sum);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst,
                     std::abs(std::polar(1.0, a[i] - b[i] - offset) - 1.0));
  return worst;
}

/// Parity matrix with rows in natural input order and the given column
/// order: entry (x, c) = (-1)^{columns[c](x)}.
inline std::vector<std::vector<int>> parity_matrix(
    const std::vector<Mask>& columns, unsigned wires) {
  std::vector<std::vector<int>> d(std::size_t{1} << wires,
                                  std::vector<int>(columns.size()));
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t c = 0; c < columns.size(); ++c)
      d[x][c] = parity(columns[c], x) ? -1 : 1;
  return d;
}

struct RouteStep {
  Mask mask = 0;
  unsigned loader = 0;  ///< wire on which `mask` is loaded
};

/// Parity-operator traversal. The walk starts with every wire w holding x_w,
/// moves from step to step by CNOTs onto the loader wire, and ends with all
/// wires restored.
struct Route {
  unsigned wires = 0;
  std::vector<RouteStep> steps;

  /// Moves including the entry from and the closure back to the identity.
  std::size_t transitions() const { return steps.size() + 1; }

  std::vector<Mask> masks() const {
    std::vector<Mask> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.mask);
    return out;
  }
};

inline unsigned highest_wire(Mask mask) {
  return static_cast<unsigned>(std::bit_width(mask) - 1);
}

/// Replays a route. `on_cnot(control, target)` fires for every CNOT and
/// `on_visit(mask, loader)` once the loader wire holds the step's mask.
template <class OnCnot, class OnVisit>
void walk_route(const Route& route, OnCnot&& on_cnot, OnVisit&& on_visit) {
  std::vector<Mask> held(route.wires);
  for (unsigned w = 0; w < route.wires; ++w) held[w] = Mask{1} << w;

  auto retarget = [&](unsigned wire, Mask goal) {
    const Mask diff = held[wire] ^ goal;
    for (unsigned b = 0; b < route.wires; ++b) {
      if (!((diff >> b) & 1u)) continue;
      if (b == wire || held[b] != (Mask{1} << b))
        throw error("route step not reachable by CNOTs from clean wires");
      on_cnot(b, wire);
    }
    held[wire] = goal;
  };

  bool have_loader = false;
  unsigned loader = 0;
  for (const auto& step : route.steps) {
    if (step.mask == 0 || step.loader >= route.wires ||
        !((step.mask >> step.loader) & 1u) ||
        step.mask >> route.wires != 0)
      throw error("invalid route step");
    if (have_loader && loader != step.loader)
      retarget(loader, Mask{1} << loader);
    retarget(step.loader, step.mask);
    have_loader = true;
    loader = step.loader;
    on_visit(step.mask, step.loader);
  }
  if (have_loader) retarget(loader, Mask{1} << loader);
}

inline std::size_t cnot_cost(const Route& route) {
  std::size_t count = 0;
  walk_route(route, [&](unsigned, unsigned) { ++count; },
             [](Mask, unsigned) {});
  return count;
}

/// Route visiting `masks` in the given order, each loaded on its highest wire.
inline Route route_from_masks(const std::vector<Mask>& masks, unsigned wires) {
  Route r{wires, {}};
  for (Mask m : masks) r.steps.push_back({m, highest_wire(m)});
  return r;
}

/// Cyclic reflected Gray-code walk over all 2^m - 1 nonzero masks. Each
/// step differs from the previous one in a single bit and is loaded on its
/// highest wire, so the walk costs 2^m - 2 CNOTs over 2^m transitions.
inline Route gray_route(unsigned wires) {
  std::vector<Mask> masks;
  masks.reserve((std::size_t{1} << wires) - 1);
  for (Mask i = 1; i < (Mask{1} << wires); ++i) masks.push_back(i ^ (i >> 1));
  return route_from_masks(masks, wires);
}

/// Gray-code walk over every subset of `controls` wires loaded onto the extra
/// wire `controls` (the output wire): 2^m transitions, one CNOT each.
inline Route output_gray_route(unsigned controls) {
  const Mask out = Mask{1} << controls;
  Route r{controls + 1, {}};
  r.steps.reserve(std::size_t{1} << controls);
  for (Mask i = 0; i < (Mask{1} << controls); ++i)
    r.steps.push_back({(i ^ (i >> 1)) | out, controls});
  return r;
}

/// Two greedy salesmen over control subsets, both loaded on output wire
/// `controls`. They start at the empty subset and alternate moves (salesman
/// one first), each taking the nearest unvisited subset by Hamming distance
/// with ties going to the smaller mask. The result is salesman one's path
/// followed by salesman two's path reversed. The empty subset is always
/// visited at the start.
inline Route htsp_route(const std::set<Mask>& support, unsigned controls) {
  std::vector<Mask> remaining;
  for (Mask m : support) {
    if (m >> controls != 0)
      throw std::invalid_argument("support mask outside control wires");
    if (m != 0) remaining.push_back(m);
  }
  std::vector<Mask> first{0};
  std::vector<Mask> second;
  Mask pos[2] = {0, 0};
  int turn = 0;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      const unsigned d = hamming(pos[turn], remaining[i]);
      const unsigned db = hamming(pos[turn], remaining[best]);
      if (d < db || (d == db && remaining[i] < remaining[best])) best = i;
    }
    pos[turn] = remaining[best];
    (turn == 0 ? first : second).push_back(remaining[best]);
    remaining[best] = remaining.back();
    remaining.pop_back();
    turn ^= 1;
  }
  const Mask out = Mask{1} << controls;
  Route r{controls + 1, {}};
  for (Mask m : first) r.steps.push_back({m | out, controls});
  for (auto it = second.rbegin(); it != second.rend(); ++it)
    r.steps.push_back({*it | out, controls});
  return r;
}

/// Emits the route's CNOTs on a single register "q" and an RZ(theta_p) the
/// first time each operator with a stored theta is loaded.
inline Circuit synthesize_phase_network(const ThetaSolution& theta,
                                        const Route& route) {
  if (route.wires != theta.wires)
    throw error("route and theta solution differ in wire count");
  Circuit c;
  c.add_register("q", route.wires);
  std::set<Mask> placed;
  walk_route(
      route, [&](unsigned control, unsigned target) { c.cx(control, target); },
      [&](Mask mask, unsigned loader) {
        auto it = theta.thetas.find(mask);
        if (it != theta.thetas.end() && placed.insert(mask).second)
          c.rz(loader, it->second);
      });
  for (const auto& [mask, angle] : theta.thetas)
    if (!placed.count(mask))
      throw error("route misses parity operator with nonzero theta");
  return c;
}

/// Diagonal unitary |y> -> exp(i phis[y]) |y> (up to global phase) on a
/// register "q" of log2(|phis|) wires, with at most 2^m CNOTs. A pure global
/// phase gives an empty circuit.
inline Circuit gray_synthesize_diagonal(const PhaseSpec& spec) {
  const ThetaSolution theta = solve_theta(spec);
  if (theta.thetas.empty()) return Circuit({{"q", theta.wires}});
  return synthesize_phase_network(theta, gray_route(theta.wires));
}

/// Debug listing of a route, one "mask=0b... rz=..." line per step.
inline std::string dump_route(const Route& route, const ThetaSolution& theta) {
  std::string out;
  for (const auto& step : route.steps) {
    std::string bits;
    for (unsigned w = route.wires; w-- > 0;)
      bits.push_back(((step.mask >> w) & 1u) ? '1' : '0');
    auto it = theta.thetas.find(step.mask);
    const double angle = it == theta.thetas.end() ? 0.0 : it->second;
    char buf[64];
    std::snprintf(buf, sizeof buf, " rz=%.10f\n", angle);
    out += "mask=0b" + bits + buf;
  }
  return out;
}

}  // namespace qoracle

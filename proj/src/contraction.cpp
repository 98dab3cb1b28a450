// Copyright 2026 The ldp-minimax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp/contraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldp/constants.hpp"
#include "ldp/divergences.hpp"
#include "ldp/linalg.hpp"

namespace ldp {

ContractionReport check_fk_contraction(const FiniteChannel& ch, const DiscreteDistribution& p0,
                                       const DiscreteDistribution& p1, double k, std::uint64_t seed) {
  ContractionReport r;
  r.seed = seed;
  r.epsilon_used = verify_fk(ch, k);
  const double tv = tv_distance(p0, p1);
  ExtendedReal lhs = fk_divergence(push_forward(p0, ch), push_forward(p1, ch), k);
  r.lhs = lhs.as_double();
  if (tv == 0.0) {
    r.rhs = 0.0;
  } else if (r.epsilon_used.is_infinite()) {
    r.rhs = ExtendedReal::infinity();
  } else {
    r.rhs = std::pow(2 * r.epsilon_used.value() * tv, k);
  }
  r.holds = r.rhs.is_infinite() || r.lhs <= r.rhs.value() + constants::kContractionSlack;
  return r;
}

TensorizationReport check_tensorized_chi(const std::vector<FiniteChannel>& channels,
                                         const std::vector<DiscreteDistribution>& p0,
                                         const std::vector<DiscreteDistribution>& p1, std::uint64_t seed) {
  const std::size_t n = channels.size();
  if (n == 0 || p0.size() != n || p1.size() != n)
    throw std::invalid_argument("check_tensorized_chi: list lengths differ or are empty");
  double in_atoms = 1, out_atoms = 1;
  for (const auto& c : channels) {
    in_atoms *= static_cast<double>(c.inputs().size());
    out_atoms *= static_cast<double>(c.outputs().size());
  }
  if (std::max(in_atoms, out_atoms) > static_cast<double>(constants::kJointAtomCap))
    throw std::length_error("check_tensorized_chi: joint space exceeds the atom cap");

  ExtendedReal eps2 = 0.0;
  std::vector<double> tv(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps2 = max(eps2, verify_chi2(channels[i]));
    tv[i] = tv_distance(p0[i], p1[i]);
  }
  FiniteChannel joint = channels[0];
  // Inputs are laid out on each channel's input atoms so product atoms line up.
  auto on_inputs = [&](const DiscreteDistribution& p, const FiniteChannel& c) {
    return DiscreteDistribution(c.inputs(), mass_on(p, c.inputs()));
  };
  DiscreteDistribution j0 = on_inputs(p0[0], channels[0]);
  DiscreteDistribution j1 = on_inputs(p1[0], channels[0]);
  for (std::size_t i = 1; i < n; ++i) {
    joint = product(joint, channels[i]);
    j0 = product(j0, on_inputs(p0[i], channels[i]));
    j1 = product(j1, on_inputs(p1[i], channels[i]));
  }
  DiscreteDistribution m0 = push_forward(j0, joint);
  DiscreteDistribution m1 = push_forward(j1, joint);

  TensorizationReport out;
  out.joint_atoms = m0.size();
  out.chi.seed = out.kl.seed = seed;
  out.chi.epsilon_used = out.kl.epsilon_used = eps2;
  out.chi.lhs = chi_square(m0, m1).as_double();
  out.kl.lhs = kl(m0, m1).as_double();

  bool all_zero = true;
  for (double t : tv) all_zero = all_zero && t == 0.0;
  if (all_zero) {
    out.chi.rhs = out.kl.rhs = 0.0;
  } else if (eps2.is_infinite()) {
    out.chi.rhs = out.kl.rhs = ExtendedReal::infinity();
  } else {
    double prod = 1;
    for (double t : tv) prod *= 1 + 4 * eps2.value() * t * t;
    out.chi.rhs = prod - 1;
    out.kl.rhs = kl_tensor_bound(eps2.value(), tv).tight;
  }
  for (ContractionReport* r : {&out.chi, &out.kl})
    r->holds = r->rhs.is_infinite() || r->lhs <= r->rhs.value() + constants::kContractionSlack;
  return out;
}

KlTensorBound kl_tensor_bound(double epsilon2, const std::vector<double>& tv) {
  KlTensorBound b;
  for (double t : tv) {
    double x = 4 * epsilon2 * t * t;
    b.tight += std::log1p(x);
    b.loose += x;
  }
  return b;
}

namespace {

// Differences p0 - p_v (rows) on the atoms where `pstar` is positive, plus
// the matching pstar masses. Atoms outside the reference support must carry
// no mass in any member.
struct DifferenceTable {
  Eigen::MatrixXd diff;
  Eigen::VectorXd pstar;
};

DifferenceTable difference_table(const PackingFamily& fam, const DiscreteDistribution& pstar) {
  if (fam.members.empty()) throw std::invalid_argument("PackingFamily: no members");
  std::vector<DiscreteDistribution> all = fam.members;
  all.push_back(fam.base);
  all.push_back(pstar);
  std::vector<Atom> support = union_support(all);
  std::vector<Atom> kept;
  std::vector<double> ref;
  for (const Atom& a : support) {
    double w = pstar.mass_of(a);
    if (w > 0) {
      kept.push_back(a);
      ref.push_back(w);
      continue;
    }
    bool charged = fam.base.mass_of(a) > 0;
    for (const auto& m : fam.members) charged = charged || m.mass_of(a) > 0;
    if (charged) throw std::invalid_argument("complexity: reference has zero mass on atom '" + a + "'");
  }
  DifferenceTable t;
  t.diff.resize(static_cast<Eigen::Index>(fam.members.size()), static_cast<Eigen::Index>(kept.size()));
  t.pstar = Eigen::Map<Eigen::VectorXd>(ref.data(), static_cast<Eigen::Index>(ref.size()));
  for (std::size_t v = 0; v < fam.members.size(); ++v)
    for (std::size_t j = 0; j < kept.size(); ++j)
      t.diff(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) =
          fam.base.mass_of(kept[j]) - fam.members[v].mass_of(kept[j]);
  return t;
}

}  // namespace

double complexity_c2(const PackingFamily& fam, const DiscreteDistribution& pstar) {
  DifferenceTable t = difference_table(fam, pstar);
  const double nv = static_cast<double>(fam.members.size());
  Eigen::MatrixXd a = t.diff * t.pstar.cwiseSqrt().cwiseInverse().asDiagonal();
  Eigen::MatrixXd gram = a * a.transpose() / nv;
  return std::max(0.0, largest_eigenvalue(gram).eigenvalue);
}

double complexity_c2(const PackingFamily& fam) { return complexity_c2(fam, fam.base); }

double complexity_cinf(const PackingFamily& fam, const DiscreteDistribution& pstar) {
  DifferenceTable t = difference_table(fam, pstar);
  const Eigen::Index m = t.diff.cols();
  if (static_cast<std::size_t>(m) > constants::kVertexEnumerationCap)
    throw std::length_error("complexity_cinf: support exceeds the vertex enumeration cap");
  const double nv = static_cast<double>(fam.members.size());
  if (m == 0) return 0.0;
  // Objective is even in f, so fix f(0) = +1 and walk the rest in Gray order.
  Eigen::VectorXd s = t.diff.rowwise().sum();
  double best = s.squaredNorm();
  const unsigned long count = 1UL << (m - 1);
  unsigned long prev_gray = 0;
  for (unsigned long i = 1; i < count; ++i) {
    unsigned long gray = i ^ (i >> 1);
    unsigned long flipped = gray ^ prev_gray;
    int bit = __builtin_ctzl(flipped);
    Eigen::Index col = bit + 1;
    // Bit set means f(col) = -1.
    s -= ((gray & flipped) ? 2.0 : -2.0) * t.diff.col(col);
    best = std::max(best, s.squaredNorm());
    prev_gray = gray;
  }
  return best / nv;
}

ExtendedReal big_tensor_bound(const PackingFamily& fam, double n, PrivacyMode mode, double privacy,
                              const DiscreteDistribution& reference,
                              const std::optional<DiscreteDistribution>& pstar) {
  if (n < 0 || privacy < 0) throw std::invalid_argument("big_tensor_bound: negative n or privacy level");
  if (n == 0) return 0.0;
  const DiscreteDistribution& ref_star = pstar ? *pstar : fam.base;
  if (mode == PrivacyMode::kDp) {
    const double eps = privacy;
    double ratio = 0;  // max_v sup_x dP/dP_v
    for (const auto& m : fam.members) {
      Aligned a = align(reference, m);
      for (Eigen::Index i = 0; i < a.p.size(); ++i) {
        if (a.p(i) <= 0) continue;
        ratio = a.q(i) <= 0 ? std::numeric_limits<double>::infinity() : std::max(ratio, a.p(i) / a.q(i));
      }
    }
    double s = std::exp(eps / 2) - std::exp(-eps / 2);
    return n * s * s / 4 * complexity_cinf(fam, ref_star) * std::min(std::exp(eps), ratio);
  }
  const double eps2 = privacy;
  double ratio = 0;  // max_v sup_x dP_v/dP
  for (const auto& m : fam.members) {
    Aligned a = align(m, reference);
    for (Eigen::Index i = 0; i < a.p.size(); ++i) {
      if (a.p(i) <= 0) continue;
      if (a.q(i) <= 0) return ExtendedReal::infinity();
      ratio = std::max(ratio, a.p(i) / a.q(i));
    }
  }
  return n * eps2 * complexity_c2(fam, ref_star) * ratio;
}

namespace {

std::string sign_atom(unsigned long mask, int d) {
  std::string s;
  for (int j = 0; j < d; ++j) s += (mask >> j & 1) ? '+' : '-';
  return s;
}

double sign_of(unsigned long mask, int j) { return (mask >> j & 1) ? 1.0 : -1.0; }

}  // namespace

PackingFamily hypercube_packing(int d, double delta) {
  if (d < 1 || d > 20) throw std::invalid_argument("hypercube_packing: d must be in [1, 20]");
  if (delta < 0 || delta > 1) throw std::invalid_argument("hypercube_packing: delta must be in [0, 1]");
  const unsigned long cells = 1UL << d;
  std::vector<Atom> atoms;
  for (unsigned long m = 0; m < cells; ++m) atoms.push_back(sign_atom(m, d));
  DiscreteDistribution base = DiscreteDistribution::uniform(atoms);
  std::vector<DiscreteDistribution> members;
  for (int j = 0; j < d; ++j) {
    for (double sgn : {1.0, -1.0}) {
      Eigen::VectorXd mass(static_cast<Eigen::Index>(cells));
      for (unsigned long m = 0; m < cells; ++m)
        mass(static_cast<Eigen::Index>(m)) = (1 + delta * sgn * sign_of(m, j)) / static_cast<double>(cells);
      members.emplace_back(atoms, mass);
    }
  }
  return {base, members};
}

PackingFamily sparse_logistic_packing(int d, double theta0, double delta) {
  if (d < 1 || d > 19) throw std::invalid_argument("sparse_logistic_packing: d must be in [1, 19]");
  const unsigned long cells = 1UL << d;
  std::vector<Atom> atoms;
  for (unsigned long m = 0; m < cells; ++m)
    for (const char* y : {"|-", "|+"}) atoms.push_back(sign_atom(m, d) + y);
  auto family = [&](int j, double sgn) {
    Eigen::VectorXd mass(static_cast<Eigen::Index>(2 * cells));
    for (unsigned long m = 0; m < cells; ++m) {
      double margin = theta0 + (j < 0 ? 0.0 : delta * sgn * sign_of(m, j));
      for (int yi = 0; yi < 2; ++yi) {
        double y = yi == 0 ? -1.0 : 1.0;
        mass(static_cast<Eigen::Index>(2 * m + yi)) = 1.0 / (1.0 + std::exp(-y * margin)) / static_cast<double>(cells);
      }
    }
    return DiscreteDistribution(atoms, mass);
  };
  PackingFamily fam{family(-1, 0), {}};
  for (int j = 0; j < d; ++j)
    for (double sgn : {1.0, -1.0}) fam.members.push_back(family(j, sgn));
  return fam;
}

double sparse_logistic_complexity_bound(int d, double theta0, double delta) {
  const double e = std::exp(theta0);
  const double alpha = e / (e + 1) - e / (e + std::exp(-delta));
  const double beta = e / (e + 1) - e / (e + std::exp(delta));
  return 2 * std::max((alpha - beta) * (alpha - beta) / d, (alpha + beta) * (alpha + beta));
}

}  // namespace ldp

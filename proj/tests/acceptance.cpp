// Copyright 2026 The qconverse Authors
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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Runtime limits count as part of each
// criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "asymptotic.hpp"
#include "channels.hpp"
#include "depolarizing_lp.hpp"
#include "errors.hpp"
#include "oneshot.hpp"

namespace qconverse {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// d_in, d_out in {2, 3}, d_env in {1, 2, 3}.
Channel sample_channel(std::uint64_t seed) {
  return random_channel(2 + seed % 2, 2 + (seed / 2) % 2, 1 + (seed / 4) % 3,
                        seed);
}

double checked(const BoundResult& r) {
  if (!r.ok()) {
    throw Error(ErrorCode::SolverFailure,
                r.name + " ended with status " + conic::to_string(r.status));
  }
  return r.value;
}

double checked_log(const BoundResult& r) {
  checked(r);
  return r.log_value;
}

Outcome noiseless_anchor() {
  double worst = 0.0;
  for (int d : {2, 3, 4}) {
    const double q = checked_log(q_gamma(identity_channel(d), Form::Primal));
    worst = std::max(worst, std::abs(q - std::log2(static_cast<double>(d))));
  }
  return {worst <= 1e-6, fmt("max |Q_Gamma(I_d) - log2 d| = %.3g (tol 1e-6)", worst)};
}

Outcome gamma_duality() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Channel ch = sample_channel(1000 + seed);
    const double p = checked(q_gamma(ch, Form::Primal));
    const double d = checked(q_gamma(ch, Form::Dual));
    worst = std::max(worst, std::abs(p - d));
  }
  return {worst <= 2e-8, fmt("max |Gamma_primal - Gamma_dual| = %.3g (tol 2e-8)", worst)};
}

Outcome additivity() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Channel a = random_channel(2, 2, 1 + seed % 3, 2000 + seed);
    const Channel b = random_channel(2, 2, 1 + (seed + 1) % 3, 3000 + seed);
    const double qa = checked_log(q_gamma(a, Form::Primal));
    const double qb = checked_log(q_gamma(b, Form::Primal));
    const double qab = checked_log(q_gamma(tensor(a, b), Form::Primal));
    worst = std::max(worst, std::abs(qab - qa - qb));
  }
  return {worst <= 1e-5, fmt("max |Q(N1 x N2) - Q(N1) - Q(N2)| = %.3g (tol 1e-5)", worst)};
}

std::vector<Channel> chain_channels() {
  std::vector<Channel> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(sample_channel(4000 + seed));
  return out;
}

Outcome inequality_chain() {
  double worst_chain = -1e300;  // max violation, positive means broken
  double worst_cap = -1e300;
  for (const Channel& ch : chain_channels()) {
    for (double eps : {0.01, 0.05}) {
      const double f = checked(bound_f(ch, eps));
      const double g = checked(bound_g(ch, eps));
      const double gt = checked(bound_g_tilde(ch, eps));
      const auto gh = g_hat_iterate(ch, eps, 2);
      const double g1 = checked(gh[0]);
      const double g2 = checked(gh[1]);
      for (double v : {f - g, g - gt, gt - g1, g1 - g2}) worst_chain = std::max(worst_chain, v);
      const CapacityResult cap = oneshot_capacity(ch, eps, CodeClass::NsPpt, {}, true);
      worst_cap = std::max(worst_cap, cap.log_value - gh[1].log_value);
    }
  }
  const bool ok = worst_chain <= 1e-7 && worst_cap <= 1e-7;
  return {ok, fmt("max chain violation %.3g (tol 1e-7)", worst_chain) +
                  fmt(", max Q1_NS - (-log2 g_hat_2) = %.3g (tol 1e-7)", worst_cap)};
}

Outcome damping_example() {
  bool ok = true;
  std::string detail;
  for (double r : {0.085, 0.09}) {
    const Channel ch = tensor_power(amplitude_damping(r), 2);
    const double nf = checked_log(bound_f(ch, 0.01));
    const double ngt = checked_log(bound_g_tilde(ch, 0.01));
    ok = ok && ngt < 1.0 - 1e-4 && nf > 1.0 + 1e-4;
    detail += fmt("r=%.3f: ", r) + fmt("-log2 g_tilde = %.6f, ", ngt) +
              fmt("-log2 f = %.6f; ", nf);
  }
  return {ok, detail + "need -log2 g_tilde < 1 - 1e-4 < 1 + 1e-4 < -log2 f"};
}

Outcome depolarizing_sweep() {
  double worst = -1e300;
  double f17 = 0.0, gh17 = 0.0;
  for (int n = 1; n <= 30; ++n) {
    const double nf = checked_log(lp_f(n, 0.2, 0.004));
    const auto seq = lp_g_hat_iterate(n, 0.2, 0.004, 5);
    const double ngh = checked_log(seq.back());
    worst = std::max(worst, ngh - nf);
    if (n == 17) {
      f17 = nf;
      gh17 = ngh;
    }
  }
  const bool ok = gh17 < 1.0 && f17 > 1.0 && worst <= 1e-6;
  return {ok, fmt("n=17: -log2 g_hat_5 = %.6f", gh17) + fmt(", -log2 f = %.6f", f17) +
                  fmt("; max over n of (-log2 g_hat_5) - (-log2 f) = %.3g (tol 1e-6)",
                      worst)};
}

Outcome lp_sdp_equivalence() {
  double worst = 0.0;
  for (int n : {1, 2}) {
    for (double p : {0.0, 0.1, 0.2}) {
      const Channel ch = tensor_power(depolarizing(p), n);
      for (double eps : {0.004, 0.05}) {
        worst = std::max(worst, std::abs(checked(lp_g(n, p, eps)) - checked(bound_g(ch, eps))));
        worst = std::max(worst, std::abs(checked(lp_f(n, p, eps)) - checked(bound_f(ch, eps))));
      }
    }
  }
  return {worst <= 1e-6, fmt("max |LP - SDP| = %.3g (tol 1e-6)", worst)};
}

Outcome nr_family() {
  double worst = -1e300;
  double widest = 0.0;
  double widest_r = 0.0;
  for (int i = 0; i < 26; ++i) {
    const double r = 0.5 * i / 25.0;
    const Channel ch = channel_nr(r);
    const double g = checked_log(q_gamma(ch, Form::Primal));
    const double t = checked_log(q_theta(ch));
    worst = std::max(worst, g - t);
    if (t - g > widest) {
      widest = t - g;
      widest_r = r;
    }
  }
  const bool ok = worst <= 1e-6 && widest > 0.01;
  return {ok, fmt("max Q_Gamma - Q_Theta = %.3g (tol 1e-6)", worst) +
                  fmt("; widest gap %.4f", widest) + fmt(" at r = %.2f (need > 0.01)", widest_r)};
}

Outcome ew_reformulation() {
  double worst_excess = -1e300;
  double worst_equality = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Channel ch = sample_channel(5000 + seed);
    GammaCertificate cert;
    const double q = checked_log(q_gamma(ch, Form::Primal, {}, &cert));
    for (std::uint64_t s = 0; s < 50; ++s) {
      const CMatrix rho = random_density_matrix(ch.d_in(), 6000 + 100 * seed + s);
      const double w = checked_log(e_w(purified_output(ch, rho), Form::Primal));
      worst_excess = std::max(worst_excess, w - q);
    }
    CMatrix rho = cert.rho.data();
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    const double w_opt = checked_log(e_w(purified_output(ch, rho), Form::Primal));
    worst_equality = std::max(worst_equality, std::abs(w_opt - q));
  }
  const bool ok = worst_excess <= 1e-5 && worst_equality <= 1e-4;
  return {ok, fmt("max sampled E_W - Q_Gamma = %.3g (tol 1e-5)", worst_excess) +
                  fmt("; max |E_W(certificate input) - Q_Gamma| = %.3g (tol 1e-4)",
                      worst_equality)};
}

Outcome oneshot_consistency() {
  double worst = -1e300;
  for (const Channel& ch : chain_channels()) {
    const double q = checked_log(q_gamma(ch, Form::Primal));
    for (double eps : {0.01, 0.05}) {
      const CapacityResult cap = oneshot_capacity(ch, eps, CodeClass::Ppt, {}, true);
      worst = std::max(worst, cap.log_value - (q - std::log2(1.0 - eps)));
    }
  }
  return {worst <= 1e-7,
          fmt("max Q1_PPT - (Q_Gamma - log2(1 - eps)) = %.3g (tol 1e-7)", worst)};
}

}  // namespace
}  // namespace qconverse

int main() {
  using namespace qconverse;
  const std::vector<Criterion> criteria = {
      {1, "noiseless anchor", 5.0, noiseless_anchor},
      {2, "Gamma primal/dual agreement", 60.0, gamma_duality},
      {3, "Q_Gamma additivity", 300.0, additivity},
      {4, "one-shot inequality chain", 600.0, inequality_chain},
      {5, "amplitude damping pair, eps = 0.01", 120.0, damping_example},
      {6, "depolarizing LP sweep, n = 1..30", 30.0, depolarizing_sweep},
      {7, "LP and full SDP agree", 300.0, lp_sdp_equivalence},
      {8, "Q_Gamma vs Q_Theta on N_r", 180.0, nr_family},
      {9, "Q_Gamma as max of E_W", 600.0, ew_reformulation},
      {10, "one-shot PPT capacity below Q_Gamma - log2(1 - eps)", 0.0, oneshot_consistency},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_seconds > 0.0) {
      timing += fmt(" (limit %.0f s)", c.limit_seconds);
      if (secs >= c.limit_seconds) o.pass = false;
    }
    std::printf("%s %d %s: %s; %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

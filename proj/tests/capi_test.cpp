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


#include <gtest/gtest.h>

#include <qconverse/qconverse.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Free {
  void operator()(qc_channel* c) const { qc_channel_free(c); }
};
using Handle = std::unique_ptr<qc_channel, Free>;

Handle make_identity(int d) {
  qc_channel* ch = nullptr;
  EXPECT_EQ(qc_channel_identity(d, &ch), QC_OK);
  return Handle(ch);
}

TEST(CApi, NamesAndDefaults) {
  EXPECT_STREQ(qc_status_name(QC_OK), "ok");
  EXPECT_STREQ(qc_status_name(QC_ERR_UNKNOWN_NAME), "unknown_name");
  EXPECT_STREQ(qc_solve_status_name(QC_SOLVE_OPTIMAL), "optimal");
  EXPECT_STREQ(qc_solve_status_name(QC_SOLVE_INFEASIBLE), "infeasible");
  const qc_solver_options o = qc_default_solver_options();
  EXPECT_EQ(o.feas_tol, 1e-8);
  EXPECT_EQ(o.gap_tol, 1e-8);
  EXPECT_GT(o.max_iter, 0);
  EXPECT_NE(std::string(qc_bound_names()).find("q_gamma"), std::string::npos);
  EXPECT_GT(std::strlen(qc_version()), 0u);
}

TEST(CApi, NullArgumentsAreRejected) {
  qc_bound_result r;
  EXPECT_EQ(qc_channel_identity(2, nullptr), QC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qc_q_gamma(nullptr, 0, nullptr, &r), QC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(qc_last_error()).find("NULL"), std::string::npos);
  Handle id = make_identity(2);
  EXPECT_EQ(qc_q_gamma(id.get(), 0, nullptr, nullptr), QC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qc_bound_by_name(id.get(), nullptr, nullptr, nullptr, &r),
            QC_ERR_INVALID_ARGUMENT);
  qc_channel_free(nullptr);
  qc_string_free(nullptr);
}

TEST(CApi, ErrorCodesFollowFailureKind) {
  qc_channel* ch = nullptr;
  EXPECT_EQ(qc_channel_amplitude_damping(2.0, &ch), QC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ch, nullptr);
  EXPECT_EQ(qc_channel_from_json("{oops", &ch), QC_ERR_PARSE);
  EXPECT_EQ(qc_channel_from_json(R"({"d_in":1,"d_out":1,"kraus":[[[[2,0]]]]})", &ch),
            QC_ERR_INVARIANT);
  Handle id = make_identity(2);
  qc_bound_result r;
  EXPECT_EQ(qc_bound_by_name(id.get(), "no_such_bound", nullptr, nullptr, &r),
            QC_ERR_UNKNOWN_NAME);
  EXPECT_NE(std::string(qc_last_error()).find("no_such_bound"), std::string::npos);
  qc_solver_options bad = qc_default_solver_options();
  bad.gap_tol = 0.0;
  EXPECT_EQ(qc_q_gamma(id.get(), 0, &bad, &r), QC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(qc_bound_f(id.get(), 1.5, nullptr, &r), QC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, NoiselessBoundsThroughHandles) {
  Handle id = make_identity(2);
  qc_bound_result r;
  ASSERT_EQ(qc_q_gamma(id.get(), 0, nullptr, &r), QC_OK);
  EXPECT_STREQ(r.name, "q_gamma");
  EXPECT_EQ(r.solver_status, QC_SOLVE_OPTIMAL);
  EXPECT_NEAR(r.log_value, 1.0, 1e-7);
  ASSERT_EQ(qc_q_gamma(id.get(), 1, nullptr, &r), QC_OK);
  EXPECT_STREQ(r.name, "q_gamma_dual");
  EXPECT_NEAR(r.log_value, 1.0, 1e-7);
  ASSERT_EQ(qc_q_theta(id.get(), nullptr, &r), QC_OK);
  EXPECT_NEAR(r.log_value, 1.0, 1e-7);
  ASSERT_EQ(qc_bound_f(id.get(), 0.0, nullptr, &r), QC_OK);
  EXPECT_NEAR(r.value, 0.5, 1e-7);
  EXPECT_NE(std::string(r.warnings).find("eps = 0"), std::string::npos);

  double fid = 0.0;
  ASSERT_EQ(qc_fidelity(id.get(), 2, 0, nullptr, &fid), QC_OK);
  EXPECT_NEAR(fid, 1.0, 1e-7);
  int k = 0;
  double lg = -1.0;
  ASSERT_EQ(qc_oneshot_capacity(id.get(), 0.01, 1, 0, nullptr, &k, &lg), QC_OK);
  EXPECT_EQ(k, 2);
  EXPECT_EQ(lg, 1.0);
  EXPECT_EQ(qc_fidelity(id.get(), 2, 7, nullptr, &fid), QC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ByNameMatchesDirectCalls) {
  qc_channel* ad = nullptr;
  ASSERT_EQ(qc_channel_amplitude_damping(0.2, &ad), QC_OK);
  Handle hold(ad);
  const qc_bound_params params{0.05, 0.0, 3};
  qc_bound_result direct, named;
  ASSERT_EQ(qc_bound_g_tilde(ad, 0.05, nullptr, &direct), QC_OK);
  ASSERT_EQ(qc_bound_by_name(ad, "g_tilde", &params, nullptr, &named), QC_OK);
  EXPECT_EQ(direct.value, named.value);

  std::vector<qc_bound_result> seq(3);
  ASSERT_EQ(qc_g_hat_iterate(ad, 0.05, 3, nullptr, seq.data()), QC_OK);
  ASSERT_EQ(qc_bound_by_name(ad, "g_hat_iterate", &params, nullptr, &named), QC_OK);
  EXPECT_EQ(seq[2].value, named.value);
  EXPECT_STREQ(seq[0].name, "g_hat_1");
  EXPECT_GE(seq[2].value, seq[0].value - 1e-9);

  for (const char* n : {"f", "g", "g_hat", "q_gamma_dual", "capacity_ppt",
                        "capacity_ns"}) {
    EXPECT_EQ(qc_bound_by_name(ad, n, &params, nullptr, &named), QC_OK) << n;
  }
}

TEST(CApi, ChannelsComposeAndSerialize) {
  qc_channel* r = nullptr;
  ASSERT_EQ(qc_channel_random(2, 3, 2, 5, &r), QC_OK);
  Handle hr(r);
  char* text = nullptr;
  ASSERT_EQ(qc_channel_to_json(r, &text), QC_OK);
  qc_channel* back = nullptr;
  ASSERT_EQ(qc_channel_from_json(text, &back), QC_OK);
  Handle hb(back);
  qc_string_free(text);

  qc_bound_result a, b;
  ASSERT_EQ(qc_q_gamma(r, 0, nullptr, &a), QC_OK);
  ASSERT_EQ(qc_q_gamma(back, 0, nullptr, &b), QC_OK);
  EXPECT_NEAR(a.value, b.value, 1e-12);

  qc_channel* t = nullptr;
  ASSERT_EQ(qc_channel_tensor(r, back, &t), QC_OK);
  Handle ht(t);
  int din = 0, dout = 0;
  ASSERT_EQ(qc_channel_dims(t, &din, &dout), QC_OK);
  EXPECT_EQ(din, 4);
  EXPECT_EQ(dout, 9);
  qc_channel* p = nullptr;
  EXPECT_EQ(qc_channel_tensor_power(r, 0, &p), QC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, DepolarizingLps) {
  qc_bound_result f, g, gh;
  ASSERT_EQ(qc_depol_lp_f(17, 0.2, 0.004, nullptr, &f), QC_OK);
  ASSERT_EQ(qc_depol_lp_g(17, 0.2, 0.004, nullptr, &g), QC_OK);
  ASSERT_EQ(qc_depol_lp_g_hat(17, 0.2, 0.004, 0.0, nullptr, &gh), QC_OK);
  EXPECT_LE(f.value, g.value + 1e-7);
  EXPECT_NEAR(g.value, gh.value, 1e-7);
  std::vector<qc_bound_result> seq(5);
  ASSERT_EQ(qc_depol_lp_g_hat_iterate(17, 0.2, 0.004, 5, nullptr, seq.data()), QC_OK);
  EXPECT_STREQ(seq[4].name, "lp_g_hat_5");
  EXPECT_LT(seq[4].log_value, 1.0);
  EXPECT_GT(f.log_value, 1.0);
  EXPECT_EQ(qc_depol_lp_g(0, 0.2, 0.004, nullptr, &g), QC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, StrongConverseError) {
  EXPECT_NEAR(qc_strong_converse_error(10, 1.5, 0.5), 1.0 - std::exp2(-10.0), 1e-15);
  EXPECT_TRUE(std::isnan(qc_strong_converse_error(0, 1.0, 0.5)));
}

TEST(CApi, ResultJsonAndProgramDump) {
  Handle id = make_identity(2);
  qc_bound_result r;
  ASSERT_EQ(qc_bound_f(id.get(), 0.0, nullptr, &r), QC_OK);
  char* text = nullptr;
  ASSERT_EQ(qc_bound_result_to_json(&r, &text), QC_OK);
  const nlohmann::json doc = nlohmann::json::parse(text);
  qc_string_free(text);
  EXPECT_EQ(doc["name"], "f");
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_NEAR(doc["log_value"].get<double>(), 1.0, 1e-6);
  ASSERT_EQ(doc["warnings"].size(), 1u);

  const qc_bound_params params{0.01, 0.4, 1};
  ASSERT_EQ(qc_program_dump(id.get(), "g_hat", &params, &text), QC_OK);
  const std::string dump = text;
  qc_string_free(text);
  EXPECT_EQ(dump.rfind("qconverse-conic 1", 0), 0u);
  EXPECT_NE(dump.find("t >= m_hat^2"), std::string::npos);
  EXPECT_EQ(qc_program_dump(id.get(), "q_gamma", &params, &text), QC_ERR_UNKNOWN_NAME);
}

}  // namespace

#include <gtest/gtest.h>

#include <string>

#include "json.hpp"
#include "kls/kls.h"

namespace {

using nlohmann::json;

struct Doc {
  kls_doc* d = nullptr;
  explicit Doc(const char* text) { EXPECT_EQ(kls_doc_load_string(text, "t", &d), KLS_OK) << kls_last_error(); }
  ~Doc() { kls_doc_free(d); }
};

json run_json(const kls_doc* d, const char* command, json options, int expect_status) {
  options["format"] = "json";
  char* out = nullptr;
  EXPECT_EQ(kls_run(d, command, options.dump().c_str(), &out), expect_status) << kls_last_error();
  EXPECT_NE(out, nullptr);
  json j = out ? json::parse(out) : json();
  kls_string_free(out);
  return j;
}

}  // namespace

TEST(CApi, LoadsAndRuns) {
  Doc b3(R"({"v":1,"schema":"poset","builder":"boolean","n":3})");
  EXPECT_STREQ(kls_doc_schema(b3.d), "poset");
  json j = run_json(b3.d, "kls", {{"what", "z"}}, KLS_OK);
  EXPECT_EQ(j["intervals"][0]["poly"], "1,3,3,1");
  EXPECT_STREQ(kls_last_error(), "");
}

TEST(CApi, TextFormatIsDefault) {
  Doc b2(R"({"v":1,"schema":"poset","builder":"boolean","n":2})");
  char* out = nullptr;
  ASSERT_EQ(kls_run(b2.d, "kls", R"({"what":"toric-h"})", &out), KLS_OK);
  EXPECT_NE(std::string(out).find("1,1"), std::string::npos);
  EXPECT_FALSE(json::accept(out));
  kls_string_free(out);
}

TEST(CApi, FailureKeepsReport) {
  Doc c3(R"({"v":1,"schema":"poset","builder":"chain","k":3})");
  json j = run_json(c3.d, "check", {{"checks", {"lower-eulerian"}}}, KLS_FAILED);
  EXPECT_FALSE(j["ok"]);
  EXPECT_EQ(j["results"][0]["witness"], json::array({0, 2}));
  EXPECT_STRNE(kls_last_error(), "");
}

TEST(CApi, InputErrors) {
  kls_doc* d = reinterpret_cast<kls_doc*>(1);
  EXPECT_EQ(kls_doc_load_string("{", "bad", &d), KLS_INPUT_ERROR);
  EXPECT_EQ(d, nullptr);
  EXPECT_STRNE(kls_last_error(), "");
  EXPECT_EQ(kls_doc_load_string(R"({"schema":"poset"})", "nov", &d), KLS_INPUT_ERROR);
  EXPECT_EQ(kls_doc_load_string(nullptr, "x", &d), KLS_INPUT_ERROR);
  EXPECT_EQ(kls_doc_load_file("/nonexistent/doc.json", &d), KLS_INPUT_ERROR);

  Doc b2(R"({"v":1,"schema":"poset","builder":"boolean","n":2})");
  char* out = nullptr;
  EXPECT_EQ(kls_run(b2.d, "kls", "not json", &out), KLS_INPUT_ERROR);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(kls_run(b2.d, "kls", R"({"format":"xml"})", &out), KLS_INPUT_ERROR);
  EXPECT_EQ(kls_run(nullptr, "kls", nullptr, &out), KLS_INPUT_ERROR);
  EXPECT_EQ(kls_run(b2.d, "kls", nullptr, nullptr), KLS_INPUT_ERROR);
  json j = run_json(b2.d, "frobnicate", json::object(), KLS_INPUT_ERROR);
  EXPECT_FALSE(j["ok"]);
  run_json(b2.d, "ehrhart", json::object(), KLS_INPUT_ERROR);
}

TEST(CApi, ErrorCodesFromTheLibrary) {
  Doc bad(R"({"v":1,"schema":"triple","poset":{"builder":"polygon","k":4},"q":"v0",
              "kernel":{"overrides":[{"interval":["empty","e0"],"poly":"1,1"}]}})");
  json j = run_json(bad.d, "kls", {{"what", "g"}}, KLS_FAILED);
  EXPECT_EQ(j["error"]["code"], "MirrorConstraintViolated");
  run_json(bad.d, "kls", {{"what", "g"}, {"kernel", "eulerian"}}, KLS_OK);
}

TEST(CApi, VerifiesFixtureDirectory) {
  char* out = nullptr;
  EXPECT_EQ(kls_verify_dir(KLS_FIXTURES_DIR, R"({"format":"json"})", &out), KLS_OK) << (out ? out : "");
  json j = json::parse(out);
  EXPECT_TRUE(j["ok"]);
  kls_string_free(out);
  EXPECT_EQ(kls_verify_dir(nullptr, nullptr, &out), KLS_INPUT_ERROR);
}

TEST(CApi, Version) { EXPECT_STRNE(kls_version(), ""); }

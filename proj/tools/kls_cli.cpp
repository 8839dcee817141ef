// kls: command-line front end over the C API.
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kls/kls.h"

namespace {

using nlohmann::json;

struct Common {
  std::string path;
  std::string format = "text";
};

int emit(int status, char* out) {
  if (out) {
    std::fputs(out, stdout);
    kls_string_free(out);
  }
  if (status == KLS_INPUT_ERROR || (status != KLS_OK && !out)) std::fprintf(stderr, "kls: %s\n", kls_last_error());
  return status;
}

int run(const Common& c, const std::string& command, json options) {
  options["format"] = c.format;
  if (command == "verify" && std::filesystem::is_directory(c.path)) {
    char* out = nullptr;
    const int s = kls_verify_dir(c.path.c_str(), options.dump().c_str(), &out);
    return emit(s, out);
  }
  kls_doc* doc = nullptr;
  if (kls_doc_load_file(c.path.c_str(), &doc) != KLS_OK) {
    std::fprintf(stderr, "kls: %s\n", kls_last_error());
    return KLS_INPUT_ERROR;
  }
  char* out = nullptr;
  const int s = kls_run(doc, command.c_str(), options.dump().c_str(), &out);
  kls_doc_free(doc);
  return emit(s, out);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("path", c.path, "document (a directory for verify --suite all)")->required();
  sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig-Stanley invariants of posets, subdivisions, fans and lattice polytopes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kls_version()));

  Common c;
  std::vector<std::string> checks, interval;
  std::string kernel = "auto", what, suite = "all", group_path, relative_g;
  bool all = false;
  int order = -1;

  auto* check = app.add_subcommand("check", "validate a document");
  add_common(check, c);
  check->add_option("--check", checks, "ranked, lower-eulerian or eulerian (poset documents)");

  auto* kls = app.add_subcommand("kls", "f, g, Z, h or toric h");
  add_common(kls, c);
  kls->add_option("--kernel", kernel, "eulerian or file")->check(CLI::IsMember({"auto", "eulerian", "file"}));
  kls->add_option("--what", what, "f, g, z, h or toric-h")->check(CLI::IsMember({"f", "g", "z", "h", "toric-h"}));
  auto* iv = kls->add_option("--interval", interval, "two elements z z'")->expected(2);
  kls->add_flag("--all", all, "every interval")->excludes(iv);

  auto* local = app.add_subcommand("local", "local h, l and Delta l of a triple");
  add_common(local, c);
  local->add_option("--kernel", kernel, "eulerian or file")->check(CLI::IsMember({"auto", "eulerian", "file"}));
  local->add_option("--equivariant", group_path, "group document acting on the triple");
  local->add_option("--relative-g", relative_g, "face F of a face lattice: g(Q,F) two ways");

  auto* verify = app.add_subcommand("verify", "run verifiers");
  add_common(verify, c);
  verify->add_option("--suite", suite, "theorem-g, corollary-f, corollary-z, composition, products, equivariant, "
                                       "ehrhart-reciprocity or all")
      ->check(CLI::IsMember({"theorem-g", "corollary-f", "corollary-z", "composition", "products", "equivariant",
                             "ehrhart-reciprocity", "all"}));
  verify->add_option("--kernel", kernel, "eulerian or file")->check(CLI::IsMember({"auto", "eulerian", "file"}));
  verify->add_option("-M,--order", order, "truncation order for series checks")->check(CLI::NonNegativeNumber);

  auto* ehrhart = app.add_subcommand("ehrhart", "equivariant h*, l*, Ehrhart series and reciprocity");
  add_common(ehrhart, c);
  ehrhart->add_option("--what", what, "hstar, local-hstar, series or reciprocity")
      ->check(CLI::IsMember({"hstar", "local-hstar", "series", "reciprocity"}));
  ehrhart->add_option("-M,--order", order, "truncation order")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : KLS_INPUT_ERROR;
  }

  json o = json::object();
  if (order >= 0) o["M"] = order;
  if (!what.empty()) o["what"] = what;
  if (kernel != "auto") o["kernel"] = kernel;
  if (*check) {
    if (!checks.empty()) o["checks"] = checks;
    return run(c, "check", o);
  }
  if (*kls) {
    if (!interval.empty()) o["interval"] = interval;
    if (all) o["all"] = true;
    return run(c, "kls", o);
  }
  if (*local) {
    if (!group_path.empty()) o["equivariant"] = group_path;
    if (!relative_g.empty()) o["relative_g"] = relative_g;
    return run(c, "local", o);
  }
  if (*verify) {
    o["suite"] = suite;
    return run(c, "verify", o);
  }
  return run(c, "ehrhart", o);
}

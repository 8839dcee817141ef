#include "kls/kls.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "io/commands.hpp"

struct kls_doc {
  kls::io::Document doc;
  std::string schema;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int load(kls::io::Document (*reader)(const std::string&, const std::string&), const std::string& a, const std::string& b,
         kls_doc** out) {
  if (!out) {
    last_error = "null output pointer";
    return KLS_INPUT_ERROR;
  }
  *out = nullptr;
  try {
    auto* d = new kls_doc{reader(a, b), ""};
    d->schema = kls::io::schema_name(d->doc.schema);
    *out = d;
    last_error.clear();
    return KLS_OK;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KLS_INPUT_ERROR;
  }
}

// Parses options; returns false with last_error set on malformed JSON.
bool parse_options(const char* options, kls::io::json& out, bool& as_json) {
  out = kls::io::json::object();
  as_json = false;
  if (!options || !*options) return true;
  try {
    out = kls::io::json::parse(options);
  } catch (const std::exception& e) {
    last_error = std::string("malformed options: ") + e.what();
    return false;
  }
  if (!out.is_object()) {
    last_error = "options must be a JSON object";
    return false;
  }
  if (out.contains("format")) {
    const auto& f = out.at("format");
    if (f != "json" && f != "text") {
      last_error = "format is text or json";
      return false;
    }
    as_json = f == "json";
    out.erase("format");
  }
  return true;
}

int finish(const kls::io::Report& r, bool as_json, char** out) {
  *out = copy_out(kls::io::render(r, as_json));
  if (r.status != KLS_OK && r.data.contains("error")) last_error = r.data["error"].value("message", "");
  else if (r.status != KLS_OK) last_error = "verification failed";
  else last_error.clear();
  return r.status;
}

}  // namespace

extern "C" {

const char* kls_version(void) { return "1.0.0"; }

int kls_doc_load_file(const char* path, kls_doc** out) {
  if (!path) {
    last_error = "null path";
    if (out) *out = nullptr;
    return KLS_INPUT_ERROR;
  }
  return load([](const std::string& p, const std::string&) { return kls::io::load_document(p); }, path, "", out);
}

int kls_doc_load_string(const char* json, const char* name, kls_doc** out) {
  if (!json) {
    last_error = "null document";
    if (out) *out = nullptr;
    return KLS_INPUT_ERROR;
  }
  return load(kls::io::parse_document, json, name ? name : "document", out);
}

void kls_doc_free(kls_doc* doc) { delete doc; }

const char* kls_doc_schema(const kls_doc* doc) { return doc ? doc->schema.c_str() : ""; }

int kls_run(const kls_doc* doc, const char* command, const char* options, char** out) {
  if (!out) {
    last_error = "null output pointer";
    return KLS_INPUT_ERROR;
  }
  *out = nullptr;
  if (!doc || !command) {
    last_error = "null document or command";
    return KLS_INPUT_ERROR;
  }
  kls::io::json opts;
  bool as_json = false;
  if (!parse_options(options, opts, as_json)) return KLS_INPUT_ERROR;
  return finish(kls::io::run_command(command, doc->doc, opts), as_json, out);
}

int kls_verify_dir(const char* dir, const char* options, char** out) {
  if (!out) {
    last_error = "null output pointer";
    return KLS_INPUT_ERROR;
  }
  *out = nullptr;
  if (!dir) {
    last_error = "null directory";
    return KLS_INPUT_ERROR;
  }
  kls::io::json opts;
  bool as_json = false;
  if (!parse_options(options, opts, as_json)) return KLS_INPUT_ERROR;
  return finish(kls::io::verify_directory(dir, opts), as_json, out);
}

void kls_string_free(char* s) { std::free(s); }

const char* kls_last_error(void) { return last_error.c_str(); }

}  // extern "C"

/* C interface to the KLS library. All strings are UTF-8; returned strings are released with kls_string_free. */
#ifndef KLS_KLS_H
#define KLS_KLS_H

#if defined(KLS_BUILDING) && defined(__GNUC__)
#define KLS_API __attribute__((visibility("default")))
#else
#define KLS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; also the CLI exit codes. */
#define KLS_OK 0
#define KLS_FAILED 1      /* a verifier or validator failed, or the computation was refused */
#define KLS_INPUT_ERROR 2 /* malformed document or options */

typedef struct kls_doc kls_doc;

KLS_API const char* kls_version(void);

/* Loads a JSON document ("v": 1). On failure *out is NULL and kls_last_error() explains. */
KLS_API int kls_doc_load_file(const char* path, kls_doc** out);
KLS_API int kls_doc_load_string(const char* json, const char* name, kls_doc** out);
KLS_API void kls_doc_free(kls_doc* doc);
/* "poset", "sfs", "triple", "fan", "complex" or "group"; owned by the document. */
KLS_API const char* kls_doc_schema(const kls_doc* doc);

/*
 * Runs one subcommand: "check", "kls", "local", "verify" or "ehrhart".
 * options is a JSON object (NULL for none), e.g. {"what":"z","interval":["0","top"],"format":"json"}.
 * "format" is "text" (default) or "json". *out receives the report, also on KLS_FAILED.
 */
KLS_API int kls_run(const kls_doc* doc, const char* command, const char* options, char** out);

/* Runs the expectations of every *.json document in a directory. */
KLS_API int kls_verify_dir(const char* dir, const char* options, char** out);

KLS_API void kls_string_free(char* s);

/* Message for the last failing call on this thread, or "" */
KLS_API const char* kls_last_error(void);

#ifdef __cplusplus
}
#endif

#endif

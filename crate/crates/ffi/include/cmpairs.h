#ifndef CMPAIRS_H
#define CMPAIRS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum CmpStatus {
  CMP_STATUS_OK = 0,
  // A required pointer argument was null.
  CMP_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  CMP_STATUS_INVALID_UTF8 = 2,
  // The source did not parse or elaborate; the message has `line:column`.
  CMP_STATUS_PARSE = 3,
  // No pair or module of the given name.
  CMP_STATUS_NOT_FOUND = 4,
  // The computation failed or its hypotheses were not met.
  CMP_STATUS_COMPUTATION = 5,
  // A file could not be read.
  CMP_STATUS_IO = 6,
  // A bug: the library panicked. The handle stays valid.
  CMP_STATUS_INTERNAL = 7,
} CmpStatus;

// Kind of an extended natural number.
typedef enum CmpExtKind {
  CMP_EXT_KIND_FINITE = 0,
  // Certified infinite.
  CMP_EXT_KIND_INFINITE = 1,
  // Nonzero at `value`, undecided above it.
  CMP_EXT_KIND_AT_LEAST = 2,
  // The zero module.
  CMP_EXT_KIND_NEG_INFINITE = 3,
} CmpExtKind;

// Opaque handle to a loaded document.
typedef struct CmpDocument CmpDocument;

// `value` is meaningful for `Finite` and `AtLeast`.
typedef struct CmpExtNat {
  enum CmpExtKind kind;
  uint64_t value;
} CmpExtNat;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and elaborates `.cm` source text.
//
// # Safety
// `source` is a NUL-terminated string; `out_doc` points to writable storage.
enum CmpStatus cmp_document_load(const char *source, struct CmpDocument **out_doc);

// Reads, parses and elaborates a `.cm` file.
//
// # Safety
// `path` is a NUL-terminated string; `out_doc` points to writable storage.
enum CmpStatus cmp_document_load_file(const char *path, struct CmpDocument **out_doc);

// Releases a document. Null is ignored.
//
// # Safety
// `doc` is null or a handle not yet freed.
void cmp_document_free(struct CmpDocument *doc);

// `depth_I(M, N)` of the named pair.
//
// # Safety
// `doc` is a live handle, `pair_name` a NUL-terminated string, `out_value`
// writable.
enum CmpStatus cmp_pair_depth(const struct CmpDocument *doc,
                              const char *pair_name,
                              struct CmpExtNat *out_value);

// `cd_I(M, N)` of the named pair with the default caps.
//
// # Safety
// As for [`cmp_pair_depth`].
enum CmpStatus cmp_pair_cd(const struct CmpDocument *doc,
                           const char *pair_name,
                           struct CmpExtNat *out_value);

// The Cohen-Macaulay verdict line, e.g. `No: depth=0, cd=Infinite(period 2)`.
//
// # Safety
// `doc` is a live handle, `pair_name` a NUL-terminated string, `out_text`
// writable. Free the result with [`cmp_string_free`].
enum CmpStatus cmp_pair_verdict(const struct CmpDocument *doc,
                                const char *pair_name,
                                char **out_text);

// The full invariant report of the pair as JSON. `ext_cap` of 0 keeps the
// default Ext cap.
//
// # Safety
// As for [`cmp_pair_verdict`].
enum CmpStatus cmp_pair_report_json(const struct CmpDocument *doc,
                                    const char *pair_name,
                                    uint32_t ext_cap,
                                    char **out_json);

// Whether the named module (or ring) is semidualizing for Ext indices up
// to `cap`: writes 1 or 0.
//
// # Safety
// `doc` is a live handle, `module_name` a NUL-terminated string,
// `out_flag` writable.
enum CmpStatus cmp_module_is_semidualizing(const struct CmpDocument *doc,
                                           const char *module_name,
                                           uint32_t cap,
                                           int32_t *out_flag);

// Runs the property suite over a `.cm` file or directory and returns the
// JSON report. `out_passed` receives 1 when nothing failed.
//
// # Safety
// `path` is a NUL-terminated string; `out_json` and `out_passed` writable.
enum CmpStatus cmp_verify(const char *path, char **out_json, int32_t *out_passed);

// Number of pairs in the document.
//
// # Safety
// `doc` is null or a live handle.
size_t cmp_document_pair_count(const struct CmpDocument *doc);

// Name of the pair at `index`, or null when out of range. Free with
// [`cmp_string_free`].
//
// # Safety
// `doc` is null or a live handle.
char *cmp_document_pair_name(const struct CmpDocument *doc, size_t index);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string from this library not yet freed.
void cmp_string_free(char *s);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *cmp_last_error(void);

// The library version, a static string.
const char *cmp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CMPAIRS_H */

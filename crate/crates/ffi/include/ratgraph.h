#ifndef RATGRAPH_H
#define RATGRAPH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RgStatus {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_UTF8 = 2,
  RG_STATUS_INPUT = 3,
  RG_STATUS_CLASS = 4,
  RG_STATUS_PRECONDITION = 5,
  RG_STATUS_FRESH_SYMBOL = 6,
  RG_STATUS_LIMIT = 7,
  // The operation exists but produces nothing this interface returns.
  RG_STATUS_UNSUPPORTED = 8,
  RG_STATUS_PANIC = 9,
} RgStatus;

// A loaded automaton, graph, tiling system or cellular automaton.
typedef struct RgFormalism RgFormalism;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a
// successful call. Valid until the next call on the same thread.
const char *rg_last_error(void);

// Loads a JSON file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum RgStatus rg_load(const char *path, struct RgFormalism **out);

// Parses JSON text. Relation paths inside it resolve against the
// current directory.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum RgStatus rg_parse(const char *json, struct RgFormalism **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must come from this library and not be used afterwards.
void rg_free(struct RgFormalism *h);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void rg_string_free(char *s);

// The kind of a handle: `nfa`, `transducer`, `graph`, `tiling` or `ca`.
// The string is static.
//
// # Safety
// `h` must be a live handle or null.
const char *rg_kind(const struct RgFormalism *h);

// Exact membership. Words use one character per letter, `{name}` for
// longer letters.
//
// # Safety
// `h` must be a live handle, `word` a NUL-terminated string and `out`
// writable.
enum RgStatus rg_member(const struct RgFormalism *h, const char *word, bool *out);

// Accepted words up to `max_len`, shortlex, one per line. The empty
// word is written as an empty line.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum RgStatus rg_enumerate(const struct RgFormalism *h, size_t max_len, char **out);

// Runs a conversion by its command-line name (`ts2synch`, `ca2graph`,
// ...) with default options. Checks that produce no object return
// `Unsupported`; use [`rg_check_global_det`] for that one.
//
// # Safety
// `name` must be a NUL-terminated string, `h` a live handle and `out`
// writable.
enum RgStatus rg_convert(const char *name, const struct RgFormalism *h, struct RgFormalism **out);

// Global determinism of a graph with initial and final sets.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum RgStatus rg_check_global_det(const struct RgFormalism *h, bool *out);

// The JSON form of a handle.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum RgStatus rg_to_json(const struct RgFormalism *h, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATGRAPH_H */

#ifndef DELTAGROUP_H
#define DELTAGROUP_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Census output format for [`dg_census_report`].
 */
typedef enum DgFormat {
  DG_FORMAT_TEXT = 0,
  DG_FORMAT_STRUCTURED = 1,
} DgFormat;

/**
 * Result code of every fallible call.
 */
typedef enum DgStatus {
  DG_STATUS_OK = 0,
  DG_STATUS_NULL_POINTER = 1,
  DG_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed catalog text, cycle notation or group spec.
   */
  DG_STATUS_PARSE = 3,
  /**
   * Well-formed input describing an impossible group.
   */
  DG_STATUS_INVALID_INPUT = 4,
  /**
   * The closure cap was exceeded.
   */
  DG_STATUS_CAP_EXCEEDED = 5,
  DG_STATUS_IO = 6,
  DG_STATUS_OUT_OF_RANGE = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  DG_STATUS_INTERNAL = 8,
} DgStatus;

/**
 * A parsed small-group catalog.
 */
typedef struct DgCatalog DgCatalog;

/**
 * The result of a Δ census.
 */
typedef struct DgCensus DgCensus;

/**
 * A finite permutation group.
 */
typedef struct DgGroup DgGroup;

/**
 * Per-group invariants, mirroring `deltagroup::invariants::DeltaReport`.
 */
typedef struct DgDeltaReport {
  uint64_t group_order;
  uint64_t cyclic_count;
  uint64_t delta;
  uint64_t i2;
  bool bound_ok;
  bool equality_case;
} DgDeltaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread, or NULL if none.
 * Release with [`dg_string_free`].
 */
char *dg_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void dg_string_free(char *s);

/**
 * Builds a group from a constructor expression such as `"C2xD8"` or
 * `"C3:C4@2"`.
 */
enum DgStatus dg_group_build(const char *spec, struct DgGroup **out);

/**
 * Closes generators given in cycle notation, separated by `;`, e.g.
 * `"(1,2,3,4) ; (1,3)"`. The degree is the largest point mentioned.
 */
enum DgStatus dg_group_from_generators(const char *gens, struct DgGroup **out);

void dg_group_free(struct DgGroup *g);

/**
 * Number of elements; 0 for NULL.
 */
size_t dg_group_order(const struct DgGroup *g);

enum DgStatus dg_group_delta_report(const struct DgGroup *g, struct DgDeltaReport *out);

enum DgStatus dg_group_is_isomorphic(const struct DgGroup *a, const struct DgGroup *b, bool *out);

/**
 * Parses catalog text.
 */
enum DgStatus dg_catalog_parse(const char *text, struct DgCatalog **out);

/**
 * Reads and parses a catalog file.
 */
enum DgStatus dg_catalog_read(const char *path, struct DgCatalog **out);

/**
 * The bundled catalog of all groups of order at most 40.
 */
enum DgStatus dg_catalog_bundled(struct DgCatalog **out);

void dg_catalog_free(struct DgCatalog *c);

/**
 * Number of entries; 0 for NULL.
 */
size_t dg_catalog_len(const struct DgCatalog *c);

/**
 * Runs catalog validation and stores the number of diagnostics. The
 * diagnostics themselves are joined into the last-error message when
 * there are any.
 */
enum DgStatus dg_catalog_validate(const struct DgCatalog *c, size_t *diagnostics);

enum DgStatus dg_census_run(const struct DgCatalog *c, uint64_t delta_max, struct DgCensus **out);

void dg_census_free(struct DgCensus *c);

/**
 * Number of groups with `Δ = delta`; 0 for NULL or δ out of range.
 */
size_t dg_census_bucket_len(const struct DgCensus *c, uint64_t delta);

/**
 * Id of the `i`-th group (0-based) with `Δ = delta`.
 */
enum DgStatus dg_census_bucket_id(const struct DgCensus *c,
                                  uint64_t delta,
                                  size_t i,
                                  size_t *order,
                                  size_t *index);

/**
 * Whether the catalog covers every order up to `8·delta`.
 */
bool dg_census_is_complete(const struct DgCensus *c, uint64_t delta);

/**
 * Number of bound violations among the bucketed groups.
 */
enum DgStatus dg_census_violations(const struct DgCensus *c, size_t *out);

/**
 * Renders the census. Release the string with [`dg_string_free`].
 */
enum DgStatus dg_census_report(const struct DgCensus *c, enum DgFormat format, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELTAGROUP_H */

#ifndef MLAB_H
#define MLAB_H

/* C interface to the Schur multiplier library. All objects are opaque and
 * released with their *_free function. Strings returned through char** are
 * heap-allocated and released with mlab_string_free. On failure a function
 * returns a nonzero status and mlab_last_error() describes it (per thread). */

#include <stddef.h>

#if defined(MLAB_BUILDING_LIBRARY)
#define MLAB_API __attribute__((visibility("default")))
#else
#define MLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlab_status {
  MLAB_OK = 0,
  MLAB_E_PARSE = 1,
  MLAB_E_CONSISTENCY = 2,
  MLAB_E_PRECONDITION = 3,
  MLAB_E_SIZE_CAP = 4,
  MLAB_E_NOT_APPLICABLE = 5,
  MLAB_E_LEDGER = 6,
  MLAB_E_ASSERTION = 7,
  MLAB_E_INTERNAL = 8,
  MLAB_E_IO = 9,
  MLAB_E_INVALID_ARGUMENT = 10
} mlab_status;

typedef struct mlab_catalog mlab_catalog;
typedef struct mlab_group mlab_group;
typedef struct mlab_result mlab_result;
typedef struct mlab_reports mlab_reports;
typedef struct mlab_replay mlab_replay;

MLAB_API const char* mlab_last_error(void);
MLAB_API const char* mlab_status_name(mlab_status s);
MLAB_API void mlab_string_free(char* s);

/* dir == NULL opens the installed catalog */
MLAB_API mlab_status mlab_catalog_open(const char* dir, mlab_catalog** out);
MLAB_API void mlab_catalog_free(mlab_catalog* c);
/* newline-separated entry IDs */
MLAB_API mlab_status mlab_catalog_ids(const mlab_catalog* c, char** out);

MLAB_API mlab_status mlab_group_from_dsl(const char* text, unsigned p, mlab_group** out);
MLAB_API mlab_status mlab_group_from_catalog(const mlab_catalog* c, const char* id, unsigned p,
                                             mlab_group** out);
MLAB_API void mlab_group_free(mlab_group* g);
MLAB_API mlab_status mlab_group_order_exponent(const mlab_group* g, int* out);
/* consistency and structure summary as text */
MLAB_API mlab_status mlab_group_check(const mlab_group* g, char** out);

/* method: "auto", "oracle", "be", "kunneth", "tails"; NULL means auto.
 * Catalog groups keep their product recipe, so kunneth applies to them. */
MLAB_API mlab_status mlab_compute(const mlab_group* g, const char* method, mlab_result** out);
MLAB_API void mlab_result_free(mlab_result* r);
MLAB_API mlab_status mlab_result_multiplier(const mlab_result* r, char** out);
/* exponents e_i of the invariants p^{e_i}; *count receives the full count */
MLAB_API mlab_status mlab_result_exponents(const mlab_result* r, int* exps, size_t cap,
                                           size_t* count);
MLAB_API mlab_status mlab_result_method(const mlab_result* r, char** out);
MLAB_API mlab_status mlab_result_trace(const mlab_result* r, char** out);
MLAB_API mlab_status mlab_result_t(const mlab_result* r, int* out);

/* threads == 0 picks the hardware concurrency */
MLAB_API mlab_status mlab_verify_theorem(const mlab_catalog* c, unsigned p, const char* part,
                                         unsigned threads, mlab_reports** out);
MLAB_API mlab_status mlab_table24(const mlab_catalog* c, unsigned p, unsigned threads,
                                  mlab_reports** out);
MLAB_API mlab_status mlab_check_entry(const mlab_catalog* c, const char* id, unsigned p,
                                      const char* method, mlab_reports** out);
MLAB_API void mlab_reports_free(mlab_reports* r);
/* format: "table" or "jsonl" */
MLAB_API mlab_status mlab_reports_emit(const mlab_reports* r, const char* format, char** out);
MLAB_API mlab_status mlab_reports_count(const mlab_reports* r, size_t* total, size_t* failed);

/* p == 0 keeps the prime named by the script */
MLAB_API mlab_status mlab_replay_script(const mlab_catalog* c, const char* script, unsigned p,
                                 mlab_replay** out);
MLAB_API void mlab_replay_free(mlab_replay* r);
MLAB_API int mlab_replay_passed(const mlab_replay* r);
/* 0 when no line failed */
MLAB_API size_t mlab_replay_failed_line(const mlab_replay* r);
MLAB_API size_t mlab_replay_assumed_count(const mlab_replay* r);
MLAB_API mlab_status mlab_replay_trace(const mlab_replay* r, char** out);
MLAB_API mlab_status mlab_replay_failure(const mlab_replay* r, char** out);

#ifdef __cplusplus
}
#endif

#endif

#ifndef TAMECOUNT_H
#define TAMECOUNT_H

/* C interface to the tamecount library.  An engine holds a configuration,
 * built up from key = value text, and the rendered report of the last run.
 * All strings returned by the engine are owned by it and stay valid until
 * the next tc_run on the same engine or tc_engine_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tc_engine tc_engine;

typedef enum tc_status {
  TC_OK = 0,
  TC_EINVAL = 1,       /* bad configuration or argument */
  TC_EUNSUPPORTED = 2, /* operation not available for this configuration */
  TC_EOVERFLOW = 3,    /* exact arithmetic left the 64-bit range */
  TC_EDIVERGENT = 4,   /* series evaluated at or below its abscissa */
  TC_EINTERNAL = 5     /* broken invariant inside the library */
} tc_status;

/* fresh engine with default configuration; NULL on allocation failure */
tc_engine* tc_engine_new(void);

void tc_engine_free(tc_engine* engine);

/* applies key = value lines to the configuration, later lines winning;
 * may be called repeatedly before tc_run */
tc_status tc_configure(tc_engine* engine, const char* key_value_text);

/* runs one command (orbits, enumerate, count, predict, verify, verdict,
 * stickelberger, check-bounds) and stores the rendered report */
tc_status tc_run(tc_engine* engine, const char* command);

/* report text of the last successful tc_run; empty string before that */
const char* tc_report(const tc_engine* engine);

/* message of the last failing call; empty string when none */
const char* tc_last_error(const tc_engine* engine);

#ifdef __cplusplus
}
#endif

#endif /* TAMECOUNT_H */

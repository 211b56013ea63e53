/* C interface to the group-testing / junta-testing laboratory.
 *
 * Requests and results are JSON documents; the handle carries the last
 * error message. Returned strings are owned by the library and must be
 * released with juntalab_free.
 */
#ifndef JUNTALAB_H
#define JUNTALAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  JUNTALAB_OK = 0,
  JUNTALAB_ERR_CHECK_FAILED = 1, /* an acceptance check ran and failed */
  JUNTALAB_ERR_CONFIG = 2,       /* malformed request or parameters */
  JUNTALAB_ERR_INTERNAL = 3
} juntalab_status;

typedef struct juntalab_lab juntalab_lab; /* opaque */

juntalab_lab* juntalab_create(void);
void juntalab_destroy(juntalab_lab* lab);

/* Runs one experiment. request_json: {"command": "...", "params": {...},
 * "seed": N}. On JUNTALAB_OK or JUNTALAB_ERR_CHECK_FAILED, *result_json
 * receives the response document (including a "timestamp" field; everything
 * else is deterministic for a fixed request). */
juntalab_status juntalab_run(juntalab_lab* lab, const char* request_json,
                             char** result_json);

/* Message for the most recent failure on this handle; empty if none. */
const char* juntalab_last_error(const juntalab_lab* lab);

void juntalab_free(char* text);
const char* juntalab_version(void);

#ifdef __cplusplus
}
#endif

#endif /* JUNTALAB_H */

/*
 * acscan — access-control vulnerability scanner for Solidity repositories.
 *
 * C interface over the analysis core. All functions are thread-compatible:
 * distinct handles may be used from distinct threads; a single handle must
 * not be shared without external synchronization. Strings returned through
 * out-parameters are heap-allocated and released with acscan_string_free().
 */
#ifndef ACSCAN_H
#define ACSCAN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acscan_status {
    ACSCAN_OK = 0,
    ACSCAN_ERROR_INVALID_ARGUMENT = 1,
    ACSCAN_ERROR_CONFIG = 2,
    ACSCAN_ERROR_IO = 3,
    ACSCAN_ERROR_INTERNAL = 4
} acscan_status;

typedef struct acscan_options acscan_options;
typedef struct acscan_report acscan_report;

/* ------------------------------------------------------------------ */
/* options                                                              */
/* ------------------------------------------------------------------ */

acscan_options *acscan_options_new(void);
void acscan_options_free(acscan_options *options);

/*
 * Recognized keys (values are strings):
 *   mode                 repo | single
 *   exclude-dirs         comma-separated directory names (replaces defaults)
 *   max-call-depth       positive integer
 *   time-limit           duration: "30m", "90s", "250ms"
 *   reflection-max-iters positive integer
 *   llm                  off | live | record:FILE | replay:FILE
 *   llm-endpoint         chat-completions URL (or ACSCAN_LLM_ENDPOINT)
 *   llm-api-key          credential (or ACSCAN_LLM_API_KEY)
 *   llm-model            model name
 *   heuristic            auto | on | off
 *   solc-dir             directory of versioned solc binaries (or ACSCAN_SOLC_DIR)
 *   jobs                 worker count, 0 = processors
 *   internal-reachable   true | false
 *   transfer-names       comma-separated member names promoted to transfers
 *   dump-cfg-dir         directory for per-function CFG dumps (DOT)
 */
acscan_status acscan_options_set(acscan_options *options, const char *key, const char *value);

/* ------------------------------------------------------------------ */
/* scanning                                                             */
/* ------------------------------------------------------------------ */

/*
 * Run the pipeline over a repository root (or a single .sol file in single
 * mode). On success *out_report owns the result, including partial failures;
 * a configuration or root error yields ACSCAN_ERROR_CONFIG with detail in
 * acscan_last_error().
 */
acscan_status acscan_run(const acscan_options *options, const char *root,
                         acscan_report **out_report);

void acscan_report_free(acscan_report *report);

size_t acscan_report_finding_count(const acscan_report *report);
size_t acscan_report_failure_count(const acscan_report *report);

/* Process exit convention: 0 no findings, 1 findings present, 2 error. */
int acscan_report_exit_code(const acscan_report *report);

/* format: "json" (canonical), "sarif" (2.1.0), "text". */
acscan_status acscan_report_render(const acscan_report *report, const char *format,
                                   char **out_text);

void acscan_string_free(char *text);

/* ------------------------------------------------------------------ */
/* misc                                                                 */
/* ------------------------------------------------------------------ */

const char *acscan_version(void);
const char *acscan_status_name(acscan_status status);

/* Detail for the most recent failing call on this thread. */
const char *acscan_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* ACSCAN_H */

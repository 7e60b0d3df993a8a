/*
 * relpub — release publishing toolkit
 *
 * C API of the shared library. One relpub_session carries the
 * configuration for a run; the relpub_cmd_* functions execute the same
 * jobs the `relpub` command line exposes and hand back a rendered report
 * (text or JSON, chosen with the "format" key).
 *
 * Status values mirror the CLI exit codes:
 *   0 success, 1 validation findings, 2 I/O or configuration,
 *   3 remote transport/authentication, 4 remote-state conflict.
 *
 * Configuration keys (relpub_set):
 *   config, working-dir, metadata, contributors, assets, output-dir,
 *   changelog, tag, created-date, issued-date, doi, previous-doi,
 *   concept-doi, release-page-url, gitlab.url, gitlab.project,
 *   gitlab.package, gitlab.token, archive.url, archive.token,
 *   bag.source-organization, bag.contact-email, bag.external-identifier,
 *   bag.bagging-date, bag.algorithms, bag.dest, bag.tar, bag.root,
 *   bag.profile, sync.site-root, sync.repo-root, sync.pipeline, format,
 *   dry-run, skip, state-file, lock-file, http.retry-delay-ms,
 *   http.max-attempts, http.poll-interval-ms
 *
 * Unset values fall back to the RELPUB_* environment (tokens), a
 * relpub.yml in the working directory, and finally to CI-provided
 * defaults (CI_API_V4_URL, CI_PROJECT_ID, CI_COMMIT_TAG).
 */

#ifndef RELPUB_H
#define RELPUB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum relpub_status {
  RELPUB_OK = 0,
  RELPUB_ERR_VALIDATION = 1,
  RELPUB_ERR_IO = 2,
  RELPUB_ERR_REMOTE = 3,
  RELPUB_ERR_CONFLICT = 4
} relpub_status;

typedef struct relpub_session relpub_session;

const char* relpub_version(void);

relpub_session* relpub_session_new(void);
void relpub_session_free(relpub_session* session);

/* Sets one configuration value. Returns RELPUB_ERR_IO for unknown keys. */
relpub_status relpub_set(relpub_session* session, const char* key, const char* value);

/* Message of the most recent failure on this session; "" when the last
 * call succeeded. The pointer stays valid until the next call. */
const char* relpub_last_error(const relpub_session* session);

/* Each command renders a report into *output (free with
 * relpub_string_free). The report is produced for failures too. */
relpub_status relpub_cmd_validate(relpub_session* session, char** output);
relpub_status relpub_cmd_datacite(relpub_session* session, char** output);
relpub_status relpub_cmd_bag(relpub_session* session, char** output);
relpub_status relpub_cmd_bag_validate(relpub_session* session, char** output);
relpub_status relpub_cmd_deposit(relpub_session* session, char** output);
relpub_status relpub_cmd_sync(relpub_session* session, char** output);
relpub_status relpub_cmd_release(relpub_session* session, char** output);

void relpub_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* RELPUB_H */

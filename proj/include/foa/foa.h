/*
 * C interface to the fleet-of-agents runtime.
 *
 * All functions return a foa_status; non-OK statuses leave a thread-local
 * message readable via foa_last_error(). Objects are opaque handles owned
 * by the caller and released with their _free function. Strings returned
 * through char** out-parameters are heap-allocated and must be released
 * with foa_string_free().
 */
#ifndef FOA_FOA_H
#define FOA_FOA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum foa_status {
  FOA_OK = 0,
  FOA_ERR_INVALID_ARGUMENT = 1,
  FOA_ERR_CONFIG = 2,
  FOA_ERR_IO = 3,
  FOA_ERR_BACKEND = 4,
  FOA_ERR_RUNTIME = 5
} foa_status;

typedef struct foa_config foa_config;

const char* foa_version(void);

/* Thread-local message for the most recent failing call in this thread. */
const char* foa_last_error(void);

void foa_string_free(char* s);

/* --- configuration ----------------------------------------------------- */

/* Loads a JSON config file (profile + overrides). */
foa_status foa_config_load(const char* path, foa_config** out);

/* Parses a JSON config document from a string. */
foa_status foa_config_from_json(const char* json_text, foa_config** out);

/* Sets one field by dotted path, e.g. ("scheme.kind", "greedy"). */
foa_status foa_config_override(foa_config* config, const char* dotted_key, const char* value);

/* Applies ablation switches, comma-separated: no_selection, max_resampling,
 * gamma_zero, gamma_one, no_cache, no_batching. */
foa_status foa_config_apply_ablations(foa_config* config, const char* flags_csv);

/* Serializes the resolved configuration; caller frees. */
foa_status foa_config_to_json(const foa_config* config, char** json_out);

void foa_config_free(foa_config* config);

/* --- runs ---------------------------------------------------------------- */

/* Executes one run. `puzzle` is the instance spec for the configured task
 * (e.g. "4 4 6 8"); pass NULL to use `puzzle_file` with `puzzle_index`.
 * When trace_path is non-NULL the JSONL trace is written there. The result
 * summary (solved, metric, steps, cost, trace hash, ...) is returned as a
 * JSON string. */
foa_status foa_run(const foa_config* config, const char* puzzle, const char* puzzle_file,
                   int puzzle_index, const char* trace_path, char** result_json_out);

/* Executes repetitions x |puzzle file| seeded runs, writing one trace per
 * run plus summary.json under out_dir. `jobs` > 1 runs in parallel. */
foa_status foa_experiment(const foa_config* config, const char* puzzle_file, int repetitions,
                          const char* out_dir, int jobs, char** summary_json_out);

/* Runs the ablation suite: the baseline plus each flag in flags_csv (NULL
 * for the full built-in set), each as its own experiment under out_dir. */
foa_status foa_ablate(const foa_config* config, const char* puzzle_file, int repetitions,
                      const char* flags_csv, const char* out_dir, int jobs,
                      char** report_json_out);

/* Re-executes the run recorded in a trace file and compares event-stream
 * hashes; *match_out is 1 on a byte-identical reproduction. */
foa_status foa_replay(const char* trace_path, int* match_out, char** report_json_out);

/* Flattens summary.json files under the given path into CSV rows. */
foa_status foa_report_csv(const char* summary_path, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* FOA_FOA_H */

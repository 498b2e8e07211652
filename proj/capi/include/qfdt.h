/* SPDX-License-Identifier: Apache-2.0
 *
 * C API for the quantum-fidelity decision tree toolkit. The library is a
 * shared object; every entry point is exported with C linkage and works on
 * opaque handles plus JSON strings, so any FFI can drive it.
 *
 * Conventions:
 *   - functions return qfdt_status; QFDT_OK (0) means success
 *   - on failure, qfdt_last_error() describes the problem (thread-local)
 *   - every char** output receives a NUL-terminated heap string that the
 *     caller releases with qfdt_string_free()
 *   - handles are released with the matching *_close() function
 *
 * The config JSON accepted by train/evaluate/predict:
 *   {
 *     "criterion": "fidelity" | "qig" | "cig" | "gini",   (default fidelity)
 *     "mode": "joint" | "conditional",                    (default joint)
 *     "bins": 2,                                          (>= 2)
 *     "strategy": "equal_frequency" | "equal_width",
 *     "train_fraction": 0.9,      (train: optional; omitted = use all rows.
 *                                  evaluate: the held-out split to score)
 *     "seed": 42,
 *     "max_depth": 4,             (optional; omitted = unlimited)
 *     "positive_label": "died"    (optional; overrides the dataset default)
 *   }
 */
#ifndef QFDT_H
#define QFDT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfdt_status {
  QFDT_OK = 0,
  QFDT_ERR_CONFIG = 2,   /* bad arguments or config JSON */
  QFDT_ERR_DATA = 3,     /* file, parse, schema, or model-document problems */
  QFDT_ERR_NUMERIC = 4,  /* numerical invariant violations (non-PSD, ...) */
  QFDT_ERR_INTERNAL = 5
} qfdt_status;

typedef struct qfdt_dataset qfdt_dataset;
typedef struct qfdt_model qfdt_model;

const char* qfdt_version(void);

/* Message for the most recent failure on this thread; empty after success. */
const char* qfdt_last_error(void);

void qfdt_string_free(char* s);

/* ---- datasets ---------------------------------------------------------- */

/* options_json (all fields optional):
 *   {"name":"...", "delimiter":",", "header":"auto|yes|no",
 *    "missing":"drop|error", "label_column":-1, "drop_columns":[0],
 *    "allowed_labels":[...], "keep_labels":[...],
 *    "label_names":{"2":"benign"}, "positive_label":"..."}
 * "delimiter":"ws" splits on whitespace runs. Pass NULL for defaults. */
qfdt_status qfdt_dataset_open_csv(const char* path, const char* options_json,
                                  qfdt_dataset** out);

/* name: "haberman", "wisconsin", or "seeds". data_dir may be NULL to search
 * $QFDT_DATA_DIR and ./data for the canonical file. */
qfdt_status qfdt_dataset_open_builtin(const char* name, const char* data_dir,
                                      qfdt_dataset** out);

/* Row/column counts, schema, label counts (pre- and post-cleaning), and
 * provenance, as a JSON object. */
qfdt_status qfdt_dataset_info(const qfdt_dataset* d, char** json_out);

void qfdt_dataset_close(qfdt_dataset* d);

/* ---- training and models ----------------------------------------------- */

/* Grow a tree on the dataset per the config. When "train_fraction" is
 * present only the seeded training partition is used (bin edges included),
 * which makes train + evaluate reproduce a benchmark cell exactly.
 * summary_json_out (optional, may be NULL) receives the per-feature scores
 * of the root split, the chosen root feature, and tree shape statistics. */
qfdt_status qfdt_train(const qfdt_dataset* d, const char* config_json,
                       qfdt_model** out, char** summary_json_out);

qfdt_status qfdt_model_save(const qfdt_model* m, const char* path);
qfdt_status qfdt_model_open(const char* path, qfdt_model** out);
qfdt_status qfdt_model_to_json(const qfdt_model* m, char** json_out);

/* Indented ASCII tree, one branch per line. */
qfdt_status qfdt_model_render(const qfdt_model* m, char** text_out);

/* row_json: either a positional array ("[1,0,1]") or an object keyed by
 * feature name ("{"X1":1,"X3":0}"); features a path never touches may be
 * omitted. context + config_json (both optional) re-derive the training
 * discretization so raw continuous values can be classified; without them
 * the row is matched against branch values as-is. */
qfdt_status qfdt_model_predict(const qfdt_model* m, const qfdt_dataset* context,
                               const char* config_json, const char* row_json,
                               char** label_out);

void qfdt_model_close(qfdt_model* m);

/* ---- evaluation and benchmarking --------------------------------------- */

/* Score a trained model on the held-out partition of the dataset defined by
 * the config's train_fraction/seed/bins. Returns a JSON array holding one
 * report object (full-precision metrics; see qfdt_report_format). */
qfdt_status qfdt_evaluate(const qfdt_model* m, const qfdt_dataset* d,
                          const char* config_json, char** report_json_out);

/* Render a JSON report array as "json", "csv", or "markdown". */
qfdt_status qfdt_report_format(const char* reports_json, const char* format,
                               char** document_out);

/* config_json:
 *   {"datasets":["haberman","wisconsin","seeds"] or ["all"],
 *    "criteria":["fidelity","qig","cig","gini"] or ["all"],
 *    "train_fraction":0.9, "seed":42, "bins":2, "mode":"joint",
 *    "strategy":"equal_frequency", "format":"csv", "data_dir":"..."}
 * Runs every dataset x criterion cell and returns the rendered document.
 * Deterministic: identical config, identical bytes. */
qfdt_status qfdt_benchmark(const char* config_json, char** document_out);

#ifdef __cplusplus
}
#endif

#endif /* QFDT_H */

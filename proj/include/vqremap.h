/*
 * vqremap — variational quantum classifier training with weight re-mapping.
 *
 * C interface of the shared library. All state lives behind the opaque
 * vqr_config handle; every entry point returns a vqr_status and leaves a
 * human-readable message in vqr_last_error() on failure.
 */
#ifndef VQREMAP_H
#define VQREMAP_H

#include <stddef.h>

#if defined(_WIN32)
#define VQREMAP_API __declspec(dllexport)
#else
#define VQREMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vqr_status {
    VQR_OK = 0,
    VQR_ERR_CONFIG = 1,   /* invalid or out-of-range configuration */
    VQR_ERR_USAGE = 2,    /* unknown key/name or malformed value */
    VQR_ERR_INGEST = 3,   /* dataset file failed validation */
    VQR_ERR_NUMERIC = 4,  /* non-finite or degenerate numeric input */
    VQR_ERR_INDEX = 5,    /* qubit/class index out of range */
    VQR_ERR_IO = 6,       /* filesystem failure */
    VQR_ERR_INTERNAL = 7
} vqr_status;

/* Opaque run/sweep/report configuration. */
typedef struct vqr_config vqr_config;

VQREMAP_API const char* vqr_version(void);

/* Name of a status code, e.g. "VQR_ERR_USAGE". */
VQREMAP_API const char* vqr_status_name(vqr_status status);

/* Thread-local message describing the most recent failure ("" if none). */
VQREMAP_API const char* vqr_last_error(void);

VQREMAP_API vqr_status vqr_config_create(vqr_config** out_config);
VQREMAP_API void vqr_config_destroy(vqr_config* config);

/*
 * Flat key/value configuration; values are validated as they are set.
 * Keys: dataset, datasets, embedding, embeddings, remap, remaps, reupload,
 * model, layers, lr, batch_size, epochs, seed, seeds, data_dir, out,
 * results, workers, k, anchor.
 */
VQREMAP_API vqr_status vqr_config_set(vqr_config* config, const char* key, const char* value);

/* Loads key=value lines ('#' comments allowed); later vqr_config_set calls win. */
VQREMAP_API vqr_status vqr_config_load_file(vqr_config* config, const char* path);

/* Copies the current value of a scalar key into buf (NUL-terminated). */
VQREMAP_API vqr_status vqr_config_get(const vqr_config* config, const char* key, char* buf,
                                      size_t buf_size);

/* One training run: JSONL epoch records, meta, checkpoint, summary row. */
VQREMAP_API vqr_status vqr_run(const vqr_config* config);

/* Full (datasets x embeddings x remaps x seeds) grid with resume-skip. */
VQREMAP_API vqr_status vqr_sweep(const vqr_config* config);

/* Convergence-difference and test-accuracy tables from completed runs. */
VQREMAP_API vqr_status vqr_report(const vqr_config* config);

/* One-way ANOVA of test accuracies across approaches. */
VQREMAP_API vqr_status vqr_anova(const vqr_config* config);

/* Learning-curve SVGs per (dataset, embedding). */
VQREMAP_API vqr_status vqr_plot(const vqr_config* config);

#ifdef __cplusplus
}
#endif

#endif /* VQREMAP_H */

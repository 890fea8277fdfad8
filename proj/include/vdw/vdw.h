/* C interface to the vdw solver library.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions returning vdw_status report failures through the code and a
 * thread-local message (vdw_last_error).  Strings returned by the library
 * stay valid until the owning handle is destroyed or modified. */
#ifndef VDW_VDW_H
#define VDW_VDW_H

#include <stddef.h>

#if defined(VDW_BUILDING_LIBRARY)
#define VDW_API __attribute__((visibility("default")))
#else
#define VDW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vdw_status {
  VDW_OK = 0,
  VDW_ERR_INVALID_ARGUMENT = 1,
  VDW_ERR_GRID_MISMATCH = 2,
  VDW_ERR_NON_CONVERGENCE = 3,
  VDW_ERR_DEPTH_EXCEEDED = 4,
  VDW_ERR_NO_SOLUTION = 5,
  VDW_ERR_INSUFFICIENT_SAMPLING = 6,
  VDW_ERR_IO = 7,
  VDW_ERR_INTERNAL = 8
} vdw_status;

typedef struct vdw_config vdw_config;
typedef struct vdw_table vdw_table;
typedef struct vdw_field vdw_field;

VDW_API const char* vdw_version(void);
VDW_API const char* vdw_status_string(vdw_status status);
/* Message of the last failure on the calling thread, "" if none. */
VDW_API const char* vdw_last_error(void);

/* Configuration: flat string key-value pairs with defaults. */
VDW_API size_t vdw_config_key_count(void);
VDW_API const char* vdw_config_key_name(size_t index);
VDW_API const char* vdw_config_key_default(size_t index);
VDW_API const char* vdw_config_key_doc(size_t index);

VDW_API vdw_status vdw_config_create(vdw_config** out);
VDW_API void vdw_config_destroy(vdw_config* cfg);
VDW_API vdw_status vdw_config_set(vdw_config* cfg, const char* key, const char* value);
VDW_API vdw_status vdw_config_get(const vdw_config* cfg, const char* key, const char** value);
VDW_API vdw_status vdw_config_validate(const vdw_config* cfg, const char* command);

/* Commands: simulate, verify, sweep, growth, continue, picard. */
VDW_API size_t vdw_command_count(void);
VDW_API const char* vdw_command_name(size_t index);
VDW_API vdw_status vdw_run(const vdw_config* cfg, const char* command, vdw_table** out);

/* Result tables: numeric or text cells plus key-value metadata. */
VDW_API void vdw_table_destroy(vdw_table* t);
VDW_API size_t vdw_table_rows(const vdw_table* t);
VDW_API size_t vdw_table_cols(const vdw_table* t);
VDW_API const char* vdw_table_column(const vdw_table* t, size_t col);
VDW_API int vdw_table_is_text(const vdw_table* t, size_t row, size_t col);
VDW_API double vdw_table_number(const vdw_table* t, size_t row, size_t col);
VDW_API const char* vdw_table_text(const vdw_table* t, size_t row, size_t col);
VDW_API size_t vdw_table_meta_count(const vdw_table* t);
VDW_API const char* vdw_table_meta_key(const vdw_table* t, size_t index);
VDW_API const char* vdw_table_meta_value(const vdw_table* t, size_t index);
/* 1 unless a verification inside the command failed. */
VDW_API int vdw_table_passed(const vdw_table* t);

/* Fourier fields with modes -K..K, coefficients interleaved (re, im)
 * starting at k = -K. */
typedef enum vdw_norm { VDW_NORM_L2 = 0, VDW_NORM_H = 1, VDW_NORM_LINF = 2 } vdw_norm;

VDW_API vdw_status vdw_field_create(int n_modes, vdw_field** out);
VDW_API void vdw_field_destroy(vdw_field* f);
VDW_API int vdw_field_n_modes(const vdw_field* f);
VDW_API vdw_status vdw_field_set_coeffs(vdw_field* f, const double* re_im, size_t n_values);
VDW_API vdw_status vdw_field_get_coeffs(const vdw_field* f, double* re_im, size_t n_values);
VDW_API vdw_status vdw_field_apply_m(const vdw_field* f, vdw_field** out);
VDW_API vdw_status vdw_field_multiply(const vdw_field* a, const vdw_field* b, vdw_field** out);
/* s is used for VDW_NORM_H only. */
VDW_API vdw_status vdw_field_norm(const vdw_field* f, vdw_norm kind, double s, double* out);

#ifdef __cplusplus
}
#endif

#endif

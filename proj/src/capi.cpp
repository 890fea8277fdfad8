#include "vdw/vdw.h"

#include <new>
#include <string>

#include "runner.hpp"
#include "vdw/spectral.hpp"

struct vdw_config {
  vdw::RunConfig cfg;
};

struct vdw_table {
  vdw::Table t;
};

struct vdw_field {
  vdw::SpectralField f;
};

namespace {

thread_local std::string last_error;

vdw_status record(vdw_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, mapping exceptions onto status codes.
template <class F>
vdw_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return VDW_OK;
  } catch (const vdw::Error& e) {
    return record(static_cast<vdw_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(VDW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(VDW_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(VDW_ERR_INTERNAL, "unknown failure");
  }
}

vdw_status null_arg(const char* what) { return record(VDW_ERR_INVALID_ARGUMENT, std::string(what) + " is null"); }

const vdw::Cell* cell(const vdw_table* t, size_t r, size_t c) {
  if (!t || r >= t->t.rows.size() || c >= t->t.columns.size()) return nullptr;
  return &t->t.rows[r][c];
}

}  // namespace

extern "C" {

const char* vdw_version(void) { return "0.1.0"; }

const char* vdw_status_string(vdw_status s) {
  switch (s) {
    case VDW_OK: return "ok";
    case VDW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VDW_ERR_GRID_MISMATCH: return "grid mismatch";
    case VDW_ERR_NON_CONVERGENCE: return "non-convergence";
    case VDW_ERR_DEPTH_EXCEEDED: return "depth exceeded";
    case VDW_ERR_NO_SOLUTION: return "no solution";
    case VDW_ERR_INSUFFICIENT_SAMPLING: return "insufficient sampling";
    case VDW_ERR_IO: return "i/o error";
    case VDW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* vdw_last_error(void) { return last_error.c_str(); }

size_t vdw_config_key_count(void) { return vdw::config_keys().size(); }

const char* vdw_config_key_name(size_t i) {
  return i < vdw::config_keys().size() ? vdw::config_keys()[i].name : nullptr;
}

const char* vdw_config_key_default(size_t i) {
  return i < vdw::config_keys().size() ? vdw::config_keys()[i].default_value : nullptr;
}

const char* vdw_config_key_doc(size_t i) {
  return i < vdw::config_keys().size() ? vdw::config_keys()[i].doc : nullptr;
}

vdw_status vdw_config_create(vdw_config** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new vdw_config; });
}

void vdw_config_destroy(vdw_config* cfg) { delete cfg; }

vdw_status vdw_config_set(vdw_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("config");
  if (!key || !value) return null_arg("key or value");
  return guarded([&] { cfg->cfg.set(key, value); });
}

vdw_status vdw_config_get(const vdw_config* cfg, const char* key, const char** value) {
  if (!cfg) return null_arg("config");
  if (!key || !value) return null_arg("key or value");
  return guarded([&] { *value = cfg->cfg.get(key).c_str(); });
}

vdw_status vdw_config_validate(const vdw_config* cfg, const char* command) {
  if (!cfg) return null_arg("config");
  if (!command) return null_arg("command");
  return guarded([&] { cfg->cfg.validate(command); });
}

size_t vdw_command_count(void) { return vdw::commands().size(); }

const char* vdw_command_name(size_t i) { return i < vdw::commands().size() ? vdw::commands()[i].c_str() : nullptr; }

vdw_status vdw_run(const vdw_config* cfg, const char* command, vdw_table** out) {
  if (!cfg) return null_arg("config");
  if (!command || !out) return null_arg("command or out");
  *out = nullptr;
  return guarded([&] {
    auto* t = new vdw_table;
    try {
      t->t = vdw::run_command(cfg->cfg, command);
    } catch (...) {
      delete t;
      throw;
    }
    *out = t;
  });
}

void vdw_table_destroy(vdw_table* t) { delete t; }
size_t vdw_table_rows(const vdw_table* t) { return t ? t->t.rows.size() : 0; }
size_t vdw_table_cols(const vdw_table* t) { return t ? t->t.columns.size() : 0; }

const char* vdw_table_column(const vdw_table* t, size_t c) {
  return t && c < t->t.columns.size() ? t->t.columns[c].c_str() : nullptr;
}

int vdw_table_is_text(const vdw_table* t, size_t r, size_t c) {
  const vdw::Cell* x = cell(t, r, c);
  return x && x->is_text ? 1 : 0;
}

double vdw_table_number(const vdw_table* t, size_t r, size_t c) {
  const vdw::Cell* x = cell(t, r, c);
  return x && !x->is_text ? x->num : 0.0;
}

const char* vdw_table_text(const vdw_table* t, size_t r, size_t c) {
  const vdw::Cell* x = cell(t, r, c);
  return x && x->is_text ? x->text.c_str() : nullptr;
}

size_t vdw_table_meta_count(const vdw_table* t) { return t ? t->t.meta.size() : 0; }

const char* vdw_table_meta_key(const vdw_table* t, size_t i) {
  return t && i < t->t.meta.size() ? t->t.meta[i].first.c_str() : nullptr;
}

const char* vdw_table_meta_value(const vdw_table* t, size_t i) {
  return t && i < t->t.meta.size() ? t->t.meta[i].second.c_str() : nullptr;
}

int vdw_table_passed(const vdw_table* t) { return t && t->t.passed ? 1 : 0; }

vdw_status vdw_field_create(int n_modes, vdw_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (n_modes < 0) return record(VDW_ERR_INVALID_ARGUMENT, "n_modes must be non-negative");
  return guarded([&] { *out = new vdw_field{vdw::SpectralField(vdw::Grid(n_modes))}; });
}

void vdw_field_destroy(vdw_field* f) { delete f; }

int vdw_field_n_modes(const vdw_field* f) { return f ? f->f.n_modes() : -1; }

vdw_status vdw_field_set_coeffs(vdw_field* f, const double* v, size_t n) {
  if (!f || !v) return null_arg("field or values");
  auto c = f->f.coeffs();
  if (n != 2 * c.size()) return record(VDW_ERR_GRID_MISMATCH, "expected 2*(2K+1) values");
  for (size_t i = 0; i < c.size(); ++i) c[i] = vdw::cplx(v[2 * i], v[2 * i + 1]);
  last_error.clear();
  return VDW_OK;
}

vdw_status vdw_field_get_coeffs(const vdw_field* f, double* v, size_t n) {
  if (!f || !v) return null_arg("field or values");
  auto c = f->f.coeffs();
  if (n != 2 * c.size()) return record(VDW_ERR_GRID_MISMATCH, "expected 2*(2K+1) values");
  for (size_t i = 0; i < c.size(); ++i) {
    v[2 * i] = c[i].real();
    v[2 * i + 1] = c[i].imag();
  }
  last_error.clear();
  return VDW_OK;
}

vdw_status vdw_field_apply_m(const vdw_field* f, vdw_field** out) {
  if (!f || !out) return null_arg("field or out");
  *out = nullptr;
  return guarded([&] { *out = new vdw_field{vdw::apply_m(f->f)}; });
}

vdw_status vdw_field_multiply(const vdw_field* a, const vdw_field* b, vdw_field** out) {
  if (!a || !b || !out) return null_arg("field or out");
  *out = nullptr;
  return guarded([&] { *out = new vdw_field{vdw::multiply(a->f, b->f)}; });
}

vdw_status vdw_field_norm(const vdw_field* f, vdw_norm kind, double s, double* out) {
  if (!f || !out) return null_arg("field or out");
  return guarded([&] {
    switch (kind) {
      case VDW_NORM_L2: *out = vdw::norm_l2(f->f); return;
      case VDW_NORM_H: *out = vdw::norm(f->f, vdw::Norm::H(s)); return;
      case VDW_NORM_LINF: *out = vdw::norm_linf(f->f); return;
    }
    vdw::fail(vdw::ErrorCode::invalid_argument, "unknown norm kind");
  });
}

}  // extern "C"

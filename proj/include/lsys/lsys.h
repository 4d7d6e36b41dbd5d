#ifndef LSYS_LSYS_H
#define LSYS_LSYS_H

/* C interface to the lsys library.  Every function returns an lsys_status;
 * on failure lsys_last_error() holds a message for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lsys_status {
  LSYS_OK = 0,
  LSYS_E_INPUT = 1,
  LSYS_E_DOMAIN = 2,
  LSYS_E_EVALUATION = 3,
  LSYS_E_INTEGRATION = 4,
  LSYS_E_CONVERGENCE = 5,
  LSYS_E_POLE = 6,
  LSYS_E_CLASS = 7,
  LSYS_E_NOT_ACCRETIVE = 8,
  LSYS_E_NO_LIMIT = 9,
  LSYS_E_ACCURACY = 10,
  LSYS_E_IO = 11,
  LSYS_E_INTERNAL = 12,
  LSYS_E_BUFFER = 13
} lsys_status;

typedef struct lsys_complex {
  double re;
  double im;
} lsys_complex;

typedef struct lsys_weyl lsys_weyl;
typedef struct lsys_system lsys_system;

const char* lsys_last_error(void);
const char* lsys_status_name(lsys_status status);

/* spec: "free", "const:<c>" or "table:<path>".  numeric != 0 forces the
 * ODE solver even when a closed form exists. */
lsys_status lsys_weyl_create(const char* spec, int numeric, lsys_weyl** out);
void lsys_weyl_destroy(lsys_weyl* weyl);
lsys_status lsys_weyl_eval(const lsys_weyl* weyl, lsys_complex lambda, lsys_complex* out);
lsys_status lsys_weyl_neg_zero(const lsys_weyl* weyl, double* out);
/* 0 closed form (free), 1 closed form (constant), 2 numeric */
lsys_status lsys_weyl_source(const lsys_weyl* weyl, int* out);

/* mu may be +INFINITY.  The system keeps its own reference to the Weyl function. */
lsys_status lsys_system_create(lsys_complex h, double mu, const lsys_weyl* weyl, lsys_system** out);
void lsys_system_destroy(lsys_system* sys);

lsys_status lsys_impedance(const lsys_system* sys, lsys_complex z, lsys_complex* out);
lsys_status lsys_transfer(const lsys_system* sys, lsys_complex z, lsys_complex* out);
lsys_status lsys_impedance_from_transfer(lsys_complex w, lsys_complex* out);

typedef enum lsys_class {
  LSYS_CLASS_STIELTJES = 0,
  LSYS_CLASS_INVERSE_STIELTJES = 1,
  LSYS_CLASS_NEITHER = 2
} lsys_class;

typedef enum lsys_operator_kind {
  LSYS_OP_ALPHA_SECTORIAL = 0,
  LSYS_OP_ACCRETIVE_NOT_SECTORIAL = 1,
  LSYS_OP_NOT_ACCRETIVE = 2
} lsys_operator_kind;

typedef struct lsys_operator_status {
  lsys_operator_kind kind;
  double tan_alpha; /* valid for LSYS_OP_ALPHA_SECTORIAL */
} lsys_operator_status;

typedef struct lsys_report {
  lsys_class klass;
  int degenerate;
  int has_class_angles; /* 0 for LSYS_CLASS_NEITHER */
  double tan_alpha1;
  double tan_alpha2;
  double tan_alpha;
  double tan_beta;
  int beta_degenerate;
  int th_sectorial;
  double tan_theta;
  int theta_exact;
  double mu0_stieltjes;
  double mu0_inverse;
  lsys_operator_status state_operator;
  lsys_operator_status associated_operator;
} lsys_report;

/* Fails with LSYS_E_NOT_ACCRETIVE when Re h < -m(-0). */
lsys_status lsys_classify(const lsys_system* sys, lsys_report* out);

enum {
  LSYS_ROW_AT_MU0 = 1,
  LSYS_ROW_SECTORIAL = 2,
  LSYS_ROW_ACCRETIVE_ONLY = 4
};

typedef struct lsys_scan_row {
  double mu;
  lsys_class klass;
  double tan_a1;
  double tan_a2;
  double f_mu;
  unsigned flags;
} lsys_scan_row;

typedef enum lsys_direction {
  LSYS_DECREASING = 0,
  LSYS_INCREASING = 1,
  LSYS_CONSTANT = 2,
  LSYS_MIXED = 3
} lsys_direction;

typedef struct lsys_scan_summary {
  double mu_star;
  double tan_beta;
  double tan_beta_universal;
  lsys_direction direction;
  int bound_holds;
} lsys_scan_summary;

/* Scans the grid along one branch.  rows must hold grid_len entries;
 * *row_count receives the number written.  mu_star may be NULL. */
lsys_status lsys_scan_mu(lsys_complex h, const lsys_weyl* weyl, lsys_class branch, const double* grid,
                         size_t grid_len, const double* mu_star, lsys_scan_row* rows, size_t* row_count,
                         lsys_scan_summary* summary);

/* Stieltjes variant for variant == 0, inverse Stieltjes otherwise. */
lsys_status lsys_estimate_sector_angle(const lsys_system* sys, int variant, uint64_t seed, size_t trials,
                                       size_t points_per_trial, double* tan_alpha);

typedef void (*lsys_verify_callback)(int id, const char* name, int passed, const char* detail, void* user);

/* criterion 0 runs all.  *failed receives the number of failing criteria. */
lsys_status lsys_verify_run(int criterion, uint64_t seed, lsys_verify_callback callback, void* user, int* failed);

#ifdef __cplusplus
}
#endif

#endif

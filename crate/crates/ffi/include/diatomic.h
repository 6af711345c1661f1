#ifndef DIATOMIC_H
#define DIATOMIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DQ_MODE_A 0

#define DQ_MODE_B 1

#define DQ_MODE_C 2

#define DQ_BACKEND_QUBIT 0

#define DQ_BACKEND_FOCK 1

typedef enum DqStatus {
  DQ_STATUS_OK = 0,
  DQ_STATUS_NULL_POINTER = 1,
  DQ_STATUS_INVALID_ARGUMENT = 2,
  DQ_STATUS_REGIME = 3,
  DQ_STATUS_RESOURCE_LIMIT = 4,
  DQ_STATUS_PARSE = 5,
  DQ_STATUS_UNKNOWN_SPECIES = 6,
  DQ_STATUS_BUFFER_TOO_SMALL = 7,
  DQ_STATUS_IO = 8,
  DQ_STATUS_PANIC = 9,
} DqStatus;

// Lattice Hamiltonian coefficients (dimensionless).
typedef struct DqParams DqParams;

// Qubit register state.
typedef struct DqRegister DqRegister;

// Parsed pulse schedule.
typedef struct DqSchedule DqSchedule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`) and returns the full message length in bytes.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t dq_last_error(char *buf, size_t len);

// Addressing frequency `g d r / ħ` of a molecule with dipole `d` (C·m).
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_delta_nu(double d, double g, double r, double *result);

// Dipole-dipole coupling in joules between molecules `separation` sites
// apart.
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_dipole_coupling(double d1,
                                 double d2,
                                 double r,
                                 uint32_t separation,
                                 double *result);

// CNOT gates per second for neighbouring dipoles `d1`, `d2`.
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_cnot_rate(double d1, double d2, double r, double *result);

// CNOT rate from an addressing frequency alone.
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_rate_from_frequency(double delta_nu, double g, double r, double *result);

// Off-resonant excitation bound for a neighbour detuned by `delta_nu`.
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_crosstalk_bound(double rabi, double delta_nu, double *result);

// Time for coupling `d12` (J) to accumulate phase `phi`.
//
// # Safety
// `result` must be a valid pointer.
enum DqStatus dq_phase_gate_duration(double d12, double phi, double *result);

// Dipole moment (C·m) of a built-in species such as `"KRb"`.
//
// # Safety
// `name` must be a NUL-terminated string and `result` a valid pointer.
enum DqStatus dq_species_dipole(const char *name, double *result);

// `|0…0⟩` on `num_qubits` qubits.
//
// # Safety
// `register` must be a valid pointer; the handle it receives must be
// released with [`dq_register_free`].
enum DqStatus dq_register_new(size_t num_qubits, struct DqRegister **register_);

// Register from `dim = 2^num_qubits` amplitudes; normalized on the way in.
//
// # Safety
// `re` and `im` must point to `dim` readable values; `register` as for
// [`dq_register_new`].
enum DqStatus dq_register_from_amplitudes(size_t num_qubits,
                                          const double *re,
                                          const double *im,
                                          size_t dim,
                                          struct DqRegister **register_);

// # Safety
// `register` must be null or a handle from this library not yet freed.
void dq_register_free(struct DqRegister *register_);

// # Safety
// `register` must be a live handle and `dim` a valid pointer.
enum DqStatus dq_register_dim(const struct DqRegister *register_, size_t *dim);

// Copies the amplitudes into `re`/`im`, each of capacity `len`. Fails with
// `BufferTooSmall` if `len` is less than the register dimension.
//
// # Safety
// `re` and `im` must point to `len` writable values.
enum DqStatus dq_register_amplitudes(const struct DqRegister *register_,
                                     double *re,
                                     double *im,
                                     size_t len);

// `Ry(angle)` on `site`, in place.
//
// # Safety
// `register` must be a live handle.
enum DqStatus dq_ry(struct DqRegister *register_, size_t site, double angle);

// `Rx(angle)` on `site`, in place.
//
// # Safety
// `register` must be a live handle.
enum DqStatus dq_rx(struct DqRegister *register_, size_t site, double angle);

// Phase `e^{i phi}` on the component where both sites are `|1⟩`.
//
// # Safety
// `register` must be a live handle.
enum DqStatus dq_phase_gate(struct DqRegister *register_, size_t i, size_t j, double phi);

// Composed CNOT, in place.
//
// # Safety
// `register` must be a live handle.
enum DqStatus dq_cnot(struct DqRegister *register_, size_t control, size_t target);

// Concurrence of a two-qubit register.
//
// # Safety
// `register` must be a live handle and `result` a valid pointer.
enum DqStatus dq_concurrence(const struct DqRegister *register_, double *result);

// `|⟨a|b⟩|²`.
//
// # Safety
// Both registers must be live handles and `result` a valid pointer.
enum DqStatus dq_fidelity(const struct DqRegister *a, const struct DqRegister *b, double *result);

// Output of the Bell-preparation sequence on a fresh two-qubit register.
//
// # Safety
// As for [`dq_register_new`].
enum DqStatus dq_bell_prep(struct DqRegister **register_);

// Samples `shots` basis indices into `outcomes` from a ChaCha8 stream
// seeded with `seed`.
//
// # Safety
// `outcomes` must point to `shots` writable values.
enum DqStatus dq_measure(const struct DqRegister *register_,
                         size_t shots,
                         uint64_t seed,
                         uint64_t *outcomes);

// All-zero coefficients on `num_sites` sites.
//
// # Safety
// `params` must be a valid pointer; release the handle with
// [`dq_params_free`].
enum DqStatus dq_params_new(size_t num_sites, struct DqParams **params);

// # Safety
// `params` must be null or a handle from this library not yet freed.
void dq_params_free(struct DqParams *params);

// # Safety
// `params` must be a live handle.
enum DqStatus dq_params_set_tunneling(struct DqParams *params, uint32_t mode_, double value);

// Sets `U_kl` (symmetric).
//
// # Safety
// `params` must be a live handle.
enum DqStatus dq_params_set_interaction(struct DqParams *params,
                                        uint32_t k,
                                        uint32_t l,
                                        double value);

// Sets `D_ij` (symmetric).
//
// # Safety
// `params` must be a live handle.
enum DqStatus dq_params_set_dipole(struct DqParams *params, size_t i, size_t j, double value);

// Raman coupling and phase on `site`.
//
// # Safety
// `params` must be a live handle.
enum DqStatus dq_params_set_raman(struct DqParams *params, size_t site, double rabi, double phase);

// Entangling phase of free two-site evolution for dimensionless time `t`.
//
// # Safety
// `params` must be a live handle and `result` a valid pointer.
enum DqStatus dq_entangling_phase(const struct DqParams *params, double t, double *result);

// Parses a TOML pulse schedule.
//
// # Safety
// `source` must be a NUL-terminated string and `schedule` a valid pointer;
// release the handle with [`dq_schedule_free`].
enum DqStatus dq_schedule_parse(const char *source, struct DqSchedule **schedule);

// # Safety
// `schedule` must be null or a handle from this library not yet freed.
void dq_schedule_free(struct DqSchedule *schedule);

// Runs `schedule` on `register` in place with `DQ_BACKEND_*` `backend_`.
// `leakage` may be null.
//
// # Safety
// All handles must be live; `leakage` null or valid.
enum DqStatus dq_run_schedule(const struct DqSchedule *schedule,
                              uint32_t backend_,
                              const struct DqParams *params,
                              struct DqRegister *register_,
                              double *leakage);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIATOMIC_H */

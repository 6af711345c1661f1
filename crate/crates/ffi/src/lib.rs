//! C interface to the `diatomic` simulator.
//!
//! Every function returns a [`DqStatus`]; results come back through out
//! pointers. Objects are opaque handles created by `*_new`/`*_parse`
//! functions and released with the matching `*_free`. After a non-`Ok`
//! status, [`dq_last_error`] gives a message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use diatomic::gates::{self, Backend};
use diatomic::model::{
    BasisTag, HamiltonianParams, Mode, PulseSchedule, RegisterState, SpeciesCatalog,
};
use diatomic::{params, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Regime = 3,
    ResourceLimit = 4,
    Parse = 5,
    UnknownSpecies = 6,
    BufferTooSmall = 7,
    Io = 8,
    Panic = 9,
}

pub const DQ_MODE_A: u32 = 0;
pub const DQ_MODE_B: u32 = 1;
pub const DQ_MODE_C: u32 = 2;

pub const DQ_BACKEND_QUBIT: u32 = 0;
pub const DQ_BACKEND_FOCK: u32 = 1;

/// Qubit register state.
pub struct DqRegister(RegisterState);

/// Lattice Hamiltonian coefficients (dimensionless).
pub struct DqParams(HamiltonianParams);

/// Parsed pulse schedule.
pub struct DqSchedule(PulseSchedule);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> DqStatus {
    match e {
        Error::Regime(_) => DqStatus::Regime,
        Error::ResourceLimit(_) => DqStatus::ResourceLimit,
        Error::Parse(_) => DqStatus::Parse,
        Error::UnknownSpecies(_) => DqStatus::UnknownSpecies,
        Error::Io(_) => DqStatus::Io,
        _ => DqStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
    Small(usize),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            DqStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DqStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Small(need))) => {
            set_error(format!("buffer too small, need {need}"));
            DqStatus::BufferTooSmall
        }
        Err(_) => {
            set_error("internal panic".into());
            DqStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidArgument(format!("{what} is not UTF-8"))))
}

fn mode(m: u32) -> Result<Mode, Fail> {
    match m {
        DQ_MODE_A => Ok(Mode::A),
        DQ_MODE_B => Ok(Mode::B),
        DQ_MODE_C => Ok(Mode::C),
        _ => Err(Error::InvalidArgument(format!("unknown mode {m}")).into()),
    }
}

fn backend(b: u32) -> Result<Backend, Fail> {
    match b {
        DQ_BACKEND_QUBIT => Ok(Backend::Qubit),
        DQ_BACKEND_FOCK => Ok(Backend::Fock),
        _ => Err(Error::InvalidArgument(format!("unknown backend {b}")).into()),
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`) and returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn dq_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

// Calculators, SI units.

/// Addressing frequency `g d r / ħ` of a molecule with dipole `d` (C·m).
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_delta_nu(d: f64, g: f64, r: f64, result: *mut f64) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::delta_nu(d, g, r)?;
        Ok(())
    })
}

/// Dipole-dipole coupling in joules between molecules `separation` sites
/// apart.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_dipole_coupling(
    d1: f64,
    d2: f64,
    r: f64,
    separation: u32,
    result: *mut f64,
) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::dipole_coupling(d1, d2, r, separation)?;
        Ok(())
    })
}

/// CNOT gates per second for neighbouring dipoles `d1`, `d2`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_cnot_rate(d1: f64, d2: f64, r: f64, result: *mut f64) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::cnot_rate(d1, d2, r)?;
        Ok(())
    })
}

/// CNOT rate from an addressing frequency alone.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_rate_from_frequency(
    delta_nu: f64,
    g: f64,
    r: f64,
    result: *mut f64,
) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::rate_from_frequency(delta_nu, g, r)?;
        Ok(())
    })
}

/// Off-resonant excitation bound for a neighbour detuned by `delta_nu`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_crosstalk_bound(
    rabi: f64,
    delta_nu: f64,
    result: *mut f64,
) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::crosstalk_bound(rabi, delta_nu)?;
        Ok(())
    })
}

/// Time for coupling `d12` (J) to accumulate phase `phi`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_phase_gate_duration(d12: f64, phi: f64, result: *mut f64) -> DqStatus {
    guard(|| {
        *out(result, "result")? = params::phase_gate_duration(d12, phi)?;
        Ok(())
    })
}

/// Dipole moment (C·m) of a built-in species such as `"KRb"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_species_dipole(name: *const c_char, result: *mut f64) -> DqStatus {
    guard(|| {
        let name = text(name, "name")?;
        let catalog = SpeciesCatalog::builtin();
        let s = catalog
            .get(name)
            .ok_or_else(|| Error::UnknownSpecies(name.to_owned()))?;
        *out(result, "result")? = s.dipole_moment;
        Ok(())
    })
}

// Registers.

/// `|0…0⟩` on `num_qubits` qubits.
///
/// # Safety
/// `register` must be a valid pointer; the handle it receives must be
/// released with [`dq_register_free`].
#[no_mangle]
pub unsafe extern "C" fn dq_register_new(
    num_qubits: usize,
    register: *mut *mut DqRegister,
) -> DqStatus {
    guard(|| {
        let slot = out(register, "register")?;
        *slot = boxed(DqRegister(gates::init_register(num_qubits)?));
        Ok(())
    })
}

/// Register from `dim = 2^num_qubits` amplitudes; normalized on the way in.
///
/// # Safety
/// `re` and `im` must point to `dim` readable values; `register` as for
/// [`dq_register_new`].
#[no_mangle]
pub unsafe extern "C" fn dq_register_from_amplitudes(
    num_qubits: usize,
    re: *const f64,
    im: *const f64,
    dim: usize,
    register: *mut *mut DqRegister,
) -> DqStatus {
    guard(|| {
        let slot = out(register, "register")?;
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("amplitudes"));
        }
        if num_qubits > gates::MAX_QUBITS {
            return Err(Error::ResourceLimit(format!("{num_qubits} qubits")).into());
        }
        let re = std::slice::from_raw_parts(re, dim);
        let im = std::slice::from_raw_parts(im, dim);
        let amps = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| num_complex::Complex64::new(a, b))
            .collect();
        *slot = boxed(DqRegister(RegisterState::normalized(
            amps,
            BasisTag::Qubits(num_qubits),
        )?));
        Ok(())
    })
}

/// # Safety
/// `register` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dq_register_free(register: *mut DqRegister) {
    if !register.is_null() {
        drop(Box::from_raw(register));
    }
}

/// # Safety
/// `register` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_register_dim(register: *const DqRegister, dim: *mut usize) -> DqStatus {
    guard(|| {
        *out(dim, "dim")? = get(register, "register")?.0.dim();
        Ok(())
    })
}

/// Copies the amplitudes into `re`/`im`, each of capacity `len`. Fails with
/// `BufferTooSmall` if `len` is less than the register dimension.
///
/// # Safety
/// `re` and `im` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn dq_register_amplitudes(
    register: *const DqRegister,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> DqStatus {
    guard(|| {
        let amps = get(register, "register")?.0.amplitudes();
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("output buffers"));
        }
        if len < amps.len() {
            return Err(Fail::Small(amps.len()));
        }
        for (k, a) in amps.iter().enumerate() {
            *re.add(k) = a.re;
            *im.add(k) = a.im;
        }
        Ok(())
    })
}

unsafe fn update(
    register: *mut DqRegister,
    f: impl FnOnce(&RegisterState) -> diatomic::Result<RegisterState>,
) -> DqStatus {
    guard(|| {
        let r = out(register, "register")?;
        r.0 = f(&r.0)?;
        Ok(())
    })
}

/// `Ry(angle)` on `site`, in place.
///
/// # Safety
/// `register` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_ry(register: *mut DqRegister, site: usize, angle: f64) -> DqStatus {
    update(register, |s| gates::ry(s, site, angle))
}

/// `Rx(angle)` on `site`, in place.
///
/// # Safety
/// `register` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_rx(register: *mut DqRegister, site: usize, angle: f64) -> DqStatus {
    update(register, |s| gates::rx(s, site, angle))
}

/// Phase `e^{i phi}` on the component where both sites are `|1⟩`.
///
/// # Safety
/// `register` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_phase_gate(
    register: *mut DqRegister,
    i: usize,
    j: usize,
    phi: f64,
) -> DqStatus {
    update(register, |s| gates::phase_gate(s, (i, j), phi))
}

/// Composed CNOT, in place.
///
/// # Safety
/// `register` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_cnot(
    register: *mut DqRegister,
    control: usize,
    target: usize,
) -> DqStatus {
    update(register, |s| gates::apply_cnot(s, control, target))
}

/// Concurrence of a two-qubit register.
///
/// # Safety
/// `register` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_concurrence(register: *const DqRegister, result: *mut f64) -> DqStatus {
    guard(|| {
        *out(result, "result")? = gates::concurrence(&get(register, "register")?.0)?;
        Ok(())
    })
}

/// `|⟨a|b⟩|²`.
///
/// # Safety
/// Both registers must be live handles and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_fidelity(
    a: *const DqRegister,
    b: *const DqRegister,
    result: *mut f64,
) -> DqStatus {
    guard(|| {
        *out(result, "result")? = gates::fidelity(&get(a, "a")?.0, &get(b, "b")?.0)?;
        Ok(())
    })
}

/// Output of the Bell-preparation sequence on a fresh two-qubit register.
///
/// # Safety
/// As for [`dq_register_new`].
#[no_mangle]
pub unsafe extern "C" fn dq_bell_prep(register: *mut *mut DqRegister) -> DqStatus {
    guard(|| {
        let slot = out(register, "register")?;
        *slot = boxed(DqRegister(gates::bell_prep()?.output));
        Ok(())
    })
}

/// Samples `shots` basis indices into `outcomes` from a ChaCha8 stream
/// seeded with `seed`.
///
/// # Safety
/// `outcomes` must point to `shots` writable values.
#[no_mangle]
pub unsafe extern "C" fn dq_measure(
    register: *const DqRegister,
    shots: usize,
    seed: u64,
    outcomes: *mut u64,
) -> DqStatus {
    guard(|| {
        let state = &get(register, "register")?.0;
        if outcomes.is_null() {
            return Err(Fail::Null("outcomes"));
        }
        let rec = gates::measure(state, shots, seed)?;
        for (k, &o) in rec.outcomes.iter().enumerate() {
            *outcomes.add(k) = o as u64;
        }
        Ok(())
    })
}

// Hamiltonian parameters.

/// All-zero coefficients on `num_sites` sites.
///
/// # Safety
/// `params` must be a valid pointer; release the handle with
/// [`dq_params_free`].
#[no_mangle]
pub unsafe extern "C" fn dq_params_new(num_sites: usize, params: *mut *mut DqParams) -> DqStatus {
    guard(|| {
        let slot = out(params, "params")?;
        if num_sites == 0 {
            return Err(Error::InvalidArgument("at least one site".into()).into());
        }
        if num_sites > gates::MAX_QUBITS {
            return Err(Error::ResourceLimit(format!("{num_sites} sites")).into());
        }
        *slot = boxed(DqParams(HamiltonianParams::zeros(num_sites)));
        Ok(())
    })
}

/// # Safety
/// `params` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dq_params_free(params: *mut DqParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_params_set_tunneling(
    params: *mut DqParams,
    mode_: u32,
    value: f64,
) -> DqStatus {
    guard(|| {
        let p = out(params, "params")?;
        p.0.tunneling[mode(mode_)?.index()] = value;
        Ok(())
    })
}

/// Sets `U_kl` (symmetric).
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_params_set_interaction(
    params: *mut DqParams,
    k: u32,
    l: u32,
    value: f64,
) -> DqStatus {
    guard(|| {
        let p = out(params, "params")?;
        p.0.set_interaction(mode(k)?, mode(l)?, value);
        Ok(())
    })
}

/// Sets `D_ij` (symmetric).
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_params_set_dipole(
    params: *mut DqParams,
    i: usize,
    j: usize,
    value: f64,
) -> DqStatus {
    guard(|| {
        let p = out(params, "params")?;
        let n = p.0.num_sites();
        for s in [i, j] {
            if s >= n {
                return Err(Error::SiteOutOfRange { site: s, len: n }.into());
            }
        }
        p.0.set_dipole(i, j, value);
        Ok(())
    })
}

/// Raman coupling and phase on `site`.
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dq_params_set_raman(
    params: *mut DqParams,
    site: usize,
    rabi: f64,
    phase: f64,
) -> DqStatus {
    guard(|| {
        let p = out(params, "params")?;
        let n = p.0.num_sites();
        if site >= n {
            return Err(Error::SiteOutOfRange { site, len: n }.into());
        }
        p.0.rabi[site] = rabi;
        p.0.raman_phase[site] = phase;
        Ok(())
    })
}

/// Entangling phase of free two-site evolution for dimensionless time `t`.
///
/// # Safety
/// `params` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dq_entangling_phase(
    params: *const DqParams,
    t: f64,
    result: *mut f64,
) -> DqStatus {
    guard(|| {
        *out(result, "result")? = gates::entangling_phase_from_fock(&get(params, "params")?.0, t)?;
        Ok(())
    })
}

// Schedules.

/// Parses a TOML pulse schedule.
///
/// # Safety
/// `source` must be a NUL-terminated string and `schedule` a valid pointer;
/// release the handle with [`dq_schedule_free`].
#[no_mangle]
pub unsafe extern "C" fn dq_schedule_parse(
    source: *const c_char,
    schedule: *mut *mut DqSchedule,
) -> DqStatus {
    guard(|| {
        let slot = out(schedule, "schedule")?;
        *slot = boxed(DqSchedule(PulseSchedule::parse(text(source, "source")?)?));
        Ok(())
    })
}

/// # Safety
/// `schedule` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dq_schedule_free(schedule: *mut DqSchedule) {
    if !schedule.is_null() {
        drop(Box::from_raw(schedule));
    }
}

/// Runs `schedule` on `register` in place with `DQ_BACKEND_*` `backend_`.
/// `leakage` may be null.
///
/// # Safety
/// All handles must be live; `leakage` null or valid.
#[no_mangle]
pub unsafe extern "C" fn dq_run_schedule(
    schedule: *const DqSchedule,
    backend_: u32,
    params: *const DqParams,
    register: *mut DqRegister,
    leakage: *mut f64,
) -> DqStatus {
    guard(|| {
        let schedule = &get(schedule, "schedule")?.0;
        let params = &get(params, "params")?.0;
        let r = out(register, "register")?;
        let report = gates::run_schedule(schedule, backend(backend_)?, params, &r.0)?;
        if let Some(l) = leakage.as_mut() {
            *l = report.leakage;
        }
        r.0 = report.state;
        Ok(())
    })
}

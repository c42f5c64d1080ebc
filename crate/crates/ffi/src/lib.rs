//! C interface to `toricsing`.
//!
//! Every fallible function returns a [`TsStatus`]. On failure the message is
//! available from [`ts_last_error`] on the same thread. Strings handed out by
//! the library are owned by the caller and must be released with
//! [`ts_string_free`]; models with [`ts_model_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toricsing::catalog::{builtin, parse_model, serialize_model, ModelSpec};
use toricsing::chow::{ClassExpr, ToricModel};
use toricsing::exactalg::{format_rational, parse_poly, parse_poly_auto, vars_from, MultiPoly};
use toricsing::formulas::{foliation_sing_count, wci_sing_count, Kind};
use toricsing::residue::{local_multiplicity, IndexQuery};
use toricsing::Error;

/// Opaque model handle.
pub struct TsModel {
    inner: ToricModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input text or parameters.
    InvalidInput = 3,
    /// Well-formed input outside the domain of the operation.
    Domain = 4,
    /// Internal failure; the library state is still usable.
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsKind {
    Foliation = 0,
    Distribution = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::InvalidInput(_)
            | Error::Validation { .. } => TsStatus::InvalidInput,
            _ => TsStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn model_ref<'a>(p: *const TsModel) -> Result<&'a ToricModel, Failure> {
    p.as_ref()
        .map(|m| &m.inner)
        .ok_or_else(|| Failure(TsStatus::NullArgument, "model is null".into()))
}

unsafe fn slice<'a>(p: *const i64, len: usize, what: &str) -> Result<&'a [i64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure(TsStatus::NullArgument, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TsStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(TsStatus::Panic, e.to_string()))?;
    if out.is_null() {
        return Err(Failure(TsStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

fn scalar_text(e: &MultiPoly) -> String {
    match e.constant_value() {
        Some(v) => format_rational(&v),
        None => e.canonical_string(),
    }
}

/// Comma-separated entries, each an integer, rational or polynomial.
fn parse_list(s: &str) -> Result<Vec<MultiPoly>, Failure> {
    s.split(',').map(|x| parse_poly_auto(x.trim()).map_err(Failure::from)).collect()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a catalog model from a name such as `weighted:1,1,2`.
///
/// # Safety
/// `spec` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_model_builtin(spec: *const c_char, out: *mut *mut TsModel) -> TsStatus {
    guard(|| {
        let spec: ModelSpec = text(spec, "spec")?.parse()?;
        let model = builtin(&spec)?;
        write_out(out, Box::into_raw(Box::new(TsModel { inner: model })))
    })
}

/// Parses a model file.
///
/// # Safety
/// `source` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_model_parse(source: *const c_char, out: *mut *mut TsModel) -> TsStatus {
    guard(|| {
        let model = parse_model(text(source, "source")?)?;
        write_out(out, Box::into_raw(Box::new(TsModel { inner: model })))
    })
}

/// # Safety
/// `model` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_model_free(model: *mut TsModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_model_serialize(model: *const TsModel, out: *mut *mut c_char) -> TsStatus {
    guard(|| write_string(out, serialize_model(model_ref(model)?)))
}

/// # Safety
/// `model` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ts_model_shape(
    model: *const TsModel,
    out_dim: *mut usize,
    out_rank: *mut usize,
) -> TsStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(out_dim, m.dim())?;
        write_out(out_rank, m.rank())
    })
}

/// Singularity count of a foliation of degree `degree`, given as one
/// comma-separated entry per Picard generator. Entries may be symbols.
///
/// # Safety
/// `model` must be a live handle, `degree` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_foliation_count(
    model: *const TsModel,
    degree: *const c_char,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let m = model_ref(model)?;
        let d = ClassExpr::new(parse_list(text(degree, "degree")?)?)?;
        write_string(out, scalar_text(&foliation_sing_count(m, &d)?))
    })
}

/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_euler_number(model: *const TsModel, out: *mut *mut c_char) -> TsStatus {
    guard(|| write_string(out, format_rational(&model_ref(model)?.euler_number()?)))
}

/// Count on the complete intersection of the given degrees in `P(weights)`.
///
/// # Safety
/// `weights` and `classes` must point to the stated number of entries
/// (either may be null when its length is zero); `degree` must be a valid C
/// string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ts_wci_count(
    weights: *const i64,
    n_weights: usize,
    classes: *const i64,
    n_classes: usize,
    degree: *const c_char,
    kind: TsKind,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let w = slice(weights, n_weights, "weights")?;
        let a = slice(classes, n_classes, "classes")?;
        let d = parse_poly_auto(text(degree, "degree")?.trim())?;
        let kind = match kind {
            TsKind::Foliation => Kind::Foliation,
            TsKind::Distribution => Kind::Distribution,
        };
        write_string(out, scalar_text(&wci_sing_count(w, a, &d, kind)?))
    })
}

/// Local multiplicity of the germ with comma-separated `components` in the
/// comma-separated chart variables `vars`, and its index for a local group
/// of order `group_order`.
///
/// # Safety
/// `vars` and `components` must be valid C strings; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ts_local_multiplicity(
    vars: *const c_char,
    components: *const c_char,
    group_order: u64,
    out_multiplicity: *mut u64,
    out_index: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let names: Vec<&str> = text(vars, "vars")?.split(',').map(str::trim).collect();
        let table = vars_from(&names);
        let comps = text(components, "components")?
            .split(',')
            .map(|c| parse_poly(c.trim(), &table))
            .collect::<Result<Vec<_>, _>>()?;
        let report = local_multiplicity(&IndexQuery::new(comps, group_order))?;
        write_out(out_multiplicity, report.multiplicity)?;
        write_string(out_index, format_rational(&report.orbifold_index))
    })
}

/// Runs the command-line interface on `argv[0..argc]` (without the program
/// name) and returns its exit code, or -1 if the arguments are unusable.
/// Either output pointer may be null to discard that stream.
///
/// # Safety
/// `argv` must point to `argc` valid C strings.
#[no_mangle]
pub unsafe extern "C" fn ts_run_cli(
    argc: usize,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        let raw: &[*const c_char] = if argc == 0 {
            &[]
        } else if argv.is_null() {
            return Err(Failure(TsStatus::NullArgument, "argv is null".into()));
        } else {
            std::slice::from_raw_parts(argv, argc)
        };
        let mut args = vec!["toricsing".to_string()];
        for &a in raw {
            args.push(text(a, "argument")?.to_string());
        }
        let out = toricsing::cli::run(args);
        if !out_stdout.is_null() {
            write_string(out_stdout, out.stdout)?;
        }
        if !out_stderr.is_null() {
            write_string(out_stderr, out.stderr)?;
        }
        code = out.code;
        Ok(())
    });
    if status == TsStatus::Ok {
        code
    } else {
        -1
    }
}

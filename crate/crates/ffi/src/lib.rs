//! C ABI for `eigentwist`.
//!
//! Objects are opaque handles created by `et_*_new`/`et_*_from_*` and
//! released with the matching `et_*_free`. Every fallible call returns an
//! `EtStatus`; the message of the last failure on the calling thread is
//! available from `et_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eigentwist::builder::{build, matching_branches, recover_coordinates, verify_relations, LiftMode, SurfaceRepresentation};
use eigentwist::coordinates::EdgeParams;
use eigentwist::moves::{apply_move, Move};
use eigentwist::projective::ProjectivePoint;
use eigentwist::shearbend::one_holed_to_shear;
use eigentwist::surface::{parse_word, Generator, PantsSurface};
use eigentwist::{fixtures, Error, MoebiusMap, C64};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    Domain = 4,
    InvalidMove = 5,
    Reducible = 6,
    Parabolic = 7,
    Singular = 8,
    Coincident = 9,
    Degenerate = 10,
    Panic = 11,
}

impl From<&Error> for EtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Schema(_) => EtStatus::Schema,
            Error::Domain(_) => EtStatus::Domain,
            Error::InvalidMove(_) => EtStatus::InvalidMove,
            Error::Reducible(_) => EtStatus::Reducible,
            Error::Parabolic(_) => EtStatus::Parabolic,
            Error::Singular => EtStatus::Singular,
            Error::Coincident => EtStatus::Coincident,
            Error::Degenerate(_) => EtStatus::Degenerate,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EtComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for EtComplex {
    fn from(z: C64) -> Self {
        EtComplex { re: z.re, im: z.im }
    }
}

impl From<EtComplex> for C64 {
    fn from(z: EtComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// `((a, b), (c, d))`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EtMatrix {
    pub a: EtComplex,
    pub b: EtComplex,
    pub c: EtComplex,
    pub d: EtComplex,
}

impl From<MoebiusMap> for EtMatrix {
    fn from(m: MoebiusMap) -> Self {
        EtMatrix { a: m.a.into(), b: m.b.into(), c: m.c.into(), d: m.d.into() }
    }
}

/// `(a, b, c, z₁, z₂)` of a one-holed torus.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EtShear {
    pub a: EtComplex,
    pub b: EtComplex,
    pub c: EtComplex,
    pub z1: EtComplex,
    pub z2: EtComplex,
}

/// A validated surface with its base triple.
pub struct EtSurface {
    surface: PantsSurface,
    base: [ProjectivePoint; 3],
}

pub struct EtParams {
    params: EdgeParams,
}

pub struct EtRepresentation {
    rep: SurfaceRepresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guarded(f: impl FnOnce() -> Result<(), (EtStatus, String)>) -> EtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EtStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EtStatus::Panic
        }
    }
}

fn lib(e: Error) -> (EtStatus, String) {
    ((&e).into(), e.to_string())
}

fn null(what: &str) -> (EtStatus, String) {
    (EtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (EtStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (EtStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, (EtStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<T>(p: *mut T, what: &str) -> Result<&'static mut T, (EtStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failure on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn et_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn et_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn surface_handle(surface: PantsSurface, base: [ProjectivePoint; 3]) -> Result<EtSurface, (EtStatus, String)> {
    surface.ensure_valid().map_err(lib)?;
    Ok(EtSurface { surface, base })
}

/// Parses and validates a surface JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_surface_from_json(json: *const c_char, out_surface: *mut *mut EtSurface) -> EtStatus {
    guarded(|| {
        let slot = out(out_surface, "out_surface")?;
        let s = PantsSurface::from_json(str_arg(json, "json")?).map_err(lib)?;
        *slot = boxed(surface_handle(s, fixtures::default_base())?);
        Ok(())
    })
}

/// A built-in surface: "four-holed", "one-holed" or "genus2".
///
/// # Safety
/// `name` must be a nul-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_surface_fixture(name: *const c_char, out_surface: *mut *mut EtSurface) -> EtStatus {
    guarded(|| {
        let slot = out(out_surface, "out_surface")?;
        let name = str_arg(name, "name")?;
        let (s, base) = fixtures::by_name(name).ok_or_else(|| (EtStatus::Schema, format!("unknown fixture {name:?}")))?;
        *slot = boxed(surface_handle(s, base)?);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_surface_free(s: *mut EtSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Surface as a newly allocated JSON string (free with `et_string_free`).
///
/// # Safety
/// `s` must be a live handle, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_surface_to_json(s: *const EtSurface, out_json: *mut *mut c_char) -> EtStatus {
    guarded(|| {
        let slot = out(out_json, "out_json")?;
        let s = obj(s, "surface")?;
        *slot = CString::new(s.surface.to_json()).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// An empty parameter set.
#[no_mangle]
pub extern "C" fn et_params_new() -> *mut EtParams {
    boxed(EtParams { params: EdgeParams::default() })
}

/// # Safety
/// `json` must be a nul-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_params_from_json(json: *const c_char, out_params: *mut *mut EtParams) -> EtStatus {
    guarded(|| {
        let slot = out(out_params, "out_params")?;
        let params = EdgeParams::from_json(str_arg(json, "json")?).map_err(lib)?;
        *slot = boxed(EtParams { params });
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_params_to_json(p: *const EtParams, out_json: *mut *mut c_char) -> EtStatus {
    guarded(|| {
        let slot = out(out_json, "out_json")?;
        let p = obj(p, "params")?;
        *slot = CString::new(p.params.to_json()).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn et_params_set_eigen(p: *mut EtParams, edge: usize, e: EtComplex) -> EtStatus {
    guarded(|| {
        out(p, "params")?.params.eigen.insert(edge, e.into());
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn et_params_set_twist(p: *mut EtParams, edge: usize, t: EtComplex) -> EtStatus {
    guarded(|| {
        out(p, "params")?.params.twist.insert(edge, t.into());
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_params_get_eigen(p: *const EtParams, edge: usize, out_e: *mut EtComplex) -> EtStatus {
    guarded(|| {
        let slot = out(out_e, "out_e")?;
        let p = obj(p, "params")?;
        let e = p.params.eigen.get(&edge).ok_or_else(|| (EtStatus::Schema, format!("no eigenvalue for edge {edge}")))?;
        *slot = (*e).into();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_params_get_twist(p: *const EtParams, edge: usize, out_t: *mut EtComplex) -> EtStatus {
    guarded(|| {
        let slot = out(out_t, "out_t")?;
        let p = obj(p, "params")?;
        let t = p.params.twist.get(&edge).ok_or_else(|| (EtStatus::Schema, format!("no twist for edge {edge}")))?;
        *slot = (*t).into();
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_params_free(p: *mut EtParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds the SL(2,C) representation on the surface's stored or default tree.
///
/// # Safety
/// Handles must be live, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn et_build(
    s: *const EtSurface,
    p: *const EtParams,
    out_rep: *mut *mut EtRepresentation,
) -> EtStatus {
    guarded(|| {
        let slot = out(out_rep, "out_rep")?;
        let s = obj(s, "surface")?;
        let p = obj(p, "params")?;
        let tree = s.surface.tree_or_default().map_err(lib)?;
        let rep = build(&s.surface, &tree, &p.params, &s.base, LiftMode::Sl).map_err(lib)?;
        *slot = boxed(EtRepresentation { rep });
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn et_rep_free(r: *mut EtRepresentation) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of presentation generators.
///
/// # Safety
/// `r` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn et_rep_generator_count(r: *const EtRepresentation) -> usize {
    r.as_ref().map_or(0, |r| r.rep.images.len())
}

/// Image of a generator named like "alpha1", "beta2", "delta1".
///
/// # Safety
/// `r` must be a live handle, `name` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn et_rep_generator(r: *const EtRepresentation, name: *const c_char, out_m: *mut EtMatrix) -> EtStatus {
    guarded(|| {
        let slot = out(out_m, "out_m")?;
        let r = obj(r, "rep")?;
        let g: Generator = str_arg(name, "name")?.parse().map_err(lib)?;
        let m = r.rep.images.get(&g).ok_or_else(|| (EtStatus::Schema, format!("no generator {g}")))?;
        *slot = (*m).into();
        Ok(())
    })
}

/// Trace of a word such as "alpha1 beta1^-1".
///
/// # Safety
/// `r` must be a live handle, `word` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn et_rep_trace(r: *const EtRepresentation, word: *const c_char, out_tr: *mut EtComplex) -> EtStatus {
    guarded(|| {
        let slot = out(out_tr, "out_tr")?;
        let r = obj(r, "rep")?;
        let w = parse_word(str_arg(word, "word")?).map_err(lib)?;
        if let Some(l) = w.iter().find(|l| !r.rep.images.contains_key(&l.gen)) {
            return Err((EtStatus::Schema, format!("no generator {}", l.gen)));
        }
        *slot = r.rep.trace(&w).into();
        Ok(())
    })
}

/// Largest relation residual.
///
/// # Safety
/// `r` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn et_rep_max_residual(r: *const EtRepresentation, out_res: *mut f64) -> EtStatus {
    guarded(|| {
        let slot = out(out_res, "out_res")?;
        let r = obj(r, "rep")?;
        *slot = verify_relations(&r.rep).iter().map(|x| x.residual).fold(0.0, f64::max);
        Ok(())
    })
}

/// Coordinates of a representation. With `hint` non-null the eigenvalue
/// branches nearest to its eigenvalues are chosen, otherwise `|e| > 1`.
///
/// # Safety
/// Handles must be live (`hint` may be null), `out` writable.
#[no_mangle]
pub unsafe extern "C" fn et_recover(
    r: *const EtRepresentation,
    s: *const EtSurface,
    hint: *const EtParams,
    out_params: *mut *mut EtParams,
) -> EtStatus {
    guarded(|| {
        let slot = out(out_params, "out_params")?;
        let r = obj(r, "rep")?;
        let s = obj(s, "surface")?;
        let choice = hint.as_ref().map(|h| matching_branches(&h.params)).unwrap_or_default();
        let tree = s.surface.tree_or_default().map_err(lib)?;
        let params = recover_coordinates(&r.rep, &s.surface, &tree, &choice).map_err(lib)?;
        *slot = boxed(EtParams { params });
        Ok(())
    })
}

/// Applies a move given as JSON, e.g. `{"kind":"reverse_edge","target":1}`.
///
/// # Safety
/// Handles must be live, `move_json` nul-terminated, outputs writable.
#[no_mangle]
pub unsafe extern "C" fn et_apply_move(
    s: *const EtSurface,
    p: *const EtParams,
    move_json: *const c_char,
    out_surface: *mut *mut EtSurface,
    out_params: *mut *mut EtParams,
) -> EtStatus {
    guarded(|| {
        let s_slot = out(out_surface, "out_surface")?;
        let p_slot = out(out_params, "out_params")?;
        let s = obj(s, "surface")?;
        let p = obj(p, "params")?;
        let mv: Move = serde_json::from_str(str_arg(move_json, "move_json")?)
            .map_err(|e| (EtStatus::Schema, e.to_string()))?;
        let (s1, p1) = apply_move(&s.surface, &p.params, &mv).map_err(lib)?;
        *s_slot = boxed(EtSurface { surface: s1, base: s.base });
        *p_slot = boxed(EtParams { params: p1 });
        Ok(())
    })
}

/// Shear-bend coordinates of a one-holed torus.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn et_one_holed_to_shear(e1: EtComplex, e2: EtComplex, t1: EtComplex, out_shear: *mut EtShear) -> EtStatus {
    guarded(|| {
        let slot = out(out_shear, "out_shear")?;
        let sh = one_holed_to_shear(e1.into(), e2.into(), t1.into()).map_err(lib)?;
        *slot = EtShear { a: sh.a.into(), b: sh.b.into(), c: sh.c.into(), z1: sh.z1.into(), z2: sh.z2.into() };
        Ok(())
    })
}


//! C ABI over `rightgroups`.
//!
//! Semigroups cross the boundary as opaque [`RgSemigroup`] handles created by
//! [`rg_semigroup_parse`] or [`rg_semigroup_from_table`] and released with
//! [`rg_semigroup_free`]. Every fallible call returns an [`RgStatus`]; on
//! failure [`rg_last_error`] describes the most recent error on the calling
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rightgroups::enumeration::census;
use rightgroups::morphisms::{enumerate_hom_structured, HomSearch};
use rightgroups::{check_right_group, CayleyTable, Error, FiniteSemigroup, RightGroup};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    NotAssociative = 3,
    NotARightGroup = 4,
    OrderTooLarge = 5,
    BudgetExceeded = 6,
    InvalidInput = 7,
    Internal = 8,
}

/// Opaque handle to a validated finite semigroup.
pub struct RgSemigroup {
    inner: FiniteSemigroup,
}

/// Summary of a right-group decomposition.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RgDecomposition {
    pub order: usize,
    pub idempotent_count: usize,
    pub base_idempotent: usize,
    pub group_order: usize,
    pub group_is_abelian: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RgStatus {
    match e {
        Error::Parse { .. } | Error::EntryOutOfRange { .. } => RgStatus::Parse,
        Error::NotAssociative { .. } => RgStatus::NotAssociative,
        Error::NotARightGroup | Error::EmptySemigroup => RgStatus::NotARightGroup,
        Error::OrderTooLarge { .. } => RgStatus::OrderTooLarge,
        Error::BudgetExceeded { .. } => RgStatus::BudgetExceeded,
        _ => RgStatus::InvalidInput,
    }
}

/// Runs `body`, turning errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (RgStatus, String)>) -> RgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            RgStatus::Internal
        }
    }
}

fn lib(e: Error) -> (RgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (RgStatus, String) {
    (RgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(
    s: *const RgSemigroup,
    what: &str,
) -> Result<&'a FiniteSemigroup, (RgStatus, String)> {
    unsafe { s.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| null(what))
}

fn boxed(s: FiniteSemigroup) -> *mut RgSemigroup {
    Box::into_raw(Box::new(RgSemigroup { inner: s }))
}

/// Parses a Cayley table in the text format into `*out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_semigroup_parse(
    text: *const c_char,
    out: *mut *mut RgSemigroup,
) -> RgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|e| (RgStatus::Parse, e.to_string()))?;
        let s = FiniteSemigroup::parse(text).map_err(lib)?;
        unsafe { *out = boxed(s) };
        Ok(())
    })
}

/// Builds a semigroup from `n * n` row-major entries.
///
/// # Safety
/// `entries` must point to `n * n` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rg_semigroup_from_table(
    n: usize,
    entries: *const usize,
    out: *mut *mut RgSemigroup,
) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if entries.is_null() && n > 0 {
            return Err(null("entries"));
        }
        let cells = n
            .checked_mul(n)
            .ok_or((RgStatus::InvalidInput, "order overflows".to_string()))?;
        let data = if cells == 0 {
            Vec::new()
        } else {
            unsafe { std::slice::from_raw_parts(entries, cells) }.to_vec()
        };
        let table = CayleyTable::new(n, data).map_err(lib)?;
        let s = FiniteSemigroup::validate(table).map_err(lib)?;
        unsafe { *out = boxed(s) };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_semigroup_free(s: *mut RgSemigroup) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rg_semigroup_order(s: *const RgSemigroup) -> usize {
    unsafe { s.as_ref() }.map_or(0, |h| h.inner.order())
}

/// The table in the text format; release with [`rg_string_free`].
/// Returns null for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rg_semigroup_to_text(s: *const RgSemigroup) -> *mut c_char {
    match unsafe { s.as_ref() } {
        Some(h) => CString::new(h.inner.to_text()).expect("ascii").into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `text` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Writes whether `s` is a right group and how many idempotents it has.
/// Fails with `Internal` if the independent condition checks disagree.
///
/// # Safety
/// `s` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rg_check(
    s: *const RgSemigroup,
    is_right_group: *mut bool,
    idempotent_count: *mut usize,
) -> RgStatus {
    guard(|| {
        let s = unsafe { handle(s, "semigroup") }?;
        if is_right_group.is_null() || idempotent_count.is_null() {
            return Err(null("out"));
        }
        let report = check_right_group(s).map_err(lib)?;
        if !report.all_agree() {
            return Err((RgStatus::Internal, "right-group conditions disagree".into()));
        }
        unsafe {
            *is_right_group = report.is_right_group();
            *idempotent_count = s.idempotents().len();
        }
        Ok(())
    })
}

/// Splits a right group as group times right zero semigroup.
///
/// # Safety
/// `s` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rg_decompose(
    s: *const RgSemigroup,
    out: *mut RgDecomposition,
) -> RgStatus {
    guard(|| {
        let s = unsafe { handle(s, "semigroup") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let rg = RightGroup::new(s).map_err(lib)?;
        let d = rg.decompose();
        unsafe {
            *out = RgDecomposition {
                order: rg.order(),
                idempotent_count: d.rzs_part.len(),
                base_idempotent: d.e0,
                group_order: d.group_part.order(),
                group_is_abelian: d.group_part.group.is_abelian(),
            };
        }
        Ok(())
    })
}

/// Number of morphisms `dom -> cod`: from the structure theory when both are
/// right groups, otherwise by search scanning at most `budget` maps.
///
/// # Safety
/// Both handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_count(
    dom: *const RgSemigroup,
    cod: *const RgSemigroup,
    budget: u64,
    out: *mut u64,
) -> RgStatus {
    guard(|| {
        let dom = unsafe { handle(dom, "dom") }?;
        let cod = unsafe { handle(cod, "cod") }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let count = match (RightGroup::new(dom), RightGroup::new(cod)) {
            (Ok(a), Ok(b)) => enumerate_hom_structured(&a, &b).len(),
            _ => HomSearch::new(dom, cod)
                .budget(budget as u128)
                .count()
                .map_err(lib)?,
        };
        unsafe { *out = count as u64 };
        Ok(())
    })
}

/// Right groups of each order `1..=n_max` up to isomorphism, written to
/// `counts[0..n_max]`.
///
/// # Safety
/// `counts` must have room for `n_max` values.
#[no_mangle]
pub unsafe extern "C" fn rg_census(n_max: usize, counts: *mut usize) -> RgStatus {
    guard(|| {
        if counts.is_null() && n_max > 0 {
            return Err(null("counts"));
        }
        let rows = census(n_max).map_err(lib)?;
        for (i, row) in rows.iter().enumerate() {
            unsafe { *counts.add(i) = row.count_structured };
        }
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

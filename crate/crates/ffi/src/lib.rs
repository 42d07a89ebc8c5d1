//! C ABI over the `racks` library.
//!
//! Racks and censuses cross the boundary as opaque heap handles that the caller
//! releases with the matching `*_free` function. Every fallible call returns a
//! [`RacksStatus`]; the message of the most recent failure on the calling thread is
//! available through [`racks_last_error_message`]. Table entries are `uint32_t`
//! values in row-major order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use racks::enumerate::{canonical_form, enumerate, CensusRecord, EnumerateError, SearchConfig};
use racks::free::{free_rack_eval, FreeError, RackWord};
use racks::functors::{perm_to_rack, power_op, quandleify, trivial_quandle};
use racks::homsearch::homs;
use racks::identities::check_rack;
use racks::{FiniteRack, Permutation, StructureKind, ValidationError};

/// Status codes; the first four match the exit codes of the `racks` binary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RacksStatus {
    Ok = 0,
    AxiomViolation = 1,
    InputError = 2,
    CapExceeded = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RacksKind {
    Rack = 0,
    Quandle = 1,
    Involutary = 2,
    Kei = 3,
}

impl From<RacksKind> for StructureKind {
    fn from(k: RacksKind) -> Self {
        match k {
            RacksKind::Rack => StructureKind::Rack,
            RacksKind::Quandle => StructureKind::Quandle,
            RacksKind::Involutary => StructureKind::Involutary,
            RacksKind::Kei => StructureKind::Kei,
        }
    }
}

impl From<StructureKind> for RacksKind {
    fn from(k: StructureKind) -> Self {
        match k {
            StructureKind::Rack => RacksKind::Rack,
            StructureKind::Quandle => RacksKind::Quandle,
            StructureKind::Involutary => RacksKind::Involutary,
            StructureKind::Kei => RacksKind::Kei,
        }
    }
}

/// Opaque handle to a validated finite rack.
pub struct RacksRack(FiniteRack);

/// Opaque handle to a census result.
pub struct RacksCensus(CensusRecord);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: RacksStatus, message: impl ToString) -> RacksStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.to_string());
    status
}

fn guard(f: impl FnOnce() -> RacksStatus) -> RacksStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(RacksStatus::Internal, "internal panic"),
    }
}

fn validation_status(e: &ValidationError) -> RacksStatus {
    match e {
        ValidationError::Axiom(_) => RacksStatus::AxiomViolation,
        ValidationError::Input(_) => RacksStatus::InputError,
    }
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> RacksStatus {
    *out = Box::into_raw(Box::new(value));
    RacksStatus::Ok
}

unsafe fn write_u32s(values: impl ExactSizeIterator<Item = usize>, buf: *mut u32, len: usize) -> RacksStatus {
    if values.len() > len {
        return fail(RacksStatus::BufferTooSmall, format!("buffer holds {len} entries, {} needed", values.len()));
    }
    if values.len() > 0 && buf.is_null() {
        return fail(RacksStatus::NullPointer, "buffer is null");
    }
    for (i, v) in values.enumerate() {
        *buf.add(i) = v as u32;
    }
    RacksStatus::Ok
}

/// Copies the last error message of this thread into `buf` (NUL-terminated, truncated
/// to `len`). Returns the buffer size needed for the full message.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn racks_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len() + 1
    })
}

/// Validates an `n × n` row-major table.
///
/// # Safety
/// `table` must be valid for `n * n` reads; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_new(n: usize, table: *const u32, out: *mut *mut RacksRack) -> RacksStatus {
    guard(|| {
        if out.is_null() {
            return fail(RacksStatus::NullPointer, "out is null");
        }
        let Some(cells) = n.checked_mul(n) else {
            return fail(RacksStatus::InputError, "order overflows");
        };
        let Some(entries) = slice(table, cells) else {
            return fail(RacksStatus::NullPointer, "table is null");
        };
        match FiniteRack::from_flat(n, entries.iter().map(|&v| v as usize).collect()) {
            Ok(r) => write_handle(out, RacksRack(r)),
            Err(e) => fail(validation_status(&e), e),
        }
    })
}

/// # Safety
/// `rack` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_free(rack: *mut RacksRack) {
    if !rack.is_null() {
        drop(Box::from_raw(rack));
    }
}

/// Order of the rack, or 0 for a null handle.
///
/// # Safety
/// `rack` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_order(rack: *const RacksRack) -> usize {
    rack.as_ref().map_or(0, |r| r.0.order())
}

/// # Safety
/// `rack` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_op(rack: *const RacksRack, x: usize, y: usize, out: *mut usize) -> RacksStatus {
    guard(|| {
        let (Some(r), false) = (rack.as_ref(), out.is_null()) else {
            return fail(RacksStatus::NullPointer, "null argument");
        };
        let n = r.0.order();
        if x >= n || y >= n {
            return fail(RacksStatus::InputError, format!("({x},{y}) is outside 0..{n}"));
        }
        *out = r.0.op(x, y);
        RacksStatus::Ok
    })
}

/// Copies the row-major table into `buf`, which must hold `n * n` entries.
///
/// # Safety
/// `rack` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_table(rack: *const RacksRack, buf: *mut u32, len: usize) -> RacksStatus {
    guard(|| match rack.as_ref() {
        None => fail(RacksStatus::NullPointer, "rack is null"),
        Some(r) => write_u32s(r.0.table().iter().copied(), buf, len),
    })
}

/// Writes `F(x) = x ▷ x` for every `x` into `buf`, which must hold `n` entries.
///
/// # Safety
/// `rack` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_canonical_automorphism(
    rack: *const RacksRack,
    buf: *mut u32,
    len: usize,
) -> RacksStatus {
    guard(|| match rack.as_ref() {
        None => fail(RacksStatus::NullPointer, "rack is null"),
        Some(r) => write_u32s(r.0.canonical_automorphism().into_images().into_iter(), buf, len),
    })
}

/// The strongest kind the rack belongs to.
///
/// # Safety
/// `rack` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_kind(rack: *const RacksRack) -> RacksKind {
    rack.as_ref().map_or(RacksKind::Rack, |r| r.0.kind().into())
}

/// # Safety
/// `rack` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_is_quandle(rack: *const RacksRack) -> bool {
    rack.as_ref().is_some_and(|r| r.0.is_quandle())
}

/// # Safety
/// `rack` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_is_involutary(rack: *const RacksRack) -> bool {
    rack.as_ref().is_some_and(|r| r.0.is_involutary())
}

/// # Safety
/// `rack` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_is_kei(rack: *const RacksRack) -> bool {
    rack.as_ref().is_some_and(|r| r.0.is_kei())
}

/// `ℓ_x^m = id` for every `x`.
///
/// # Safety
/// `rack` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_is_power_trivial(rack: *const RacksRack, m: i64) -> bool {
    rack.as_ref().is_some_and(|r| r.0.is_power_trivial(m))
}

/// Literal table equality.
///
/// # Safety
/// Both arguments must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_equal(a: *const RacksRack, b: *const RacksRack) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

unsafe fn derive(rack: *const RacksRack, out: *mut *mut RacksRack, f: impl FnOnce(&FiniteRack) -> Result<FiniteRack, (RacksStatus, String)>) -> RacksStatus {
    guard(|| {
        let (Some(r), false) = (rack.as_ref(), out.is_null()) else {
            return fail(RacksStatus::NullPointer, "null argument");
        };
        match f(&r.0) {
            Ok(v) => write_handle(out, RacksRack(v)),
            Err((status, msg)) => fail(status, msg),
        }
    })
}

/// `x □ y = F⁻¹(x ▷ y)`.
///
/// # Safety
/// `rack` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_quandleify(rack: *const RacksRack, out: *mut *mut RacksRack) -> RacksStatus {
    derive(rack, out, |r| Ok(quandleify(r)))
}

/// `Ψ^m`: `x ▷^m y = ℓ_x^m(y)`.
///
/// # Safety
/// `rack` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_power(rack: *const RacksRack, m: i64, out: *mut *mut RacksRack) -> RacksStatus {
    derive(rack, out, |r| Ok(power_op(r, m)))
}

/// Lexicographically minimal relabeling (orders up to 8).
///
/// # Safety
/// `rack` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_canonical_form(rack: *const RacksRack, out: *mut *mut RacksRack) -> RacksStatus {
    derive(rack, out, |r| canonical_form(r).map_err(|e| (RacksStatus::CapExceeded, e.to_string())))
}

/// Transports the structure along the permutation `perm` of length `n`.
///
/// # Safety
/// `rack` must be a live handle, `perm` valid for `n` reads where `n` is the rack's
/// order, and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_rack_relabel(
    rack: *const RacksRack,
    perm: *const u32,
    out: *mut *mut RacksRack,
) -> RacksStatus {
    let n = racks_rack_order(rack);
    let Some(images) = slice(perm, n) else {
        return fail(RacksStatus::NullPointer, "perm is null");
    };
    let images: Vec<usize> = images.iter().map(|&v| v as usize).collect();
    derive(rack, out, |r| {
        let p = Permutation::new(images).map_err(|e| (RacksStatus::InputError, e.to_string()))?;
        r.apply_relabeling(&p).map_err(|e| (RacksStatus::InputError, e.to_string()))
    })
}

/// The permutation rack `x ▷ y = f(y)`.
///
/// # Safety
/// `images` must be valid for `n` reads and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_perm_to_rack(n: usize, images: *const u32, out: *mut *mut RacksRack) -> RacksStatus {
    guard(|| {
        if out.is_null() {
            return fail(RacksStatus::NullPointer, "out is null");
        }
        let Some(images) = slice(images, n) else {
            return fail(RacksStatus::NullPointer, "images is null");
        };
        match Permutation::new(images.iter().map(|&v| v as usize).collect()) {
            Ok(f) => write_handle(out, RacksRack(perm_to_rack(&f))),
            Err(e) => fail(RacksStatus::InputError, e),
        }
    })
}

/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_trivial_quandle(n: usize, out: *mut *mut RacksRack) -> RacksStatus {
    guard(|| {
        if out.is_null() {
            return fail(RacksStatus::NullPointer, "out is null");
        }
        write_handle(out, RacksRack(trivial_quandle(n)))
    })
}

/// Number of rack morphisms `source → target` (orders up to 5).
///
/// # Safety
/// Both handles must be live and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_hom_count(
    source: *const RacksRack,
    target: *const RacksRack,
    out: *mut usize,
) -> RacksStatus {
    guard(|| {
        let (Some(s), Some(t), false) = (source.as_ref(), target.as_ref(), out.is_null()) else {
            return fail(RacksStatus::NullPointer, "null argument");
        };
        match homs(&s.0, &t.0) {
            Ok(h) => {
                *out = h.len();
                RacksStatus::Ok
            }
            Err(e) => fail(RacksStatus::CapExceeded, e),
        }
    })
}

/// Runs the identity suite; `all_hold` receives whether every identity held.
///
/// # Safety
/// `rack` must be a live handle and `all_hold` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_check_identities(rack: *const RacksRack, all_hold: *mut bool) -> RacksStatus {
    guard(|| {
        let (Some(r), false) = (rack.as_ref(), all_hold.is_null()) else {
            return fail(RacksStatus::NullPointer, "null argument");
        };
        let report = check_rack(&r.0);
        if let Some(f) = report.first_failure() {
            LAST_ERROR.with(|e| *e.borrow_mut() = format!("{}: {}", f.name, f.failure.as_deref().unwrap_or("")));
        }
        *all_hold = report.all_hold();
        RacksStatus::Ok
    })
}

/// Evaluates a rack word such as `(x > (x <| x))` in the free rack on one generator.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_free_rack_eval(word: *const c_char, window: i64, out: *mut i64) -> RacksStatus {
    guard(|| {
        if word.is_null() || out.is_null() {
            return fail(RacksStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(word).to_str() else {
            return fail(RacksStatus::InputError, "word is not UTF-8");
        };
        let parsed: RackWord = match text.parse() {
            Ok(w) => w,
            Err(e) => return fail(RacksStatus::InputError, e),
        };
        match free_rack_eval(&parsed, window) {
            Ok(v) => {
                *out = v.value();
                RacksStatus::Ok
            }
            Err(e @ FreeError::WindowExceeded { .. }) => fail(RacksStatus::CapExceeded, e),
            Err(e) => fail(RacksStatus::InputError, e),
        }
    })
}

/// Runs a census of the given order and kind.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_census_new(
    order: usize,
    kind: RacksKind,
    workers: usize,
    out: *mut *mut RacksCensus,
) -> RacksStatus {
    guard(|| {
        if out.is_null() {
            return fail(RacksStatus::NullPointer, "out is null");
        }
        match enumerate(&SearchConfig::new(order, kind.into()).workers(workers)) {
            Ok(record) => write_handle(out, RacksCensus(record)),
            Err(e @ EnumerateError::InvalidConfig(_)) => fail(RacksStatus::InputError, e),
            Err(e) => fail(RacksStatus::CapExceeded, e),
        }
    })
}

/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_census_free(census: *mut RacksCensus) {
    if !census.is_null() {
        drop(Box::from_raw(census));
    }
}

/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_census_labeled_count(census: *const RacksCensus) -> u64 {
    census.as_ref().map_or(0, |c| c.0.labeled_count)
}

/// # Safety
/// `census` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn racks_census_iso_count(census: *const RacksCensus) -> usize {
    census.as_ref().map_or(0, |c| c.0.iso_count)
}

/// A new handle to representative `index`; release it with `racks_rack_free`.
///
/// # Safety
/// `census` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn racks_census_representative(
    census: *const RacksCensus,
    index: usize,
    out: *mut *mut RacksRack,
) -> RacksStatus {
    guard(|| {
        let (Some(c), false) = (census.as_ref(), out.is_null()) else {
            return fail(RacksStatus::NullPointer, "null argument");
        };
        match c.0.representatives.get(index) {
            Some(r) => write_handle(out, RacksRack(r.clone())),
            None => fail(RacksStatus::InputError, format!("index {index} is outside 0..{}", c.0.iso_count)),
        }
    })
}

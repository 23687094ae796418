//! C ABI for `shortlrc`.
//!
//! Codes live behind an opaque [`ShortlrcCode`] handle. Every fallible call
//! returns a [`ShortlrcStatus`]; on failure the message is available from
//! [`shortlrc_last_error`] on the same thread. Symbols cross the boundary as
//! `uint32_t` canonical integers and coordinate indices are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shortlrc::bounds;
use shortlrc::codefile;
use shortlrc::repair::{decode_erasures, repair_coordinate};
use shortlrc::verify::{verify, VerifyOptions};
use shortlrc::{build_code, validate_params, CodeSpec, Error, FieldElement};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShortlrcStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Parameters (q, n, k, r) rejected.
    InvalidParams = 2,
    /// Symbols, lengths, indices or JSON malformed.
    InvalidInput = 3,
    /// Erasure pattern cannot be decoded.
    Unrecoverable = 4,
    /// Received word is not consistent with any codeword.
    InconsistentWord = 5,
    /// Verification would exceed the enumeration budget.
    BudgetExceeded = 6,
    /// A library invariant failed.
    Internal = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

/// Opaque code handle.
pub struct ShortlrcCode {
    spec: CodeSpec,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShortlrcBounds {
    pub singleton_like: i64,
    /// Valid only when `improved_applicable` is true.
    pub improved: i64,
    pub improved_applicable: bool,
    pub rate_bound_holds: bool,
    pub delta: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShortlrcVerifyReport {
    pub rank_ok: bool,
    pub distance_found: usize,
    pub distance_expected: usize,
    pub locality_ok: bool,
    pub shortening_ok: bool,
    pub erasure_ok: bool,
    pub enumerated_words: u64,
    pub all_passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let s = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> ShortlrcStatus {
    use Error::*;
    match e {
        NotAPrimePower(_)
        | UnsupportedField(_)
        | NoSubgroup { .. }
        | TooManyBlocks { .. }
        | SEqualsOne
        | FieldTooSmall { .. }
        | RateBoundViolated { .. }
        | InvalidParams(_) => ShortlrcStatus::InvalidParams,
        Unrecoverable { .. } => ShortlrcStatus::Unrecoverable,
        InconsistentWord => ShortlrcStatus::InconsistentWord,
        BudgetExceeded { .. } => ShortlrcStatus::BudgetExceeded,
        InternalInconsistency(_) => ShortlrcStatus::Internal,
        _ => ShortlrcStatus::InvalidInput,
    }
}

type Outcome = Result<(), (ShortlrcStatus, String)>;

fn fail(e: Error) -> (ShortlrcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ShortlrcStatus, String) {
    (ShortlrcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any error and converts panics into a status.
fn guard(body: impl FnOnce() -> Outcome) -> ShortlrcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ShortlrcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic in shortlrc");
            ShortlrcStatus::Panic
        }
    }
}

unsafe fn code_ref<'a>(code: *const ShortlrcCode) -> Result<&'a CodeSpec, (ShortlrcStatus, String)> {
    code.as_ref().map(|c| &c.spec).ok_or_else(|| null("code"))
}

unsafe fn input<'a>(ptr: *const u32, len: usize, what: &str) -> Result<&'a [u32], (ShortlrcStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn symbols(spec: &CodeSpec, xs: &[u32]) -> Result<Vec<FieldElement>, (ShortlrcStatus, String)> {
    xs.iter()
        .map(|&x| spec.field().element(x as u64).map_err(fail))
        .collect()
}

unsafe fn write_out(out: *mut u32, out_len: usize, xs: &[FieldElement]) -> Outcome {
    if out_len < xs.len() {
        return Err((
            ShortlrcStatus::InvalidInput,
            format!("output buffer holds {out_len} symbols, need {}", xs.len()),
        ));
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    for (i, x) in xs.iter().enumerate() {
        *out.add(i) = x.value();
    }
    Ok(())
}

unsafe fn store_handle(out: *mut *mut ShortlrcCode, spec: CodeSpec) {
    *out = Box::into_raw(Box::new(ShortlrcCode { spec }));
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `shortlrc_*` call on this thread.
#[no_mangle]
pub extern "C" fn shortlrc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the code for (q, n, k, r) and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_new(
    q: u64,
    n: usize,
    k: usize,
    r: usize,
    out: *mut *mut ShortlrcCode,
) -> ShortlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let params = validate_params(q, n, k, r).map_err(fail)?;
        let spec = build_code(&params).map_err(fail)?;
        store_handle(out, spec);
        Ok(())
    })
}

/// Loads a code from its JSON spec text (NUL-terminated UTF-8).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_from_json(json: *const c_char, out: *mut *mut ShortlrcCode) -> ShortlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (ShortlrcStatus::InvalidInput, format!("spec is not UTF-8: {e}")))?;
        let spec = codefile::spec_from_json(text).map_err(fail)?;
        store_handle(out, spec);
        Ok(())
    })
}

/// Serializes the code to JSON. Free the result with [`shortlrc_string_free`].
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_to_json(code: *const ShortlrcCode, out: *mut *mut c_char) -> ShortlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec = code_ref(code)?;
        let json = CString::new(codefile::spec_to_json(spec)).expect("JSON has no NUL bytes");
        *out = json.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`shortlrc_code_to_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `code` must come from a constructor in this library or be null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_free(code: *mut ShortlrcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Applies `f` to a live handle; 0 for null.
unsafe fn with_code(code: *const ShortlrcCode, f: impl FnOnce(&CodeSpec) -> usize) -> usize {
    code.as_ref().map_or(0, |c| f(&c.spec))
}

/// Code length n. Returns 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_length(code: *const ShortlrcCode) -> usize {
    with_code(code, |s| s.n())
}

/// Dimension k. Returns 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_dimension(code: *const ShortlrcCode) -> usize {
    with_code(code, |s| s.k())
}

/// Locality r. Returns 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_locality(code: *const ShortlrcCode) -> usize {
    with_code(code, |s| s.params().r)
}

/// Field order q. Returns 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_field_order(code: *const ShortlrcCode) -> usize {
    with_code(code, |s| s.params().q)
}

/// Designed minimum distance. Returns 0 for a null handle.
///
/// # Safety
/// `code` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_code_distance(code: *const ShortlrcCode) -> usize {
    with_code(code, |s| bounds::predicted_distance(s.params()) as usize)
}

/// Encodes `k` message symbols into `n` codeword symbols.
///
/// # Safety
/// `msg` must point to `msg_len` values and `out` to `out_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_encode(
    code: *const ShortlrcCode,
    msg: *const u32,
    msg_len: usize,
    out: *mut u32,
    out_len: usize,
) -> ShortlrcStatus {
    guard(|| {
        let spec = code_ref(code)?;
        let msg = symbols(spec, input(msg, msg_len, "msg")?)?;
        let word = spec.encode(&msg).map_err(fail)?;
        write_out(out, out_len, &word)
    })
}

/// Recovers coordinate `index` (1-based) from its repair group. The value
/// currently stored at `index` in `word` is ignored.
///
/// # Safety
/// `word` must point to `len` values and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_repair(
    code: *const ShortlrcCode,
    word: *const u32,
    len: usize,
    index: usize,
    value: *mut u32,
) -> ShortlrcStatus {
    guard(|| {
        let spec = code_ref(code)?;
        if value.is_null() {
            return Err(null("value"));
        }
        let word = symbols(spec, input(word, len, "word")?)?;
        let rep = repair_coordinate(spec, &word, index).map_err(fail)?;
        *value = rep.value.value();
        Ok(())
    })
}

/// Decodes a word with erasures. `erased[i] != 0` marks position `i` as
/// erased; its symbol in `word` is then ignored.
///
/// # Safety
/// `word` and `erased` must point to `len` values; `out` to `out_len`.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_decode(
    code: *const ShortlrcCode,
    word: *const u32,
    erased: *const u8,
    len: usize,
    out: *mut u32,
    out_len: usize,
) -> ShortlrcStatus {
    guard(|| {
        let spec = code_ref(code)?;
        let raw = input(word, len, "word")?;
        if len > 0 && erased.is_null() {
            return Err(null("erased"));
        }
        let mask = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(erased, len)
        };
        let received = raw
            .iter()
            .zip(mask)
            .map(|(&x, &e)| {
                if e != 0 {
                    Ok(None)
                } else {
                    spec.field().element(x as u64).map(Some).map_err(fail)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let msg = decode_erasures(spec, &received).map_err(fail)?;
        write_out(out, out_len, &msg)
    })
}

/// Bound calculator for (n, k, r), independent of any field.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_bounds(n: usize, k: usize, r: usize, out: *mut ShortlrcBounds) -> ShortlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if n == 0 || k == 0 || r == 0 || k > n {
            return Err(fail(Error::InvalidParams("need positive n, k, r with k <= n".into())));
        }
        let t = match n % (r + 1) {
            0 => 0,
            s => r + 1 - s,
        };
        let improved = bounds::improved_bound(n, k, r);
        *out = ShortlrcBounds {
            singleton_like: bounds::singleton_like_bound(n, k, r),
            improved: improved.unwrap_or(0),
            improved_applicable: improved.is_some(),
            rate_bound_holds: bounds::rate_bound_holds(n, k, r),
            delta: bounds::delta(k, t, r),
        };
        Ok(())
    })
}

/// Runs the brute-force verification suite. A report whose checks fail is
/// still `Ok`; inspect `all_passed`.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn shortlrc_verify(
    code: *const ShortlrcCode,
    budget: u64,
    seed: u64,
    shortening_trials: usize,
    out: *mut ShortlrcVerifyReport,
) -> ShortlrcStatus {
    guard(|| {
        let spec = code_ref(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let options = VerifyOptions {
            budget,
            seed,
            shortening_trials,
        };
        let rep = verify(spec, &options).map_err(fail)?;
        *out = ShortlrcVerifyReport {
            rank_ok: rep.rank_ok,
            distance_found: rep.distance_found,
            distance_expected: rep.distance_expected,
            locality_ok: rep.locality_ok,
            shortening_ok: rep.shortening_ok,
            erasure_ok: rep.erasure_ok,
            enumerated_words: rep.enumerated_words,
            all_passed: rep.all_passed(),
        };
        Ok(())
    })
}

//! C ABI for the `kaj` library.
//!
//! Conventions: every fallible function returns a [`KajStatus`] and writes
//! its result through out-pointers; `KAJ_STATUS_OK` means the out-values are
//! valid and owned by the caller. Ciphertexts and key streams are opaque
//! handles freed with their matching `*_free` functions; strings come back
//! NUL-terminated and are freed with [`kaj_string_free`]; byte buffers carry
//! an explicit length and are freed with [`kaj_bytes_free`]. On any failure
//! a human-readable description is available from [`kaj_last_error_message`]
//! until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;
use std::slice;

use kaj::codec::{
    parse_ciphertext, parse_key, render_legacy_glyphs, serialize_ciphertext, serialize_key,
};
use kaj::grammar::{parse_image_expr, parse_time_expr};
use kaj::{crack, decrypt, encrypt, CipherParams, Ciphertext, Error, KeyStream};

/// An encrypted remainder stream plus its public parameters.
pub struct KajCiphertext {
    inner: Ciphertext,
}

/// A secret quotient stream.
pub struct KajKeyStream {
    inner: KeyStream,
}

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KajStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument,
    /// A string argument was not valid UTF-8.
    InvalidUtf8,
    /// beta/modulus outside their domains, or not decimal integers.
    InvalidParams,
    /// The message (or stream) was empty.
    EmptyMessage,
    /// An expression failed to parse.
    ParseError,
    /// A ciphertext or key file failed to parse.
    FormatError,
    /// An image atom with no preimage under the inverse table.
    MalformedImage,
    /// Ciphertext and key lengths disagree.
    LengthMismatch,
    /// Integrity failure: a coefficient was not divisible by its position
    /// divisor.
    DivisibilityError,
    /// Integrity failure: a recovered symbol exceeded a byte.
    ByteRangeError,
    /// A remainder was not below the modulus.
    RemainderOutOfRange,
    /// Recovered bytes were not valid text.
    InvalidEncoding,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message =
        CString::new(message).unwrap_or_else(|_| CString::new("error message had NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: KajStatus, message: String) -> KajStatus {
    set_last_error(message);
    status
}

fn fail_with(error: Error) -> KajStatus {
    let status = match &error {
        Error::EmptyMessage => KajStatus::EmptyMessage,
        Error::InvalidParams(_) => KajStatus::InvalidParams,
        Error::MalformedImage(_) => KajStatus::MalformedImage,
        Error::RemainderOutOfRange { .. } => KajStatus::RemainderOutOfRange,
        Error::Divisibility { .. } => KajStatus::DivisibilityError,
        Error::ByteRange { .. } => KajStatus::ByteRangeError,
        Error::LengthMismatch { .. } => KajStatus::LengthMismatch,
        Error::Format { .. } => KajStatus::FormatError,
        Error::Parse(_) => KajStatus::ParseError,
        Error::InvalidEncoding => KajStatus::InvalidEncoding,
    };
    fail(status, error.to_string())
}

/// Most recent error description for this thread, or NULL when the last
/// call succeeded. The pointer stays valid until the next `kaj_*` call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn kaj_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn out_string(out: *mut *mut c_char, text: String) -> KajStatus {
    match CString::new(text) {
        Ok(text) => {
            *out = text.into_raw();
            KajStatus::Ok
        }
        Err(_) => fail(
            KajStatus::InvalidEncoding,
            "rendered text contained NUL".into(),
        ),
    }
}

unsafe fn params_from_strings(
    beta: *const c_char,
    modulus: *const c_char,
) -> Result<CipherParams, KajStatus> {
    let parse = |ptr: *const c_char, name: &str| {
        if ptr.is_null() {
            return Err(fail(KajStatus::NullArgument, format!("{name} is NULL")));
        }
        let text = CStr::from_ptr(ptr)
            .to_str()
            .map_err(|_| fail(KajStatus::InvalidUtf8, format!("{name} is not UTF-8")))?;
        text.parse().map_err(|_| {
            fail(
                KajStatus::InvalidParams,
                format!("{name} `{text}` is not a decimal integer"),
            )
        })
    };
    let beta = parse(beta, "beta")?;
    let modulus = parse(modulus, "modulus")?;
    CipherParams::new(beta, modulus).map_err(fail_with)
}

/// Encrypt `message_len` bytes under the given decimal `beta` and `modulus`.
/// On success the caller owns `*out_ciphertext` and `*out_key`.
///
/// # Safety
/// `message` must point to `message_len` readable bytes (it may be NULL only
/// when `message_len` is 0); `beta` and `modulus` must be NUL-terminated
/// strings; `out_ciphertext` and `out_key` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_encrypt(
    message: *const u8,
    message_len: usize,
    beta: *const c_char,
    modulus: *const c_char,
    out_ciphertext: *mut *mut KajCiphertext,
    out_key: *mut *mut KajKeyStream,
) -> KajStatus {
    clear_last_error();
    if out_ciphertext.is_null() || out_key.is_null() {
        return fail(KajStatus::NullArgument, "output pointer is NULL".into());
    }
    if message.is_null() && message_len != 0 {
        return fail(KajStatus::NullArgument, "message is NULL".into());
    }
    let message = if message_len == 0 {
        &[][..]
    } else {
        slice::from_raw_parts(message, message_len)
    };
    let params = match params_from_strings(beta, modulus) {
        Ok(params) => params,
        Err(status) => return status,
    };
    match encrypt(message, &params) {
        Ok((ciphertext, key)) => {
            write_out(out_ciphertext, KajCiphertext { inner: ciphertext });
            write_out(out_key, KajKeyStream { inner: key });
            KajStatus::Ok
        }
        Err(error) => fail_with(error),
    }
}

/// Decrypt a ciphertext with its key. On success the caller owns
/// `*out_message` (`*out_len` bytes; free with [`kaj_bytes_free`]).
///
/// # Safety
/// `ciphertext` and `key` must be live handles from this library;
/// `out_message` and `out_len` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_decrypt(
    ciphertext: *const KajCiphertext,
    key: *const KajKeyStream,
    out_message: *mut *mut u8,
    out_len: *mut usize,
) -> KajStatus {
    clear_last_error();
    if ciphertext.is_null() || key.is_null() || out_message.is_null() || out_len.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    match decrypt(&(*ciphertext).inner, &(*key).inner) {
        Ok(message) => {
            *out_len = message.len();
            *out_message = Box::into_raw(message.into_boxed_slice()) as *mut u8;
            KajStatus::Ok
        }
        Err(error) => fail_with(error),
    }
}

/// Render a ciphertext in the `.kajc` file format.
///
/// # Safety
/// `ciphertext` must be a live handle; `out_text` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_ciphertext_serialize(
    ciphertext: *const KajCiphertext,
    out_text: *mut *mut c_char,
) -> KajStatus {
    clear_last_error();
    if ciphertext.is_null() || out_text.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    out_string(out_text, serialize_ciphertext(&(*ciphertext).inner))
}

/// Parse `len` bytes of `.kajc` content.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out_ciphertext` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_ciphertext_parse(
    data: *const u8,
    len: usize,
    out_ciphertext: *mut *mut KajCiphertext,
) -> KajStatus {
    clear_last_error();
    if data.is_null() || out_ciphertext.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    match parse_ciphertext(slice::from_raw_parts(data, len)) {
        Ok(ciphertext) => {
            write_out(out_ciphertext, KajCiphertext { inner: ciphertext });
            KajStatus::Ok
        }
        Err(error) => fail_with(error),
    }
}

/// Render a key stream in the `.kajk` file format.
///
/// # Safety
/// `key` must be a live handle; `out_text` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_key_serialize(
    key: *const KajKeyStream,
    out_text: *mut *mut c_char,
) -> KajStatus {
    clear_last_error();
    if key.is_null() || out_text.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    out_string(out_text, serialize_key(&(*key).inner))
}

/// Parse `len` bytes of `.kajk` content.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out_key` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_key_parse(
    data: *const u8,
    len: usize,
    out_key: *mut *mut KajKeyStream,
) -> KajStatus {
    clear_last_error();
    if data.is_null() || out_key.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    match parse_key(slice::from_raw_parts(data, len)) {
        Ok(key) => {
            write_out(out_key, KajKeyStream { inner: key });
            KajStatus::Ok
        }
        Err(error) => fail_with(error),
    }
}

/// Number of positions in a ciphertext (0 for NULL).
///
/// # Safety
/// `ciphertext` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kaj_ciphertext_len(ciphertext: *const KajCiphertext) -> usize {
    if ciphertext.is_null() {
        return 0;
    }
    (*ciphertext).inner.len()
}

/// Number of quotients in a key stream (0 for NULL).
///
/// # Safety
/// `key` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kaj_key_len(key: *const KajKeyStream) -> usize {
    if key.is_null() {
        return 0;
    }
    (*key).inner.len()
}

/// Keyless per-position candidate report, one
/// `k=<pos> candidates=<count> {...}` line per position. With
/// `printable_only`, candidates are restricted to printable ASCII.
///
/// # Safety
/// `ciphertext` must be a live handle; `out_report` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_crack_report(
    ciphertext: *const KajCiphertext,
    printable_only: bool,
    out_report: *mut *mut c_char,
) -> KajStatus {
    clear_last_error();
    if ciphertext.is_null() || out_report.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    let mut report = crack(&(*ciphertext).inner);
    if printable_only {
        report = report.restrict_printable();
    }
    out_string(out_report, report.to_string())
}

/// Display-only glyph rendering of the remainders (escaped, mod 256).
///
/// # Safety
/// `ciphertext` must be a live handle; `out_text` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_legacy_glyphs(
    ciphertext: *const KajCiphertext,
    out_text: *mut *mut c_char,
) -> KajStatus {
    clear_last_error();
    if ciphertext.is_null() || out_text.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    out_string(out_text, render_legacy_glyphs(&(*ciphertext).inner))
}

/// Transform a time-domain expression (`"2 sin 1 + 3 cosh 1"`) or, with
/// `invert`, invert an image expression (`"2/c^(m+3)"`); the rendered result
/// is returned through `out_text`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out_text` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn kaj_transform_expr(
    expr: *const c_char,
    invert: bool,
    out_text: *mut *mut c_char,
) -> KajStatus {
    clear_last_error();
    if expr.is_null() || out_text.is_null() {
        return fail(KajStatus::NullArgument, "argument is NULL".into());
    }
    let expr = match CStr::from_ptr(expr).to_str() {
        Ok(expr) => expr,
        Err(_) => return fail(KajStatus::InvalidUtf8, "expr is not UTF-8".into()),
    };
    let rendered = if invert {
        parse_image_expr(expr).and_then(|image| image.invert().map(|time| time.to_string()))
    } else {
        parse_time_expr(expr).map(|time| time.transform().to_string())
    };
    match rendered {
        Ok(text) => out_string(out_text, text),
        Err(error) => fail_with(error),
    }
}

/// # Safety
/// `ciphertext` must be NULL or a handle returned by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn kaj_ciphertext_free(ciphertext: *mut KajCiphertext) {
    if !ciphertext.is_null() {
        drop(Box::from_raw(ciphertext));
    }
}

/// # Safety
/// `key` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kaj_key_free(key: *mut KajKeyStream) {
    if !key.is_null() {
        drop(Box::from_raw(key));
    }
}

/// # Safety
/// `text` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kaj_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// # Safety
/// `bytes` must be NULL or a buffer of exactly `len` bytes returned by this
/// library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kaj_bytes_free(bytes: *mut u8, len: usize) {
    if !bytes.is_null() {
        drop(Vec::from_raw_parts(bytes, len, len));
    }
}

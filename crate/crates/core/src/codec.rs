//! Text/byte codec and the on-disk ciphertext (`.kajc`) and key (`.kajk`)
//! formats.
//!
//! Both formats are line-oriented ASCII with LF endings and keys in a fixed
//! order; parsing is strict so that every file that parses re-serializes
//! byte-for-byte:
//!
//! ```text
//! KAJ1 CIPHERTEXT            KAJ1 KEY
//! beta=<decimal>             n=<decimal>
//! modulus=<decimal>          q=<comma-separated decimals>
//! n=<decimal>
//! r=<comma-separated decimals>
//! ```
//!
//! The canonical ciphertext is the integer remainder sequence. The glyph
//! string sometimes used to present ciphertexts is code-page dependent and
//! lossy for remainders above 255, so it is demoted to the display-only
//! [`render_legacy_glyphs`].

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::cipher::{CipherParams, Ciphertext, KeyStream};
use crate::error::Error;
use crate::Result;

/// Standard byte encoding of a string (UTF-8); for pure-ASCII input, byte
/// `k` is the ASCII code of character `k`.
pub fn encode_plaintext(text: &str) -> Vec<u8> {
    text.as_bytes().to_vec()
}

/// Inverse of [`encode_plaintext`] on its image.
pub fn decode_plaintext(bytes: &[u8]) -> Result<String> {
    String::from_utf8(bytes.to_vec()).map_err(|_| Error::InvalidEncoding)
}

pub fn serialize_ciphertext(ciphertext: &Ciphertext) -> String {
    format!(
        "KAJ1 CIPHERTEXT\nbeta={}\nmodulus={}\nn={}\nr={}\n",
        ciphertext.params().beta(),
        ciphertext.params().modulus(),
        ciphertext.len(),
        join_decimals(ciphertext.remainders()),
    )
}

pub fn serialize_key(key: &KeyStream) -> String {
    format!(
        "KAJ1 KEY\nn={}\nq={}\n",
        key.len(),
        join_decimals(key.quotients()),
    )
}

pub fn parse_ciphertext(input: &[u8]) -> Result<Ciphertext> {
    let lines = split_lines(input)?;
    expect_header(get_line(&lines, 0)?, "KAJ1 CIPHERTEXT", 1)?;
    let beta = parse_uint(field(get_line(&lines, 1)?, "beta", 2)?, 2)?;
    if beta < BigUint::one() {
        return Err(Error::format(2, "beta must be at least 1"));
    }
    let modulus = parse_uint(field(get_line(&lines, 2)?, "modulus", 3)?, 3)?;
    if modulus < BigUint::from(2u32) {
        return Err(Error::format(3, "modulus must be at least 2"));
    }
    let n = parse_count(field(get_line(&lines, 3)?, "n", 4)?, 4)?;
    let remainders = parse_uint_list(field(get_line(&lines, 4)?, "r", 5)?, 5)?;
    no_extra_lines(&lines, 5)?;
    if remainders.len() != n {
        return Err(Error::format(
            5,
            format!("expected {} remainders, found {}", n, remainders.len()),
        ));
    }
    if let Some(r) = remainders.iter().find(|r| **r >= modulus) {
        return Err(Error::format(
            5,
            format!("remainder {r} is not below modulus {modulus}"),
        ));
    }
    let params = CipherParams::new(beta, modulus).expect("validated above");
    Ok(Ciphertext::new(remainders, params).expect("validated above"))
}

pub fn parse_key(input: &[u8]) -> Result<KeyStream> {
    let lines = split_lines(input)?;
    expect_header(get_line(&lines, 0)?, "KAJ1 KEY", 1)?;
    let n = parse_count(field(get_line(&lines, 1)?, "n", 2)?, 2)?;
    let quotients = parse_uint_list(field(get_line(&lines, 2)?, "q", 3)?, 3)?;
    no_extra_lines(&lines, 3)?;
    if quotients.len() != n {
        return Err(Error::format(
            3,
            format!("expected {} quotients, found {}", n, quotients.len()),
        ));
    }
    Ok(KeyStream::new(quotients).expect("validated above"))
}

/// Display-only rendering of the remainders as a glyph string: each
/// `r_k mod 256` becomes the character itself when printable ASCII and a
/// `\x..` escape otherwise. Deliberately not a serialization format.
pub fn render_legacy_glyphs(ciphertext: &Ciphertext) -> String {
    let bytes: Vec<u8> = ciphertext
        .remainders()
        .iter()
        .map(|r| r.to_bytes_le()[0])
        .collect();
    escape_bytes(&bytes)
}

/// Printable-ASCII passthrough with `\x..` escapes for everything else.
pub fn escape_bytes(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        if (0x20..=0x7e).contains(&b) {
            out.push(b as char);
        } else {
            out.push_str(&format!("\\x{b:02x}"));
        }
    }
    out
}

fn join_decimals(values: &[BigUint]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Split into LF-terminated ASCII lines.
fn split_lines(input: &[u8]) -> Result<Vec<&str>> {
    if input.is_empty() {
        return Err(Error::format(1, "empty input"));
    }
    let mut chunks: Vec<&[u8]> = input.split(|&b| b == b'\n').collect();
    let terminated = chunks.last().is_some_and(|last| last.is_empty());
    if terminated {
        chunks.pop();
    } else {
        return Err(Error::format(chunks.len(), "missing trailing newline"));
    }
    let mut lines = Vec::with_capacity(chunks.len());
    for (index, chunk) in chunks.iter().enumerate() {
        let line_no = index + 1;
        if chunk.contains(&b'\r') {
            return Err(Error::format(
                line_no,
                "carriage return found; line endings must be LF",
            ));
        }
        if !chunk.is_ascii() {
            return Err(Error::format(line_no, "non-ASCII byte"));
        }
        lines.push(std::str::from_utf8(chunk).expect("ASCII checked"));
    }
    Ok(lines)
}

fn get_line<'a>(lines: &[&'a str], index: usize) -> Result<&'a str> {
    lines
        .get(index)
        .copied()
        .ok_or_else(|| Error::format(index + 1, "unexpected end of file"))
}

fn no_extra_lines(lines: &[&str], expected: usize) -> Result<()> {
    if lines.len() > expected {
        return Err(Error::format(expected + 1, "unexpected extra line"));
    }
    Ok(())
}

fn expect_header(line: &str, header: &str, line_no: usize) -> Result<()> {
    if line != header {
        return Err(Error::format(
            line_no,
            format!("expected header `{header}`"),
        ));
    }
    Ok(())
}

fn field<'a>(line: &'a str, key: &str, line_no: usize) -> Result<&'a str> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::format(line_no, format!("expected `{key}=<value>`")))
}

/// Canonical decimal: nonempty, digits only, no leading zero except "0".
fn parse_uint(text: &str, line_no: usize) -> Result<BigUint> {
    if text.is_empty() {
        return Err(Error::format(line_no, "empty integer"));
    }
    if !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::format(
            line_no,
            format!("`{text}` is not a decimal integer"),
        ));
    }
    if text.len() > 1 && text.starts_with('0') {
        return Err(Error::format(
            line_no,
            format!("`{text}` has a leading zero"),
        ));
    }
    Ok(text.parse().expect("digits checked"))
}

fn parse_count(text: &str, line_no: usize) -> Result<usize> {
    let value = parse_uint(text, line_no)?;
    let count = value
        .to_usize()
        .ok_or_else(|| Error::format(line_no, format!("`{text}` is too large")))?;
    if count == 0 {
        return Err(Error::format(line_no, "n must be at least 1"));
    }
    Ok(count)
}

fn parse_uint_list(text: &str, line_no: usize) -> Result<Vec<BigUint>> {
    text.split(',')
        .map(|part| parse_uint(part, line_no))
        .collect()
}

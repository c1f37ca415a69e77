//! `kaj` — encrypt, decrypt, transform, and crack over the `.kajc`/`.kajk`
//! file formats.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 I/O or file-format error,
//! 3 empty message or integrity failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigUint;

use kaj::codec::{
    decode_plaintext, encode_plaintext, escape_bytes, parse_ciphertext, parse_key,
    render_legacy_glyphs, serialize_ciphertext, serialize_key,
};
use kaj::grammar::{parse_image_expr, parse_time_expr};
use kaj::{crack, decrypt, encrypt, CipherParams, Error};

#[derive(Parser)]
#[command(name = "kaj", version, about = "KAJ-transform cipher toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a message into `<stem>.kajc` (ciphertext) and `<stem>.kajk` (key)
    #[command(group(ArgGroup::new("message").required(true).args(["text", "input"])))]
    Encrypt {
        /// Literal message text
        #[arg(long)]
        text: Option<String>,
        /// Read the message bytes from a file
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Carrier growth base (>= 1)
        #[arg(long, value_name = "INT")]
        beta: String,
        /// Split modulus (>= 2)
        #[arg(long, value_name = "INT")]
        modulus: String,
        /// Output stem; writes `<stem>.kajc` and `<stem>.kajk`
        #[arg(short = 'o', long = "out", value_name = "STEM")]
        output: PathBuf,
        /// Also print the code-page style glyph view of the remainders
        #[arg(long = "legacy-view")]
        legacy_view: bool,
    },
    /// Decrypt a `.kajc` file with its `.kajk` key
    Decrypt {
        /// Ciphertext file
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Key file
        #[arg(long, value_name = "PATH")]
        key: PathBuf,
        /// Write the recovered bytes here instead of printing them
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Apply the transform (or its inverse with --invert) to an expression
    Transform {
        /// Invert an image expression instead of transforming a time one
        #[arg(long)]
        invert: bool,
        /// Expression, e.g. "2 sin 1 + 3 cosh 1" or "2/c^(m+3)" with --invert
        expr: String,
    },
    /// Enumerate per-position plaintext candidates from a ciphertext alone
    Crack {
        /// Ciphertext file
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Keep only printable-ASCII candidates (32..=126)
        #[arg(long)]
        printable: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match &error {
            Error::InvalidParams(_) | Error::Parse(_) => 1,
            Error::Format { .. } | Error::InvalidEncoding => 2,
            Error::EmptyMessage
            | Error::MalformedImage(_)
            | Error::RemainderOutOfRange { .. }
            | Error::Divisibility { .. }
            | Error::ByteRange { .. }
            | Error::LengthMismatch { .. } => 3,
        };
        Failure::new(code, error.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            if matches!(
                error.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{error}");
                return ExitCode::SUCCESS;
            }
            eprint!("{error}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Encrypt {
            text,
            input,
            beta,
            modulus,
            output,
            legacy_view,
        } => run_encrypt(text, input, &beta, &modulus, &output, legacy_view),
        Command::Decrypt { input, key, out } => run_decrypt(&input, &key, out.as_deref()),
        Command::Transform { invert, expr } => run_transform(invert, &expr),
        Command::Crack { input, printable } => run_crack(&input, printable),
    }
}

fn parse_biguint(text: &str, option: &str) -> Result<BigUint, Failure> {
    text.parse().map_err(|_| {
        Failure::new(
            1,
            format!("invalid {option}: `{text}` is not a decimal integer"),
        )
    })
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|error| Failure::new(2, format!("{}: {error}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|error| Failure::new(2, format!("{}: {error}", path.display())))
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn run_encrypt(
    text: Option<String>,
    input: Option<PathBuf>,
    beta: &str,
    modulus: &str,
    output: &Path,
    legacy_view: bool,
) -> Result<(), Failure> {
    let message = match (&text, &input) {
        (Some(text), None) => encode_plaintext(text),
        (None, Some(path)) => read_file(path)?,
        _ => unreachable!("clap enforces exactly one source"),
    };
    let beta = parse_biguint(beta, "--beta")?;
    let modulus = parse_biguint(modulus, "--modulus")?;
    let params = CipherParams::new(beta, modulus)?;
    let (ciphertext, key) = encrypt(&message, &params)?;

    let ciphertext_path = with_suffix(output, ".kajc");
    let key_path = with_suffix(output, ".kajk");
    write_file(
        &ciphertext_path,
        serialize_ciphertext(&ciphertext).as_bytes(),
    )?;
    write_file(&key_path, serialize_key(&key).as_bytes())?;

    println!(
        "n={} beta={} modulus={}",
        ciphertext.len(),
        params.beta(),
        params.modulus()
    );
    println!("wrote {}", ciphertext_path.display());
    println!("wrote {}", key_path.display());
    if legacy_view {
        println!("legacy={}", render_legacy_glyphs(&ciphertext));
    }
    Ok(())
}

fn run_decrypt(input: &Path, key: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let ciphertext = parse_ciphertext(&read_file(input)?)
        .map_err(|error| Failure::new(2, format!("{}: {error}", input.display())))?;
    let key_stream = parse_key(&read_file(key)?)
        .map_err(|error| Failure::new(2, format!("{}: {error}", key.display())))?;
    let message = decrypt(&ciphertext, &key_stream)?;
    match out {
        Some(path) => write_file(path, &message)?,
        None => match decode_plaintext(&message) {
            Ok(text) => println!("{text}"),
            Err(_) => {
                eprintln!("note: recovered bytes are not valid UTF-8; printing escaped form");
                println!("{}", escape_bytes(&message));
            }
        },
    }
    Ok(())
}

fn run_transform(invert: bool, expr: &str) -> Result<(), Failure> {
    if invert {
        let image = parse_image_expr(expr)?;
        println!("{}", image.invert()?);
    } else {
        let time = parse_time_expr(expr)?;
        println!("{}", time.transform());
    }
    Ok(())
}

fn run_crack(input: &Path, printable: bool) -> Result<(), Failure> {
    let ciphertext = parse_ciphertext(&read_file(input)?)
        .map_err(|error| Failure::new(2, format!("{}: {error}", input.display())))?;
    let mut report = crack(&ciphertext);
    if printable {
        report = report.restrict_printable();
    }
    for (index, set) in report.candidate_sets().iter().enumerate() {
        if set.is_empty() {
            eprintln!(
                "warning: position {} has no candidates (parameter mismatch?)",
                index + 1
            );
        }
    }
    print!("{report}");
    Ok(())
}

//! `keyak` command-line tool.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when authentication or vector
//! verification fails.

mod vectors;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use keyak::bit_oracle::{oracle_permutation, BitState};
use keyak::keyak::{open, seal, KeyakInstance};
use keyak::sponge::{keccak_rc_hash, keccak_sponge};
use keyak::state::{self, KeccakState, PermutationSpec};

#[derive(Parser)]
#[command(name = "keyak", version, about = "Keccak hashing, Keyak authenticated encryption and permutation tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hash a file (or stdin) with Keccak[r, c]
    Hash(HashArgs),
    /// Encrypt and authenticate a file
    Wrap(WrapArgs),
    /// Verify and decrypt a file
    Unwrap(UnwrapArgs),
    /// Generate or check deterministic test vectors
    Vectors(VectorArgs),
    /// Apply Keccak-p to a hex state read from stdin
    Perm(PermArgs),
}

#[derive(Args)]
struct HashArgs {
    /// Rate in bits, a multiple of 8
    #[arg(long)]
    rate: usize,
    /// Capacity in bits; rate + capacity must be 800 or 1600
    #[arg(long)]
    capacity: usize,
    /// Output length in bits
    #[arg(long)]
    bits: usize,
    /// Input file, stdin when absent
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SessionArgs {
    /// river, lake, sea, ocean or lunar
    #[arg(long)]
    instance: String,
    /// Key in hex
    #[arg(long)]
    key: String,
    /// Nonce in hex
    #[arg(long, default_value = "")]
    nonce: String,
    /// File holding the associated data
    #[arg(long)]
    ad: Option<PathBuf>,
    /// Forget the session state after the message
    #[arg(long)]
    forget: bool,
    /// Input file, `-` for stdin
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    /// Output file, `-` for stdout
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct WrapArgs {
    #[command(flatten)]
    session: SessionArgs,
    /// Write the tag as hex to this file instead of stdout
    #[arg(long, conflicts_with = "tag_append")]
    tag: Option<PathBuf>,
    /// Append the tag to the ciphertext
    #[arg(long)]
    tag_append: bool,
}

#[derive(Args)]
struct UnwrapArgs {
    #[command(flatten)]
    session: SessionArgs,
    /// Tag as hex, or a file holding it
    #[arg(long, required_unless_present = "tag_append", conflicts_with = "tag_append")]
    tag: Option<String>,
    /// The tag is the last bytes of the input
    #[arg(long)]
    tag_append: bool,
}

#[derive(Args)]
struct VectorArgs {
    /// Verify an existing vector file
    #[arg(long, conflicts_with_all = ["instance", "count", "seed", "out"])]
    check: Option<PathBuf>,
    #[arg(long, required_unless_present = "check")]
    instance: Option<String>,
    #[arg(long, required_unless_present = "check")]
    count: Option<u64>,
    /// Seed in hex
    #[arg(long, required_unless_present = "check")]
    seed: Option<String>,
    /// Output file, stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PermArgs {
    /// State width in bits: 200, 400, 800 or 1600
    #[arg(long)]
    width: usize,
    /// Number of rounds, the full count when absent
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rounds: Option<u32>,
    /// Use the bit-level reference rounds
    #[arg(long, conflicts_with = "trace")]
    oracle: bool,
    /// Print the state after every step of every round
    #[arg(long)]
    trace: bool,
}

/// Reported with exit code 2.
#[derive(Debug)]
struct VerificationFailure(String);

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailure {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Hash(args) => hash(args),
        Command::Wrap(args) => wrap(args),
        Command::Unwrap(args) => unwrap(args),
        Command::Vectors(args) => vectors::run(args),
        Command::Perm(args) => perm(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<VerificationFailure>() => {
            eprintln!("keyak: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("keyak: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &Path, data: &[u8]) -> anyhow::Result<()> {
    if path == Path::new("-") {
        let mut stdout = io::stdout().lock();
        stdout.write_all(data)?;
        stdout.flush()?;
        Ok(())
    } else {
        fs::write(path, data).with_context(|| format!("writing {}", path.display()))
    }
}

fn parse_hex(what: &str, s: &str) -> anyhow::Result<Vec<u8>> {
    hex::decode(s.trim()).with_context(|| format!("{what} is not valid hex"))
}

fn hash(args: HashArgs) -> anyhow::Result<()> {
    let width = args.rate + args.capacity;
    if width != 800 && width != 1600 {
        bail!("rate + capacity must be 800 or 1600, got {width}");
    }
    if args.rate == 0 || !args.rate.is_multiple_of(8) {
        bail!("rate must be a positive multiple of 8, got {}", args.rate);
    }
    let message = match &args.file {
        Some(path) => read_input(path)?,
        None => read_input(Path::new("-"))?,
    };
    let digest = if args.rate.is_multiple_of(width / 25) {
        keccak_rc_hash(args.rate, args.capacity, &message, args.bits)?
    } else {
        keccak_sponge(args.rate, args.capacity)?.hash(&message, args.bits)
    };
    println!("{}", hex::encode(digest));
    Ok(())
}

struct SessionInputs {
    instance: KeyakInstance,
    key: Vec<u8>,
    nonce: Vec<u8>,
    ad: Vec<u8>,
    body: Vec<u8>,
}

fn session_inputs(args: &SessionArgs) -> anyhow::Result<SessionInputs> {
    let instance = KeyakInstance::by_name(&args.instance)?;
    let key = parse_hex("key", &args.key)?;
    let nonce = parse_hex("nonce", &args.nonce)?;
    let ad = match &args.ad {
        Some(path) => fs::read(path).with_context(|| format!("reading {}", path.display()))?,
        None => Vec::new(),
    };
    let body = read_input(&args.input)?;
    Ok(SessionInputs { instance, key, nonce, ad, body })
}

fn wrap(args: WrapArgs) -> anyhow::Result<()> {
    let s = session_inputs(&args.session)?;
    let (mut ct, tag) = seal(&s.instance, &s.key, &s.nonce, &s.ad, &s.body, args.session.forget)?;
    if args.tag_append {
        ct.extend_from_slice(&tag);
        return write_output(&args.session.out, &ct);
    }
    match &args.tag {
        Some(path) => {
            write_output(&args.session.out, &ct)?;
            fs::write(path, format!("{}\n", hex::encode(&tag))).with_context(|| format!("writing {}", path.display()))
        }
        None if args.session.out == Path::new("-") => {
            bail!("--tag or --tag-append is required when the ciphertext goes to stdout")
        }
        None => {
            write_output(&args.session.out, &ct)?;
            println!("{}", hex::encode(&tag));
            Ok(())
        }
    }
}

fn unwrap(args: UnwrapArgs) -> anyhow::Result<()> {
    let mut s = session_inputs(&args.session)?;
    let tag = if args.tag_append {
        let tag_len = s.instance.tag_bytes();
        if s.body.len() < tag_len {
            bail!("input is shorter than a {tag_len}-byte tag");
        }
        s.body.split_off(s.body.len() - tag_len)
    } else {
        let value = args.tag.as_deref().unwrap_or_default();
        let path = Path::new(value);
        if path.is_file() {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_hex("tag file", &text)?
        } else {
            parse_hex("tag", value)?
        }
    };
    match open(&s.instance, &s.key, &s.nonce, &s.ad, &s.body, &tag, args.session.forget) {
        Ok(pt) => write_output(&args.session.out, &pt),
        Err(keyak::Error::AuthenticationFailed) => Err(VerificationFailure("authentication failed".into()).into()),
        Err(e) => Err(e.into()),
    }
}

fn perm(args: PermArgs) -> anyhow::Result<()> {
    if !matches!(args.width, 200 | 400 | 800 | 1600) {
        bail!("width must be 200, 400, 800 or 1600, got {}", args.width);
    }
    let full = state::full_rounds(args.width)?;
    let rounds = args.rounds.map_or(full, |r| r as usize);
    let spec = PermutationSpec::new(args.width, rounds)?;

    let mut text = String::new();
    io::stdin().read_to_string(&mut text).context("reading stdin")?;
    let compact: String = text.split_whitespace().collect();
    let bytes = parse_hex("state", &compact)?;
    if bytes.len() != args.width / 8 {
        bail!("expected {} state bytes, got {}", args.width / 8, bytes.len());
    }

    let out = if args.oracle {
        let l = state::width_log(args.width)?;
        oracle_permutation(&BitState::from_bytes(&bytes), rounds, l).to_bytes()
    } else if !args.trace {
        state::keccak_p(&KeccakState::from_bytes(&bytes)?, &spec)?.to_bytes()?
    } else {
        let mut s = KeccakState::from_bytes(&bytes)?;
        for i in spec.round_indices() {
            let rc = state::round_constant(i, s.width_log())?;
            let steps = [
                ("theta", state::theta as fn(&KeccakState) -> KeccakState),
                ("rho", state::rho),
                ("pi", state::pi),
                ("chi", state::chi),
            ];
            for (name, step) in steps {
                s = step(&s);
                println!("round {i:2} {name:5} {}", hex::encode(s.to_bytes()?));
            }
            s = state::iota(&s, rc.value);
            println!("round {i:2} {:5} {}", "iota", hex::encode(s.to_bytes()?));
        }
        s.to_bytes()?
    };
    println!("{}", hex::encode(out));
    Ok(())
}
